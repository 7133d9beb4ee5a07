//! Multivariate gcd over ℚ by recursive primitive polynomial remainder
//! sequences: pick a main variable, split off contents (recursing on fewer
//! variables) and run a primitive PRS on the primitive parts.

use super::mpoly::MPoly;
use super::var::Var;

/// Gcd of two polynomials, normalized to be integer-primitive with a
/// positive leading coefficient. `gcd(f, 0)` is the normalized `f`, and
/// `gcd(0, 0)` is zero.
pub fn gcd_multi(f: &MPoly, g: &MPoly) -> MPoly {
    gcd_rec(f, g).normalize()
}

/// Gcd of a list of polynomials, normalized; stops early once it reaches 1.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a MPoly>>(polys: I) -> MPoly {
    let mut acc = MPoly::zero();
    for p in polys {
        acc = gcd_rec(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            return MPoly::one();
        }
    }
    acc.normalize()
}

fn gcd_rec(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one();
    }
    if f.num_terms() == 1 && g.num_terms() == 1 {
        return monomial_gcd(f, g);
    }
    let common = f.vars().intersection(g.vars());
    if common.is_empty() {
        return MPoly::one();
    }
    // main variable: the common one of smallest combined degree
    let v = common
        .iter()
        .min_by_key(|v| (f.degree(*v) + g.degree(*v), v.index()))
        .expect("non-empty");

    let (cf, pf) = content_and_primpart(f, v);
    let (cg, pg) = content_and_primpart(g, v);
    let c = gcd_rec(&cf, &cg);
    let h = primitive_prs(pf, pg, v);
    (&c * &h).normalize()
}

fn monomial_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let (mf, _) = &f.terms()[0];
    let (mg, _) = &g.terms()[0];
    let pairs: Vec<(Var, u32)> = Var::all()
        .map(|v| (v, mf.exp(v).min(mg.exp(v))))
        .filter(|(_, e)| *e > 0)
        .collect();
    MPoly::term(
        super::mpoly::Monomial::from_exponents(&pairs),
        num_rational::BigRational::from_integer(1.into()),
    )
}

/// Content with respect to `v` (gcd of the coefficients of the powers of
/// `v`) and the corresponding primitive part.
pub fn content_and_primpart(f: &MPoly, v: Var) -> (MPoly, MPoly) {
    let coeffs = f.coefficients_in(v);
    let mut c = MPoly::zero();
    for a in coeffs.iter().rev() {
        if a.is_zero() {
            continue;
        }
        c = gcd_rec(&c, a);
        if c.is_constant() {
            break;
        }
    }
    if c.is_constant() {
        return (MPoly::one(), f.normalize());
    }
    let pp = f
        .div_exact(&c)
        .expect("content divides every coefficient")
        .normalize();
    (c, pp)
}

/// Pseudo-remainder of `a` by `b` with respect to `v`, normalized as
/// `lc(b)^(deg a - deg b + 1) a mod b`.
pub fn pseudo_remainder(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let da = a.degree(v);
    let db = b.degree(v);
    let bc = b.coefficients_in(v);
    let lb = bc.last().expect("non-zero divisor").clone();
    let mut r = a.coefficients_in(v);
    let mut steps = 0u32;
    while r.len() > db as usize && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = k - db as usize;
        for coeff in r.iter_mut() {
            *coeff = &*coeff * &lb;
        }
        steps += 1;
        for (j, bj) in bc.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            r[j + shift] = &r[j + shift] - &(&lr * bj);
        }
        debug_assert!(r[k].is_zero());
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let rem = MPoly::from_coefficients(v, &r);
    let full = if da >= db { da - db + 1 } else { 0 };
    if steps < full && !rem.is_zero() {
        &rem * &lb.pow(full - steps)
    } else {
        rem
    }
}

/// Subresultant remainder sequence; the last non-zero remainder is a
/// multiple of the gcd, and its primitive part is the gcd of the two
/// primitive inputs.
fn primitive_prs(a: MPoly, b: MPoly, v: Var) -> MPoly {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        if b.is_zero() {
            return content_and_primpart(&a, v).1;
        }
        if b.degree(v) == 0 {
            return MPoly::one();
        }
        let delta = a.degree(v) - b.degree(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return content_and_primpart(&b, v).1;
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.coefficients_in(v).last().expect("non-zero").clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse;

    fn p(s: &str) -> MPoly {
        parse(s).unwrap()
    }

    #[test]
    fn simple_gcds() {
        assert_eq!(gcd_multi(&p("t1*t2"), &p("t1*t3")), p("t1"));
        assert_eq!(
            gcd_multi(&p("(t1-t2)^2"), &p("(t1-t2)*t3")),
            p("t1 - t2")
        );
        assert_eq!(gcd_multi(&p("6*t1 + 4"), &MPoly::zero()), p("3*t1 + 2"));
        assert_eq!(gcd_multi(&p("t1^2 + t2^2"), &p("t1 + t2")), MPoly::one());
    }

    #[test]
    fn gcd_of_printed_composition_components() {
        // the four raw components as printed for the Cox surface composed
        // with the Cremona map
        let printed = [
            p("t1^3*t2*(t3^2 + t2^2)"),
            p("t1*t3^2*(t2^3 + t1^2*t3)"),
            p("t1^2*t2^2*t3^2"),
            p("t1^3*t2*t3^2"),
        ];
        assert_eq!(gcd_all(printed.iter()), p("t1"));
        // expanding q_i(t2*t3, t1*t3, t1*t2) directly gives a different first
        // component and the common factor t3^2
        let expanded = [
            p("t1^3*t2*t3^2 + t2^3*t3^3"),
            p("t1*t2^3*t3^2 + t1^3*t3^3"),
            p("t1^2*t2^2*t3^2"),
            p("t1^3*t2*t3^2"),
        ];
        assert_eq!(gcd_all(expanded.iter()), p("t3^2"));
    }

    #[test]
    fn multivariate_with_parameters() {
        let h = p("x1*t1 + x2*t2 - t3");
        let f = &h * &p("t1^2 - x3");
        let g = &h * &p("t2 + x1*t3 + 1");
        assert_eq!(gcd_multi(&f, &g), h.normalize());
    }
}
