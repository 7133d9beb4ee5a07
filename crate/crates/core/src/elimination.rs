//! Sylvester resultants over polynomial coefficient rings, content and
//! primitive part with respect to a variable block, and rational linear
//! factors of binary forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::{gcd_all, Degree, MPoly, Monomial, Var, VarSet};

/// Resultant of `f` and `g` eliminating `v`, as the determinant of the
/// Sylvester matrix computed by fraction-free elimination.
pub fn resultant(f: &MPoly, g: &MPoly, v: Var) -> Result<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant operand"));
    }
    if f.degree(v) == 0 && g.degree(v) == 0 {
        return Err(Error::ResultantUndefined(v));
    }
    let strategy = if laplace_pays_off(f, g, v) {
        Strategy::Laplace
    } else {
        Strategy::Bareiss
    };
    resultant_with(f, g, v, strategy)
}

/// How the Sylvester determinant is evaluated. Both strategies return
/// identical polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fraction-free elimination on the whole matrix.
    Bareiss,
    /// Generalized Laplace expansion along the rows of the first operand:
    /// a sum of products of complementary maximal minors.
    Laplace,
}

/// Resultant with an explicit determinant strategy.
pub fn resultant_with(f: &MPoly, g: &MPoly, v: Var, strategy: Strategy) -> Result<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant operand"));
    }
    if f.degree(v) == 0 && g.degree(v) == 0 {
        return Err(Error::ResultantUndefined(v));
    }
    let n = g.degree(v) as usize;
    let matrix = sylvester(f, g, v);
    Ok(match strategy {
        Strategy::Bareiss => bareiss_det(matrix),
        Strategy::Laplace => laplace_det(matrix, n),
    })
}

/// Laplace pays off when the two operands carry disjoint sets of variables
/// besides the shared ones, as for pairs with separate symbolic coefficient
/// blocks, and the minor count stays small.
fn laplace_pays_off(f: &MPoly, g: &MPoly, v: Var) -> bool {
    let own_f = f.vars().difference(g.vars());
    let own_g = g.vars().difference(f.vars());
    let size = (f.degree(v) + g.degree(v)) as usize;
    own_f.len() >= 2 && own_g.len() >= 2 && size <= 10
}

/// Determinant by expansion along the first `k` rows.
fn laplace_det(m: Vec<Vec<MPoly>>, k: usize) -> MPoly {
    let size = m.len();
    if k == 0 || k == size {
        return bareiss_det(m);
    }
    let (top, bottom) = m.split_at(k);
    let mut acc = MPoly::zero();
    for cols in column_subsets(size, k) {
        let upper = minor(top, &cols);
        if upper.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..size).filter(|c| !cols.contains(c)).collect();
        let lower = minor(bottom, &rest);
        if lower.is_zero() {
            continue;
        }
        // sign of the expansion: rows 0..k against the chosen columns
        let parity = cols.iter().sum::<usize>() + k * (k - 1) / 2;
        let term = &upper * &lower;
        acc = if parity % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn minor(rows: &[Vec<MPoly>], cols: &[usize]) -> MPoly {
    let sub: Vec<Vec<MPoly>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
        .collect();
    bareiss_det(sub)
}

fn column_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=n - (k - cur.len()) {
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The Sylvester matrix of `f` and `g` in `v`: `deg_v g` shifted rows of
/// `f` followed by `deg_v f` shifted rows of `g`, highest power first.
pub fn sylvester(f: &MPoly, g: &MPoly, v: Var) -> Vec<Vec<MPoly>> {
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shift, coeffs, len) in (0..n)
        .map(|i| (i, &fc, m))
        .chain((0..m).map(|i| (i, &gc, n)))
    {
        let mut row = vec![MPoly::zero(); size];
        for k in 0..=len {
            row[shift + k] = coeffs[len - k].clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss' fraction-free elimination. Every intermediate
/// division is exact; pivots are chosen among non-zero candidates with the
/// fewest terms.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| (m[i][k].num_terms(), i));
        let Some(p) = pivot else {
            return MPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut e = &pivot_row[k] * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    e = &e - &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_one() || e.is_zero() {
                    e
                } else {
                    e.div_exact(&prev)
                        .expect("Bareiss division is exact")
                };
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// A polynomial split into its content with respect to a block and the
/// primitive part.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentSplit {
    /// Normalized gcd of the coefficients of the block monomials; free of
    /// the block variables.
    pub content: MPoly,
    /// Integer-primitive cofactor; `content * primpart` is a positive
    /// multiple of the input.
    pub primpart: MPoly,
    pub block: VarSet,
}

pub fn content_split(f: &MPoly, block: VarSet) -> Result<ContentSplit> {
    if f.is_zero() {
        return Err(Error::ZeroInput("content_split input"));
    }
    let coeffs = f.coefficients_wrt(block);
    let content = gcd_all(coeffs.values());
    let quotient = f
        .div_exact(&content)
        .ok_or_else(|| Error::InexactDivision("content does not divide input".into()))?;
    let (unit, pp) = quotient.normalize_with_unit();
    let primpart = if unit.is_negative() { -pp } else { pp };
    Ok(ContentSplit {
        content,
        primpart,
        block,
    })
}

/// A rational point `(a : b)` of the projective line, with `gcd(a, b) = 1`
/// and the sign fixed so the first non-zero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePoint {
    pub a: BigInt,
    pub b: BigInt,
}

impl LinePoint {
    pub fn new(a: BigInt, b: BigInt) -> LinePoint {
        assert!(!(a.is_zero() && b.is_zero()), "(0:0) is not a point");
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        LinePoint { a, b }
    }

    /// The linear form `b*t1 - a*t2` vanishing at `(a : b)`.
    pub fn linear_form(&self) -> MPoly {
        let b = MPoly::constant(BigRational::from_integer(self.b.clone()));
        let a = MPoly::constant(BigRational::from_integer(self.a.clone()));
        &(&b * &MPoly::var(Var::T1)) - &(&a * &MPoly::var(Var::T2))
    }
}

/// Rational linear factors of a binary form in `t1, t2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactors {
    pub factors: Vec<(LinePoint, u32)>,
    /// Normalized cofactor without rational linear factors.
    pub residual: MPoly,
}

impl LinearFactors {
    pub fn linear_degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Splits a binary form into its rational linear factors, found as rational
/// roots of the dehomogenization `f(t1, 1)` plus the power of `t2`.
pub fn homogeneous_linear_factors(f: &MPoly) -> Result<LinearFactors> {
    if f.is_zero() {
        return Err(Error::ZeroInput("binary form"));
    }
    if !f.vars().difference(VarSet::T12).is_empty() {
        return Err(Error::NotHomogeneous(format!(
            "expected a form in t1, t2 only, got {f}"
        )));
    }
    if !f.is_homogeneous_in(VarSet::T12) {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let d = f.total_degree().expect_finite("binary form");
    // coefficients of t1^i * t2^(d-i), low to high in t1
    let mut coeffs = vec![BigRational::zero(); d as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(Var::T1) as usize] = c.clone();
    }
    let mut uni = integer_primitive(&coeffs);
    while uni.last().is_some_and(|c| c.is_zero()) {
        uni.pop();
    }
    let t2_power = d - (uni.len() as u32 - 1);

    let mut factors = Vec::new();
    for (p, q) in rational_roots(&uni) {
        let mut mult = 0;
        while let Some(quot) = divide_linear(&uni, &p, &q) {
            uni = quot;
            mult += 1;
        }
        debug_assert!(mult > 0);
        factors.push((LinePoint::new(p, q), mult));
    }
    if t2_power > 0 {
        factors.push((LinePoint::new(BigInt::one(), BigInt::zero()), t2_power));
    }
    factors.sort();

    let rd = uni.len() - 1;
    let residual = MPoly::from_terms(uni.into_iter().enumerate().map(|(i, c)| {
        (
            Monomial::from_exponents(&[(Var::T1, i as u32), (Var::T2, (rd - i) as u32)]),
            BigRational::from_integer(c),
        )
    }))
    .normalize();
    Ok(LinearFactors { factors, residual })
}

fn integer_primitive(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Exact quotient of `f` (low-to-high integer coefficients) by `q*x - p`,
/// if the division has no remainder over ℤ.
fn divide_linear(f: &[BigInt], p: &BigInt, q: &BigInt) -> Option<Vec<BigInt>> {
    if f.len() < 2 {
        return None;
    }
    let n = f.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    // synthetic division from the top: f = (q x - p) * out
    for i in (0..n).rev() {
        let num = &f[i + 1] + &carry;
        let (c, r) = num.div_rem(q);
        if !r.is_zero() {
            return None;
        }
        carry = &c * p;
        out[i] = c;
    }
    if &f[0] + &carry != BigInt::zero() {
        return None;
    }
    Some(out)
}

/// Distinct rational roots `p/q` (with `q > 0`) of an integer polynomial.
fn rational_roots(f: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let mut f = f.to_vec();
    let mut roots = Vec::new();
    if f.len() < 2 {
        return roots;
    }
    if f[0].is_zero() {
        roots.push((BigInt::zero(), BigInt::one()));
        while f.first().is_some_and(|c| c.is_zero()) {
            f.remove(0);
        }
    }
    if f.len() < 2 {
        return roots;
    }
    let lead = f.last().expect("non-empty").abs();
    let tail = f[0].abs();
    let qs = divisors(&lead);
    let ps = divisors(&tail);
    let mut found = std::collections::BTreeSet::new();
    for q in &qs {
        for p in &ps {
            if !p.gcd(q).is_one() {
                continue;
            }
            for p in [p.clone(), -p.clone()] {
                if eval_is_zero(&f, &p, q) {
                    found.insert((BigRational::new(p.clone(), q.clone()), p, q.clone()));
                }
            }
        }
    }
    roots.extend(found.into_iter().map(|(_, p, q)| (p, q)));
    roots
}

fn eval_is_zero(f: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    // q^n f(p/q) by Horner on the homogenized form
    let n = f.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let mut terms = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        terms.push(qpow.clone());
        qpow *= q;
    }
    let mut ppow = BigInt::one();
    for (i, c) in f.iter().enumerate() {
        acc += c * &ppow * &terms[n - i];
        ppow *= p;
    }
    acc.is_zero()
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n`. Prime factors above the trial-division limit
/// are taken as a single cofactor.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for x in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(x * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Squarefree degree of a univariate polynomial in `v`:
/// `deg f - deg gcd(f, f')`.
pub fn squarefree_degree(f: &MPoly, v: Var) -> u32 {
    let g = crate::polycore::gcd_multi(f, &f.derivative(v));
    f.degree(v) - g.degree(v)
}

/// Degree in `block`, with zero mapped to `None`.
pub fn finite_degree(f: &MPoly, block: VarSet) -> Option<u32> {
    match f.degree_in(block) {
        Degree::NegInfinity => None,
        Degree::Finite(d) => Some(d),
    }
}

/// Small integer view of a rational, for reporting.
pub fn as_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
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
    fn linear_elimination() {
        let r = resultant(&p("t1 + t3"), &p("t2 - t3"), Var::T3).unwrap();
        assert!(r.associate(&p("t1 + t2")));
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = p("t3^2 + t1*t3 + t2^2");
        assert!(resultant(&f, &f, Var::T3).unwrap().is_zero());
    }

    #[test]
    fn both_constant_is_an_error() {
        assert_eq!(
            resultant(&p("t1"), &p("t2"), Var::T3),
            Err(Error::ResultantUndefined(Var::T3))
        );
        assert!(resultant(&MPoly::zero(), &p("t3"), Var::T3).is_err());
    }

    #[test]
    fn cremona_j_resultant_divisible_by_t1_t2() {
        let j1 = p("t2*(x3*t3 - x1*t1)");
        let j2 = p("t1*(x3*t3 - x2*t2)");
        let r = resultant(&j1, &j2, Var::T3).unwrap();
        assert!(!r.is_zero());
        assert!(r.div_exact(&p("t1*t2")).is_some());
    }

    #[test]
    fn univariate_resultant_matches_root_product() {
        // Res((t3-1)(t3-2), t3-5) = (5-1)(5-2) up to sign
        let r = resultant(&p("(t3 - 1)*(t3 - 2)"), &p("t3 - 5"), Var::T3).unwrap();
        assert_eq!(r, MPoly::int(12));
    }

    #[test]
    fn constructed_content_split() {
        let f = p("(t1 - t2)^4*(x1*t1 + x2*t2)");
        let s = content_split(&f, VarSet::X).unwrap();
        assert_eq!(s.content, p("(t1 - t2)^4"));
        assert_eq!(s.primpart, p("x1*t1 + x2*t2"));
        let g = p("3*t1^2 - t2");
        let s = content_split(&g, VarSet::X).unwrap();
        assert_eq!(s.content, g);
        assert!(s.primpart.is_one());
        assert!(content_split(&MPoly::zero(), VarSet::X).is_err());
    }

    #[test]
    fn content_split_keeps_positive_multiple() {
        let f = p("-2*t1*x1 - 4*t1*x2");
        let s = content_split(&f, VarSet::X).unwrap();
        assert_eq!(s.content, p("t1"));
        assert_eq!(&s.content * &s.primpart.scale(&BigRational::from_integer(2.into())), f);
    }

    #[test]
    fn linear_factors_of_fourth_power() {
        let lf = homogeneous_linear_factors(&p("(t1 - t2)^4")).unwrap();
        assert_eq!(
            lf.factors,
            vec![(LinePoint::new(1.into(), 1.into()), 4)]
        );
        assert!(lf.residual.is_one());
    }

    #[test]
    fn irreducible_quadratic_stays_residual() {
        let lf = homogeneous_linear_factors(&p("t1^2 + t2^2")).unwrap();
        assert!(lf.factors.is_empty());
        assert_eq!(lf.residual, p("t1^2 + t2^2"));
    }

    #[test]
    fn three_coordinate_lines() {
        let lf = homogeneous_linear_factors(&p("t1*t2*(t1 - t2)")).unwrap();
        let pts: Vec<_> = lf.factors.iter().map(|(pt, m)| (pt.clone(), *m)).collect();
        assert_eq!(
            pts,
            vec![
                (LinePoint::new(0.into(), 1.into()), 1),
                (LinePoint::new(1.into(), 0.into()), 1),
                (LinePoint::new(1.into(), 1.into()), 1),
            ]
        );
        assert!(lf.residual.is_one());
    }

    #[test]
    fn mixed_factors_and_rational_roots() {
        let f = p("(2*t1 + 3*t2)^2*(t1^2 - 2*t2^2)*t2^3");
        let lf = homogeneous_linear_factors(&f).unwrap();
        assert_eq!(lf.linear_degree(), 5);
        assert_eq!(lf.residual, p("t1^2 - 2*t2^2"));
        assert!(lf
            .factors
            .contains(&(LinePoint::new(3.into(), (-2).into()), 2)));
        assert!(homogeneous_linear_factors(&p("t1 + t2^2")).is_err());
    }

    #[test]
    fn divisors_small() {
        let d: Vec<i64> = divisors(&BigInt::from(12))
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
