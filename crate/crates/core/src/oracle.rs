//! Brute-force verifiers independent of the resultant machinery: local
//! intersection numbers of plane curves by the classical recursive
//! reduction, a truncated local-algebra length as a second opinion, and
//! exact fiber counting for plane maps.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselocus::{build_w_forms, local_forms, ParamSurface};
use crate::elimination::resultant;
use crate::error::{Error, Result};
use crate::planemaps::PlaneMap;
use crate::polycore::{gcd_multi, q, MPoly, Monomial, Var, VarSet};
use crate::transform::{sample_transform, ComponentMap, ProjTransform};

/// Seeds used when a caller does not pick its own specializations.
pub const DEFAULT_SEEDS: [u64; 3] = [11, 23, 37];

/// Range of the integers substituted for symbolic coefficients.
pub const SPECIALIZATION_BOUND: i64 = 50;

const MAX_STEPS: usize = 100_000;

/// Intersection number at a point, agreed on by several specializations of
/// the symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMultResult {
    pub value: u32,
    pub seeds: Vec<u64>,
    pub agreement: usize,
}

fn t1() -> MPoly {
    MPoly::var(Var::T1)
}

fn t2() -> MPoly {
    MPoly::var(Var::T2)
}

fn translate_to_origin(f: &MPoly, a: &[BigRational; 2]) -> MPoly {
    let sigma: HashMap<Var, MPoly> = [
        (Var::T1, &t1() + &MPoly::constant(a[0].clone())),
        (Var::T2, &t2() + &MPoly::constant(a[1].clone())),
    ]
    .into_iter()
    .collect();
    f.substitute(&sigma)
}

fn check_affine_pair(f: &MPoly, g: &MPoly) -> Result<()> {
    for h in [f, g] {
        if !h.vars().difference(VarSet::T12).is_empty() {
            return Err(Error::Precondition(format!(
                "{h} must involve only t1 and t2"
            )));
        }
    }
    Ok(())
}

fn shared_component_at_origin(f: &MPoly, g: &MPoly) -> bool {
    let h = gcd_multi(f, g);
    !h.is_constant() && h.constant_term().is_zero()
}

/// Intersection number at `a` of the affine curves `f = 0` and `g = 0` in
/// the `(t1, t2)` plane.
pub fn local_intersection_multiplicity(f: &MPoly, g: &MPoly, a: &[BigRational; 2]) -> Result<u32> {
    check_affine_pair(f, g)?;
    let f = translate_to_origin(f, a);
    let g = translate_to_origin(&g.clone(), a);
    if f.is_zero() || g.is_zero() {
        return Err(Error::CommonComponent);
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Err(Error::Precondition(format!(
            "({}, {}) is not on both curves",
            a[0], a[1]
        )));
    }
    if shared_component_at_origin(&f, &g) {
        return Err(Error::CommonComponent);
    }
    at_origin(f, g)
}

/// Restriction to the line `t2 = 0`.
fn on_axis(f: &MPoly) -> MPoly {
    f.eval_partial(&[(Var::T2, q(0))])
}

fn axis_degree(f: &MPoly) -> Option<u32> {
    let r = on_axis(f);
    (!r.is_zero()).then(|| r.degree(Var::T1))
}

fn at_origin(mut f: MPoly, mut g: MPoly) -> Result<u32> {
    let mut total = 0u32;
    for _ in 0..MAX_STEPS {
        if f.is_zero() || g.is_zero() {
            return Err(Error::CommonComponent);
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(total);
        }
        let (r, s) = (axis_degree(&f), axis_degree(&g));
        // keep the smaller axis degree in f; None stands for t2 | f
        let swap = match (r, s) {
            (None, None) => return Err(Error::CommonComponent),
            (None, Some(_)) => true,
            (Some(r), Some(s)) => r > s,
            (Some(_), None) => false,
        };
        if swap {
            std::mem::swap(&mut f, &mut g);
        }
        let fx = on_axis(&f);
        let r = fx.degree(Var::T1);
        match axis_degree(&g) {
            None => {
                // I(f, t2 g1) = I(f, t2) + I(f, g1)
                total += fx.min_degree_in(VarSet::T12).expect_finite("axis restriction");
                g = g.div_exact(&t2()).expect("t2 divides g");
            }
            Some(s) => {
                let gx = on_axis(&g);
                let c = gx.leading_coeff() / fx.leading_coeff();
                let shift = f.mul_monomial(&Monomial::var(Var::T1, s - r), &c);
                g = &g - &shift;
            }
        }
    }
    Err(Error::OracleDisagreement("intersection recursion did not terminate".into()))
}

/// Random integer values for every non-parameter variable of the inputs.
fn specialization(polys: &[&MPoly], seed: u64) -> Vec<(Var, BigRational)> {
    let mut vars = VarSet::EMPTY;
    for p in polys {
        vars = vars.union(p.vars());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vars.difference(VarSet::T)
        .iter()
        .map(|v| (v, q(rng.gen_range(-SPECIALIZATION_BOUND..=SPECIALIZATION_BOUND))))
        .collect()
}

/// Intersection number after specializing the symbolic coefficients with
/// each seed. A special choice of coefficients can only raise the number, so
/// the value is the minimum, and it must be reached by at least two seeds
/// (or by the only one).
pub fn local_multiplicity_specialized(
    f: &MPoly,
    g: &MPoly,
    a: &[BigRational; 2],
    seeds: &[u64],
) -> Result<LocalMultResult> {
    if seeds.is_empty() {
        return Err(Error::Precondition("at least one seed is required".into()));
    }
    let mut values = Vec::new();
    for &seed in seeds {
        let vals = specialization(&[f, g], seed);
        let v = local_intersection_multiplicity(&f.eval_partial(&vals), &g.eval_partial(&vals), a)
            .map_err(|e| {
                Error::OracleDisagreement(format!("specialization with seed {seed} failed: {e}"))
            })?;
        values.push(v);
    }
    let value = *values.iter().min().expect("non-empty");
    let agreement = values.iter().filter(|v| **v == value).count();
    if agreement < values.len().min(2) {
        return Err(Error::OracleDisagreement(format!(
            "specializations disagree: {values:?}"
        )));
    }
    Ok(LocalMultResult {
        value,
        seeds: seeds.to_vec(),
        agreement,
    })
}

/// The two generic linear combinations of the components, moved so that
/// the point `a` sits at the origin of the affine chart.
fn local_generic_curves(components: &[MPoly], a: &[BigRational; 3]) -> Result<(MPoly, MPoly)> {
    if !components.iter().all(|p| p.eval_t(a).is_zero()) {
        return Err(Error::NotBasePoint(format!("({} : {} : {})", a[0], a[1], a[2])));
    }
    let (w1, w2) = build_w_forms(components);
    let (_, locals) = local_forms(&[w1, w2], a)?;
    Ok((locals[0].clone(), locals[1].clone()))
}

/// Multiplicity of the base point `a` as the intersection number of the two
/// generic curves through it.
pub fn base_point_multiplicity(
    components: &[MPoly],
    a: &[BigRational; 3],
    seeds: &[u64],
) -> Result<LocalMultResult> {
    let (f, g) = local_generic_curves(components, a)?;
    local_multiplicity_specialized(&f, &g, &[q(0), q(0)], seeds)
}

/// The generic curves at `a` with their symbolic coefficients specialized
/// by `seed`, for use with `local_algebra_length`.
pub fn specialized_generic_curves(
    components: &[MPoly],
    a: &[BigRational; 3],
    seed: u64,
) -> Result<(MPoly, MPoly)> {
    let (f, g) = local_generic_curves(components, a)?;
    let vals = specialization(&[&f, &g], seed);
    Ok((f.eval_partial(&vals), g.eval_partial(&vals)))
}

pub fn surface_base_point_multiplicity(
    p: &ParamSurface,
    a: &[BigRational; 3],
    seeds: &[u64],
) -> Result<LocalMultResult> {
    base_point_multiplicity(p.components(), a, seeds)
}

/// Largest truncation degree tried by the local-algebra oracle.
pub const MAX_TRUNCATION: u32 = 30;

/// Row-echelon basis over ℚ keyed by pivot column.
#[derive(Default)]
struct Echelon {
    rows: HashMap<usize, Vec<BigRational>>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<BigRational>) {
        for (col, row) in self.pivot_order() {
            if !v[col].is_zero() {
                let c = v[col].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        if let Some(col) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[col].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            // keep the basis reduced so that single-pass elimination works
            for row in self.rows.values_mut() {
                if !row[col].is_zero() {
                    let c = row[col].clone();
                    for (x, y) in row.iter_mut().zip(v.iter()) {
                        if !y.is_zero() {
                            *x -= &c * y;
                        }
                    }
                }
            }
            self.rows.insert(col, v);
        }
    }

    fn pivot_order(&self) -> Vec<(usize, Vec<BigRational>)> {
        let mut v: Vec<_> = self.rows.iter().map(|(k, r)| (*k, r.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// `dim ℚ[t1,t2] / ((f, g) + m^d)` with `m` the maximal ideal at the origin.
fn truncated_length(f: &MPoly, g: &MPoly, d: u32) -> usize {
    let monomials: Vec<(u32, u32)> = (0..d)
        .flat_map(|k| (0..=k).map(move |i| (i, k - i)))
        .collect();
    let index: HashMap<(u32, u32), usize> =
        monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut basis = Echelon::default();
    for h in [f, g] {
        for &(i, j) in &monomials {
            let mut v = vec![BigRational::zero(); monomials.len()];
            for (m, c) in h.terms() {
                let key = (m.exp(Var::T1) + i, m.exp(Var::T2) + j);
                if let Some(&k) = index.get(&key) {
                    v[k] += c;
                }
            }
            basis.insert(v);
        }
    }
    monomials.len() - basis.rank()
}

/// Intersection number at `a` as the length of the local algebra, read off
/// truncations `ℚ[t1,t2]/((f, g) + m^d)` once the dimension repeats twice.
pub fn local_algebra_length(f: &MPoly, g: &MPoly, a: &[BigRational; 2]) -> Result<u32> {
    check_affine_pair(f, g)?;
    let f = translate_to_origin(f, a);
    let g = translate_to_origin(g, a);
    if f.is_zero() || g.is_zero() || shared_component_at_origin(&f, &g) {
        return Err(Error::CommonComponent);
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(0);
    }
    let mut history: Vec<usize> = Vec::new();
    for d in 1..=MAX_TRUNCATION {
        history.push(truncated_length(&f, &g, d));
        let n = history.len();
        if n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3] {
            return Ok(history[n - 1] as u32);
        }
    }
    Err(Error::OracleDisagreement(format!(
        "local algebra did not stabilize up to degree {MAX_TRUNCATION}"
    )))
}

/// Outcome of counting the preimages of random targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub value: u32,
    /// Targets whose counts agreed.
    pub targets: Vec<[i64; 3]>,
    pub attempts: usize,
}

/// Number of targets that must agree.
pub const FIBER_TARGETS: usize = 2;
/// Targets drawn before giving up.
pub const FIBER_ATTEMPTS: usize = 5;

fn at_point(f: &MPoly, pt: [i64; 3]) -> BigRational {
    f.eval_t(&[q(pt[0]), q(pt[1]), q(pt[2])])
}

fn squarefree_part(f: &MPoly, v: Var) -> MPoly {
    let g = gcd_multi(f, &f.derivative(v));
    f.div_exact(&g).expect("gcd divides").normalize()
}

/// Distinct non-base preimages of `target` after the coordinate change
/// `ell`; `None` when `ell` or the target is not generic enough.
fn count_with_shear(
    s: &PlaneMap,
    target: [i64; 3],
    ell: &ProjTransform,
    rng: &mut ChaCha8Rng,
) -> Result<Option<u32>> {
    let sigma = ell.t_substitution();
    let c: Vec<MPoly> = s.components().iter().map(|f| f.substitute(&sigma)).collect();
    let b: Vec<MPoly> = target.iter().map(|v| MPoly::int(*v)).collect();
    let f1 = &(&b[2] * &c[0]) - &(&b[0] * &c[2]);
    let f2 = &(&b[2] * &c[1]) - &(&b[1] * &c[2]);
    if f1.is_zero() || f2.is_zero() {
        return Ok(None);
    }
    // nothing on the line t3 = 0
    let at_inf = |f: &MPoly| f.eval_partial(&[(Var::T3, q(0))]);
    let (i1, i2) = (at_inf(&f1), at_inf(&f2));
    if i1.is_zero() || i2.is_zero() || !gcd_multi(&i1, &i2).is_constant() {
        return Ok(None);
    }
    // constant leading coefficients in t2
    for f in [&f1, &f2, &c[2]] {
        if at_point(f, [0, 1, 0]).is_zero() {
            return Ok(None);
        }
    }
    let affine = |f: &MPoly| f.eval_partial(&[(Var::T3, q(1))]);
    let (a1, a2) = (affine(&f1), affine(&f2));
    let r = resultant(&a1, &a2, Var::T2)?;
    if r.is_zero() {
        return Ok(None);
    }
    let all = squarefree_part(&r, Var::T1);
    // Preimages have (c1 : c2 : c3) = target, so a combination u of the c_i
    // with u(target) != 0 cuts the solutions down to the base points.
    let mut base = all.clone();
    for _ in 0..2 {
        let lambda: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-20..=20));
        if lambda.iter().zip(target.iter()).map(|(l, b)| l * b).sum::<i64>() == 0 {
            return Ok(None);
        }
        let u = c
            .iter()
            .zip(lambda.iter())
            .fold(MPoly::zero(), |acc, (ci, l)| &acc + &(&MPoly::int(*l) * ci));
        let mu = MPoly::int(rng.gen_range(1..=20));
        let (u, mixed) = (affine(&u), &a1 + &(&mu * &a2));
        if u.degree(Var::T2) == 0 && mixed.degree(Var::T2) == 0 {
            return Ok(None);
        }
        let rb = resultant(&mixed, &u, Var::T2)?;
        if rb.is_zero() {
            return Ok(None);
        }
        base = gcd_multi(&base, &rb);
    }
    Ok(Some(all.degree(Var::T1) - base.degree(Var::T1)))
}

fn count_for_target(s: &PlaneMap, target: [i64; 3], rng: &mut ChaCha8Rng) -> Result<Option<u32>> {
    let mut counts = Vec::new();
    for _ in 0..10 {
        let ell = sample_transform(2, rng.gen(), 10)?;
        if let Some(c) = count_with_shear(s, target, &ell, rng)? {
            counts.push(c);
            if counts.len() == 2 {
                break;
            }
        }
    }
    // two independent shears certify that no two solutions share a
    // projection
    Ok(match counts.as_slice() {
        [a, b] if a == b => Some(*a),
        _ => None,
    })
}

/// Cardinality of the generic fiber of `s`, by exact elimination over
/// random rational targets.
pub fn fiber_count_detailed(s: &PlaneMap, seed: u64) -> Result<FiberCount> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xF1BE);
    let mut seen: Vec<([i64; 3], u32)> = Vec::new();
    for attempt in 1..=FIBER_ATTEMPTS {
        let target = [
            rng.gen_range(-50..=50),
            rng.gen_range(-50..=50),
            rng.gen_range(1..=50),
        ];
        if let Some(c) = count_for_target(s, target, &mut rng)? {
            seen.push((target, c));
            let agreeing: Vec<[i64; 3]> =
                seen.iter().filter(|(_, v)| *v == c).map(|(t, _)| *t).collect();
            if agreeing.len() >= FIBER_TARGETS {
                return Ok(FiberCount {
                    value: c,
                    targets: agreeing,
                    attempts: attempt,
                });
            }
        }
    }
    Err(Error::OracleDisagreement(format!(
        "fiber counts did not agree over {FIBER_ATTEMPTS} targets: {seen:?}"
    )))
}

pub fn fiber_count_plane(s: &PlaneMap, seed: u64) -> Result<u32> {
    Ok(fiber_count_detailed(s, seed)?.value)
}

/// Generic fiber size of a surface parametrization, read from the plane map
/// obtained by dropping one coordinate. The projection centre must lie off
/// the surface, which makes the projection `deg(surface)`-to-one.
pub fn degmap_by_projection(
    p: &ParamSurface,
    dropped: usize,
    implicit: &MPoly,
    seed: u64,
) -> Result<u32> {
    if dropped >= 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: dropped + 1,
        });
    }
    let u: Vec<Var> = (1..=4).map(Var::u).collect();
    let sigma: HashMap<Var, MPoly> = u
        .iter()
        .copied()
        .zip(p.components().iter().cloned())
        .collect();
    if !implicit.substitute(&sigma).is_zero() {
        return Err(Error::Precondition(
            "implicit equation does not vanish on the parametrization".into(),
        ));
    }
    let centre: Vec<(Var, BigRational)> = u
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, if i == dropped { BigRational::one() } else { q(0) }))
        .collect();
    if implicit.eval(&centre).is_zero() {
        return Err(Error::Precondition(format!(
            "projection centre e{} lies on the surface",
            dropped + 1
        )));
    }
    let surface_degree = implicit.total_degree().expect_finite("implicit equation");
    let comps: Vec<MPoly> = (0..4)
        .filter(|&i| i != dropped)
        .map(|i| p.component(i).clone())
        .collect();
    let fibers = fiber_count_plane(&PlaneMap::new(comps)?, seed)?;
    if fibers % surface_degree != 0 {
        return Err(Error::InexactDivision(format!(
            "fiber count {fibers} is not a multiple of the surface degree {surface_degree}"
        )));
    }
    Ok(fibers / surface_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse;

    fn p(s: &str) -> MPoly {
        parse(s).unwrap()
    }

    fn origin() -> [BigRational; 2] {
        [q(0), q(0)]
    }

    #[test]
    fn textbook_pairs() {
        let cases = [
            ("t1", "t2", 1),
            ("t2", "t2 - t1^2", 2),
            ("t2^2 - t1^3", "t2", 3),
            ("t2^2 - t1^3", "t1", 2),
            ("t2^2 - t1^2 - t1^3", "t2 - 2*t1^2", 2),
            ("(t1^2 + t2^2)^2 + 3*t1^2*t2 - t2^3", "(t1^2 + t2^2)^3 - 4*t1^2*t2^2", 14),
            ("t2 - t1^3", "t2", 3),
            ("t1*t2", "t1 + t2", 2),
        ];
        for (f, g, m) in cases {
            let (f, g) = (p(f), p(g));
            assert_eq!(local_intersection_multiplicity(&f, &g, &origin()).unwrap(), m, "{f} {g}");
            assert_eq!(local_intersection_multiplicity(&g, &f, &origin()).unwrap(), m);
            assert_eq!(local_algebra_length(&f, &g, &origin()).unwrap(), m, "{f} {g}");
        }
    }

    #[test]
    fn off_origin_and_errors() {
        let f = p("(t1 - 1)^2 - (t2 - 2)");
        let g = p("t2 - 2");
        assert_eq!(local_intersection_multiplicity(&f, &g, &[q(1), q(2)]).unwrap(), 2);
        assert!(local_intersection_multiplicity(&f, &g, &origin()).is_err());
        let h = p("t1 - t2");
        assert_eq!(
            local_intersection_multiplicity(&(&h * &p("t1 + 1")), &(&h * &p("t2 + 3")), &origin()),
            Err(Error::CommonComponent)
        );
        assert_eq!(local_algebra_length(&p("t1 + 1"), &p("t2"), &origin()).unwrap(), 0);
    }

    #[test]
    fn cox_base_point_is_four() {
        let shifted = ParamSurface::parse([
            "(t2+t3)^2*t3 + (t1+t3)^3",
            "(t1+t3)^2*t3 + (t2+t3)^3",
            "(t1+t3)*(t2+t3)*t3",
            "(t2+t3)^2*t3",
        ])
        .unwrap();
        let a = [q(-1), q(-1), q(1)];
        let r = surface_base_point_multiplicity(&shifted, &a, &DEFAULT_SEEDS).unwrap();
        assert_eq!((r.value, r.agreement), (4, 3));
    }

    #[test]
    fn fiber_counts() {
        assert_eq!(fiber_count_plane(&PlaneMap::cremona(), 0).unwrap(), 1);
        assert_eq!(fiber_count_plane(&PlaneMap::squaring(), 0).unwrap(), 4);
        assert_eq!(fiber_count_plane(&PlaneMap::identity(), 1).unwrap(), 1);
        let s = PlaneMap::parse(["t1^3", "t2^3", "t3^3"]).unwrap();
        assert_eq!(fiber_count_plane(&s, 2).unwrap(), 9);
    }

    #[test]
    fn quadric_projection() {
        let q0 = ParamSurface::parse(["t1^2", "t2^2", "t3^2", "t1*t2"]).unwrap();
        let quadric = p("u1*u2 - u4^2");
        assert_eq!(degmap_by_projection(&q0, 3, &quadric, 0).unwrap(), 2);
        // e1 and e3 lie on the quadric
        assert!(degmap_by_projection(&q0, 0, &quadric, 0).is_err());
        assert!(degmap_by_projection(&q0, 2, &quadric, 0).is_err());
    }
}
