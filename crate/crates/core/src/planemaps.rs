//! Dominant rational maps `S = (s1 : s2 : s3)` of the projective plane:
//! base-locus multiplicity from the `V` and `J` resultants, the map degree
//! `deg^2 - mult`, birationality, irreducibility of the `J` curves, and the
//! associated surface `(s1 : s2 : s2 : s3)`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselocus::{
    attribute, certification_failure, normalized_for_attempt, resultant_checks, tangent_cone_of,
    trial_seed, Attempt, BasePoint, ContentComputation, GenericityCertificate, MultOptions,
    ParamSurface, Path,
};
use crate::elimination::content_split;
use crate::error::{Error, Result};
use crate::polycore::{gcd_all, gcd_multi, q, MPoly, Monomial, Var, VarSet};
use crate::transform::{
    primitive_point, sample_transform, satisfies_hypotheses, ComponentMap, HypothesisCertificate,
    ProjTransform,
};

/// Attempts of the random Jacobian test before declaring a map non-dominant.
pub const DOMINANCE_TRIES: u64 = 3;

/// A dominant map of P² by three forms of a common degree without common
/// factor.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneMap {
    components: Vec<MPoly>,
    degree: u32,
    /// Rational point where the Jacobian determinant is non-zero.
    pub dominance_witness: [BigRational; 3],
}

impl PlaneMap {
    pub fn new(components: Vec<MPoly>) -> Result<PlaneMap> {
        let degree = crate::baselocus::check_forms(&components, 3)?;
        let h = gcd_all(components.iter());
        if !h.is_one() {
            return Err(Error::CommonFactor(h.to_string()));
        }
        let witness = dominance_witness(&components, 0).ok_or(Error::NotDominant)?;
        Ok(PlaneMap {
            components,
            degree,
            dominance_witness: witness,
        })
    }

    pub fn parse(components: [&str; 3]) -> Result<PlaneMap> {
        PlaneMap::new(
            components
                .iter()
                .map(|s| crate::polycore::parse_poly(s, VarSet::T))
                .collect::<Result<_>>()?,
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.components[i]
    }

    /// `(t2 t3 : t1 t3 : t1 t2)`.
    pub fn cremona() -> PlaneMap {
        PlaneMap::parse(["t2*t3", "t1*t3", "t1*t2"]).expect("valid map")
    }

    pub fn identity() -> PlaneMap {
        PlaneMap::parse(["t1", "t2", "t3"]).expect("valid map")
    }

    /// `(t1^2 : t2^2 : t3^2)`.
    pub fn squaring() -> PlaneMap {
        PlaneMap::parse(["t1^2", "t2^2", "t3^2"]).expect("valid map")
    }

    /// A linear map given by an invertible matrix.
    pub fn linear(l: &ProjTransform) -> Result<PlaneMap> {
        let ts: Vec<MPoly> = (1..=3).map(|i| MPoly::var(Var::t(i))).collect();
        PlaneMap::new(l.apply_forms(&ts)?)
    }

    /// Substitutes the components of `self` into `forms`.
    pub fn pull_back(&self, forms: &[MPoly]) -> Vec<MPoly> {
        let sigma = self.substitution();
        forms.iter().map(|f| f.substitute(&sigma)).collect()
    }

    /// `t_i -> s_i`.
    pub fn substitution(&self) -> HashMap<Var, MPoly> {
        (1..=3)
            .map(Var::t)
            .zip(self.components.iter().cloned())
            .collect()
    }

    pub fn is_base_point(&self, a: &[BigRational; 3]) -> bool {
        self.components.iter().all(|p| p.eval_t(a).is_zero())
    }
}

impl ComponentMap for PlaneMap {
    const ARITY: usize = 3;

    fn components(&self) -> &[MPoly] {
        &self.components
    }

    fn with_components(&self, components: Vec<MPoly>) -> Self {
        let witness = dominance_witness(&components, 0).unwrap_or_else(|| self.dominance_witness.clone());
        PlaneMap {
            components,
            degree: self.degree,
            dominance_witness: witness,
        }
    }
}

fn jacobian_det(components: &[MPoly]) -> MPoly {
    let d: Vec<Vec<MPoly>> = components
        .iter()
        .map(|s| (1..=3).map(|j| s.derivative(Var::t(j))).collect())
        .collect();
    let minor = |a: usize, b: usize, c: usize, e: usize| &(&d[a][c] * &d[b][e]) - &(&d[a][e] * &d[b][c]);
    let m0 = &d[0][0] * &minor(1, 2, 1, 2);
    let m1 = &d[0][1] * &minor(1, 2, 0, 2);
    let m2 = &d[0][2] * &minor(1, 2, 0, 1);
    &(&m0 - &m1) + &m2
}

/// A random rational point with non-zero Jacobian determinant, if one is
/// found within `DOMINANCE_TRIES` draws.
pub fn dominance_witness(components: &[MPoly], seed: u64) -> Option<[BigRational; 3]> {
    if components.len() != 3 {
        return None;
    }
    let jac = jacobian_det(components);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD0D0);
    for _ in 0..DOMINANCE_TRIES {
        let pt: [BigRational; 3] = std::array::from_fn(|_| q(rng.gen_range(-50..=50)));
        if !jac.eval_t(&pt).is_zero() {
            return Some(pt);
        }
    }
    None
}

fn x(i: usize) -> MPoly {
    MPoly::var(Var::x(i))
}

/// `V1 = Σ x_i s_i` and `V2 = Σ y_i s_i`.
pub fn build_v(s: &PlaneMap) -> (MPoly, MPoly) {
    crate::baselocus::build_w_forms(s.components())
}

/// `J1 = x3 L1(S) - x1 L3(S)` and `J2 = x3 L2(S) - x2 L3(S)`.
pub fn build_j(s: &PlaneMap, l: &ProjTransform) -> Result<(MPoly, MPoly)> {
    let ls = l.apply_forms(s.components())?;
    let j1 = &(&x(3) * &ls[0]) - &(&x(1) * &ls[2]);
    let j2 = &(&x(3) * &ls[1]) - &(&x(2) * &ls[2]);
    Ok((j1, j2))
}

/// V-path content for a fixed left transform.
pub fn v_content(s_star: &PlaneMap, l: &ProjTransform) -> Result<ContentComputation> {
    if !satisfies_hypotheses(s_star.components()) {
        return Err(Error::Precondition(
            "map must be normalized: components non-zero at (0:0:1)".into(),
        ));
    }
    let forms = l.apply_forms(s_star.components())?;
    let (v1, v2) = crate::baselocus::build_w_forms(&forms);
    let mut cert = GenericityCertificate::default();
    let r = resultant_checks(&mut cert, &v1, &v2, s_star.degree())?;
    let Some(r) = r.filter(|_| cert.passed()) else {
        return Err(Error::CertificationFailed {
            trials: 1,
            summary: cert.failures().join("; "),
        });
    };
    let split = content_split(&r, VarSet::XY)?;
    Ok(ContentComputation {
        path: Path::V,
        transform: l.clone(),
        resultant: r,
        split,
        certificate: cert.clone(),
        attempts: vec![Attempt {
            trial: 0,
            transform: l.clone(),
            certificate: cert,
        }],
    })
}

fn j_attempt(
    s_star: &PlaneMap,
    l: &ProjTransform,
    v_degree: Option<u32>,
) -> Result<(GenericityCertificate, Option<(MPoly, crate::elimination::ContentSplit)>)> {
    let mut cert = GenericityCertificate::default();
    let ls = l.apply_forms(s_star.components())?;
    let origin = [q(0), q(0), q(1)];
    for (i, f) in ls.iter().enumerate() {
        let v = f.eval_t(&origin);
        cert.push(
            &format!("L{}(S) non-zero at (0:0:1)", i + 1),
            !v.is_zero(),
            v.to_string(),
        );
    }
    let g13 = gcd_multi(&ls[0], &ls[2]);
    let g23 = gcd_multi(&ls[1], &ls[2]);
    cert.push("gcd(L1(S), L3(S)) = 1", g13.is_one(), g13.to_string());
    cert.push("gcd(L2(S), L3(S)) = 1", g23.is_one(), g23.to_string());
    let (j1, j2) = build_j(s_star, l)?;
    let r = resultant_checks(&mut cert, &j1, &j2, s_star.degree())?;
    let Some(r) = r.filter(|_| cert.passed()) else {
        return Ok((cert, None));
    };
    let split = content_split(&r, VarSet::X)?;
    if let Some(vd) = v_degree {
        let jd = split.content.total_degree().expect_finite("content");
        cert.push(
            "content degree agrees with V path",
            jd == vd,
            format!("J {jd}, V {vd}"),
        );
        if jd != vd {
            return Ok((cert, None));
        }
    }
    Ok((cert, Some((r, split))))
}

/// J-path content with a certified transform of P².
pub fn j_content(s_star: &PlaneMap, opts: &MultOptions) -> Result<ContentComputation> {
    if !satisfies_hypotheses(s_star.components()) {
        return Err(Error::Precondition(
            "map must be normalized: components non-zero at (0:0:1)".into(),
        ));
    }
    let v_degree = if opts.validate {
        Some(v_content(s_star, &ProjTransform::identity(2))?.content_degree())
    } else {
        None
    };
    let candidates: Vec<ProjTransform> = match &opts.transform {
        Some(l) => vec![l.clone()],
        None => (0..opts.trials.max(1))
            .map(|t| sample_transform(2, trial_seed(opts.seed, t), opts.coeff_bound))
            .collect::<Result<_>>()?,
    };
    let mut attempts = Vec::new();
    for (trial, l) in candidates.into_iter().enumerate() {
        let (cert, found) = j_attempt(s_star, &l, v_degree)?;
        attempts.push(Attempt {
            trial,
            transform: l.clone(),
            certificate: cert.clone(),
        });
        if let Some((r, split)) = found {
            return Ok(ContentComputation {
                path: Path::J,
                transform: l,
                resultant: r,
                split,
                certificate: cert,
                attempts,
            });
        }
    }
    Err(certification_failure(&attempts))
}

/// Content computation along the requested path on a normalized map;
/// surface path names select their plane analogues.
pub fn certified_content_plane(s_star: &PlaneMap, opts: &MultOptions) -> Result<ContentComputation> {
    match opts.path.for_plane() {
        Path::V => {
            let l = opts
                .transform
                .clone()
                .unwrap_or_else(|| ProjTransform::identity(2));
            v_content(s_star, &l)
        }
        _ => j_content(s_star, opts),
    }
}

#[derive(Clone, Debug)]
pub struct PlaneMapReport {
    pub degree: u32,
    pub mult: u32,
    pub degmap: u32,
    pub birational: bool,
    /// Normalized content in the normalized parameter coordinates.
    pub content: MPoly,
    pub resultant_degree: u32,
    pub primpart_degree: u32,
    pub rational_points: Vec<BasePoint>,
    pub residual_degree: u32,
    pub path: Path,
    pub transform: ProjTransform,
    pub ell: ProjTransform,
    pub left: ProjTransform,
    pub genericity: GenericityCertificate,
    pub hypotheses: HypothesisCertificate,
    pub attempts: Vec<Attempt>,
    pub seed: u64,
}

impl PlaneMapReport {
    /// `(deg^2 - content degree) / degMap` and `primpart degree / degMap`,
    /// both expected to be 1.
    pub fn ratios(&self) -> (BigRational, BigRational) {
        let dm = q(self.degmap as i64);
        let d2 = (self.degree * self.degree) as i64;
        (
            q(d2 - self.mult as i64) / &dm,
            q(self.primpart_degree as i64) / dm,
        )
    }
}

/// Base-locus multiplicity, map degree and rational base points of a plane
/// map.
pub fn mult_base_locus_plane(s: &PlaneMap, opts: &MultOptions) -> Result<PlaneMapReport> {
    let rounds = opts.trials.max(1);
    let mut best = None;
    for round in 0..rounds {
        let normalized = normalized_for_attempt(s, opts, round)?;
        let comp = certified_content_plane(&normalized.map, opts)?;
        let attribution = attribute(normalized.map.components(), &comp.split.content)?;
        let clean = attribution.unresolved.is_empty();
        best = Some((normalized, comp, attribution));
        if clean {
            break;
        }
    }
    let (normalized, comp, attribution) = best.expect("at least one round");
    let mut rational_points = Vec::new();
    for (pt, m) in &attribution.points {
        let ints = primitive_point(&normalized.ell.apply_point(pt));
        let coords: [BigRational; 3] =
            std::array::from_fn(|i| BigRational::from_integer(ints[i].clone()));
        let cone = tangent_cone_of(s.components(), &coords)?;
        rational_points.push(BasePoint {
            point: ints,
            multiplicity: *m,
            curve_multiplicity: cone.order,
            tangent_cone: cone,
        });
    }
    rational_points.sort_by(|a, b| a.point.cmp(&b.point));
    let unresolved: u32 = attribution.unresolved.iter().map(|(_, m)| m).sum();
    let mult = comp.content_degree();
    let d2 = s.degree() * s.degree();
    if mult >= d2 {
        return Err(Error::NonPositiveDegMap(d2 as i64 - mult as i64));
    }
    let degmap = d2 - mult;
    Ok(PlaneMapReport {
        degree: s.degree(),
        mult,
        degmap,
        birational: degmap == 1,
        content: comp.split.content.clone(),
        resultant_degree: comp.resultant_degree(),
        primpart_degree: comp.primpart_degree(),
        rational_points,
        residual_degree: attribution.residual_degree + unresolved,
        path: comp.path,
        transform: comp.transform.clone(),
        ell: normalized.ell,
        left: normalized.left,
        genericity: comp.certificate,
        hypotheses: normalized.certificate,
        attempts: comp.attempts,
        seed: opts.seed,
    })
}

/// Multiplicity of the base locus only.
pub fn mult_plane(s: &PlaneMap, opts: &MultOptions) -> Result<u32> {
    let normalized = normalized_for_attempt(s, opts, 0)?;
    Ok(certified_content_plane(&normalized.map, opts)?.content_degree())
}

/// `deg(S)^2 - mult(B(S))`, the cardinality of the generic fiber.
pub fn degmap_plane(s: &PlaneMap, opts: &MultOptions) -> Result<u32> {
    let m = mult_plane(s, opts)?;
    let d2 = s.degree() * s.degree();
    if m >= d2 {
        return Err(Error::NonPositiveDegMap(d2 as i64 - m as i64));
    }
    Ok(d2 - m)
}

pub fn is_birational(s: &PlaneMap, opts: &MultOptions) -> Result<bool> {
    Ok(degmap_plane(s, opts)? == 1)
}

/// `(s1 : s2 : s2 : s3)`, a parametrization of the plane `u2 = u3`.
pub fn associated_surface_param(s: &PlaneMap) -> ParamSurface {
    let c = s.components();
    ParamSurface::new(vec![c[0].clone(), c[1].clone(), c[1].clone(), c[2].clone()])
        .expect("same forms without common factor")
}

/// Verdict on the irreducibility of a `J` curve over `ℚ(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    NotCertified,
}

impl Irreducibility {
    pub fn is_irreducible(self) -> bool {
        self == Irreducibility::Irreducible
    }

    pub fn certified(self) -> bool {
        self != Irreducibility::NotCertified
    }
}

fn j_irreducibility(j: &MPoly) -> Irreducibility {
    // J is linear in x: any factorization has a factor free of x, which
    // then divides every x-coefficient, so the content decides.
    if j.is_zero() {
        return Irreducibility::NotCertified;
    }
    if j.degree_in(VarSet::X) != crate::polycore::Degree::Finite(1) {
        return Irreducibility::NotCertified;
    }
    match content_split(j, VarSet::X) {
        Ok(split) if split.content.is_constant() => Irreducibility::Irreducible,
        Ok(_) => Irreducibility::Reducible,
        Err(_) => Irreducibility::NotCertified,
    }
}

/// Irreducibility of `J1` and `J2` over `ℚ(x)`.
pub fn check_j_irreducible(s: &PlaneMap, l: &ProjTransform) -> Result<(Irreducibility, Irreducibility)> {
    let (j1, j2) = build_j(s, l)?;
    Ok((j_irreducibility(&j1), j_irreducibility(&j2)))
}

/// `(L∘S)∘R` is proportional to `(t1, t2, t3)`.
fn is_inverse(ls: &[MPoly], rinv: &[MPoly]) -> bool {
    let sigma: HashMap<Var, MPoly> = (1..=3).map(Var::t).zip(rinv.iter().cloned()).collect();
    let c: Vec<MPoly> = ls.iter().map(|f| f.substitute(&sigma)).collect();
    if c.iter().all(MPoly::is_zero) {
        return false;
    }
    let t: Vec<MPoly> = (1..=3).map(|i| MPoly::var(Var::t(i))).collect();
    (0..3).all(|i| (i + 1..3).all(|j| &c[i] * &t[j] == &c[j] * &t[i]))
}

/// Homogenizes each form in `h1` with `h2` to the common `h1`-degree.
fn homogenize_h(forms: &[MPoly]) -> Vec<MPoly> {
    let d = forms.iter().map(|f| f.degree(Var::H1)).max().unwrap_or(0);
    forms
        .iter()
        .map(|f| {
            MPoly::from_terms(f.terms().iter().map(|(m, c)| {
                let e = m.exp(Var::H1);
                (m.mul(&Monomial::var(Var::H2, d - e)), c.clone())
            }))
        })
        .collect()
}

/// Curve parametrizations built from the inverse: `𝒥1` substitutes
/// `(x1, h1, x3)` and `𝒥2` substitutes `(h1, x2, x3)` into `Rinv`, each
/// homogenized in `h1` with `h2`.
pub fn j_curve_parametrizations(rinv: &[MPoly]) -> (Vec<MPoly>, Vec<MPoly>) {
    let at = |a: Var, b: Var, c: Var| -> Vec<MPoly> {
        let sigma: HashMap<Var, MPoly> = [
            (Var::T1, MPoly::var(a)),
            (Var::T2, MPoly::var(b)),
            (Var::T3, MPoly::var(c)),
        ]
        .into_iter()
        .collect();
        homogenize_h(&rinv.iter().map(|r| r.substitute(&sigma)).collect::<Vec<_>>())
    };
    (
        at(Var::X1, Var::H1, Var::X3),
        at(Var::H1, Var::X2, Var::X3),
    )
}

/// Checks that the curves `J1 = 0`, `J2 = 0` are parametrized through the
/// supplied inverse of `L∘S`.
pub fn verify_inverse_parametrizes_j(
    s: &PlaneMap,
    l: &ProjTransform,
    rinv: &[MPoly],
) -> Result<bool> {
    if rinv.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: rinv.len(),
        });
    }
    let ls = l.apply_forms(s.components())?;
    if !is_inverse(&ls, rinv) {
        return Err(Error::NotInverse);
    }
    let (j1, j2) = build_j(s, l)?;
    let (p1, p2) = j_curve_parametrizations(rinv);
    let on = |j: &MPoly, param: &[MPoly]| {
        let sigma: HashMap<Var, MPoly> = (1..=3).map(Var::t).zip(param.iter().cloned()).collect();
        j.substitute(&sigma).is_zero()
    };
    Ok(on(&j1, &p1) && on(&j2, &p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elimination::resultant;
    use crate::polycore::parse;
    use crate::transform::apply_param;

    fn p(s: &str) -> MPoly {
        parse(s).unwrap()
    }

    #[test]
    fn cremona_j_with_identity() {
        let (j1, j2) = build_j(&PlaneMap::cremona(), &ProjTransform::identity(2)).unwrap();
        assert_eq!(j1, p("t2*(x3*t3 - x1*t1)"));
        assert_eq!(j2, p("t1*(x3*t3 - x2*t2)"));
        let (a, b) = check_j_irreducible(&PlaneMap::cremona(), &ProjTransform::identity(2)).unwrap();
        assert_eq!((a, b), (Irreducibility::Reducible, Irreducibility::Reducible));
        assert!(!a.is_irreducible() && a.certified());
    }

    #[test]
    fn cremona_report() {
        for path in [Path::V, Path::J] {
            let r = mult_base_locus_plane(
                &PlaneMap::cremona(),
                &MultOptions::default().with_path(path).validated(),
            )
            .unwrap();
            assert_eq!((r.degree, r.mult, r.degmap, r.birational), (2, 3, 1, true));
            let pts: Vec<(Vec<i64>, u32)> = r
                .rational_points
                .iter()
                .map(|b| {
                    (
                        b.point.iter().map(|c| i64::try_from(c).unwrap()).collect(),
                        b.multiplicity,
                    )
                })
                .collect();
            assert_eq!(
                pts,
                vec![(vec![0, 0, 1], 1), (vec![0, 1, 0], 1), (vec![1, 0, 0], 1)]
            );
            assert_eq!(r.ratios(), (q(1), q(1)));
        }
    }

    #[test]
    fn cremona_certified_j_is_irreducible() {
        let r = mult_base_locus_plane(&PlaneMap::cremona(), &MultOptions::default()).unwrap();
        let n = normalized_for_attempt(&PlaneMap::cremona(), &MultOptions::default(), 0).unwrap();
        let (a, b) = check_j_irreducible(&n.map, &r.transform).unwrap();
        assert!(a.is_irreducible() && b.is_irreducible());
    }

    #[test]
    fn identity_and_squaring() {
        let opts = MultOptions::default();
        assert_eq!(mult_plane(&PlaneMap::identity(), &opts).unwrap(), 0);
        assert_eq!(degmap_plane(&PlaneMap::identity(), &opts).unwrap(), 1);
        for path in [Path::V, Path::J] {
            let o = opts.clone().with_path(path);
            assert_eq!(mult_plane(&PlaneMap::squaring(), &o).unwrap(), 0);
        }
        assert_eq!(degmap_plane(&PlaneMap::squaring(), &opts).unwrap(), 4);
        assert!(!is_birational(&PlaneMap::squaring(), &opts).unwrap());
        assert!(is_birational(&PlaneMap::cremona(), &opts).unwrap());
    }

    #[test]
    fn associated_surface_matches() {
        let ps = associated_surface_param(&PlaneMap::cremona());
        assert_eq!(ps.component(2), &p("t1*t3"));
        let opts = MultOptions::default();
        assert_eq!(crate::baselocus::mult(&ps, &opts).unwrap(), 3);
        let sq = associated_surface_param(&PlaneMap::squaring());
        assert_eq!(crate::baselocus::mult(&sq, &opts).unwrap(), 0);
        let id = associated_surface_param(&PlaneMap::identity());
        assert_eq!(crate::baselocus::mult(&id, &opts).unwrap(), 0);
    }

    #[test]
    fn non_dominant_rejected() {
        assert_eq!(
            PlaneMap::parse(["t1", "t2", "t1 + t2"]),
            Err(Error::NotDominant)
        );
    }

    #[test]
    fn cremona_inverse_parametrizes_j() {
        let s = PlaneMap::cremona();
        let l = ProjTransform::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[1, 1, 1]]).unwrap();
        let linv = PlaneMap::linear(&l.inverse()).unwrap();
        // R = Cremona ∘ L^{-1}
        let rinv = linv.pull_back(s.components());
        assert!(verify_inverse_parametrizes_j(&s, &l, &rinv).unwrap());
        let wrong = vec![p("t1"), p("t2"), p("t3")];
        assert_eq!(
            verify_inverse_parametrizes_j(&s, &l, &wrong),
            Err(Error::NotInverse)
        );
    }

    #[test]
    fn linear_inverse() {
        let l0 = ProjTransform::from_ints(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 1]]).unwrap();
        let s = PlaneMap::linear(&l0).unwrap();
        let l = ProjTransform::identity(2);
        let rinv = PlaneMap::linear(&l0.inverse()).unwrap();
        assert!(verify_inverse_parametrizes_j(&s, &l, rinv.components()).unwrap());
        let (a, b) = check_j_irreducible(&s, &l).unwrap();
        assert!(a.is_irreducible() && b.is_irreducible());
    }

    #[test]
    fn j_resultant_shares_cremona_points() {
        let s = apply_param(
            &ProjTransform::from_ints(&[&[1, 0, 1], &[0, 1, 2], &[0, 0, 1]]).unwrap(),
            &PlaneMap::cremona(),
        )
        .unwrap();
        let (j1, j2) = build_j(&s, &ProjTransform::from_ints(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 2]]).unwrap()).unwrap();
        assert!(!resultant(&j1, &j2, Var::T3).unwrap().is_zero());
    }
}
