//! Reparametrizations `P = Q ∘ S` of a surface parametrization `Q` by a
//! dominant plane map `S`: common factor of the composed components, the
//! degree and multiplicity (in)equalities, and the content power law.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::baselocus::{
    certified_content, mult_base_locus, BaseLocusReport, MultOptions, ParamSurface, Path,
    SurfaceMeta,
};
use crate::corpus::random_form;
use crate::error::{Error, Result};
use crate::planemaps::{j_content, mult_base_locus_plane, PlaneMap, PlaneMapReport};
use crate::polycore::{gcd_all, MPoly};
use crate::transform::{normalize_with, sample_star_transform, ComponentMap, ProjTransform, NORMALIZATION_TRIES};

/// `Q ∘ S` before and after removing the common factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Composition {
    /// `q_i(s1, s2, s3)`.
    pub raw: Vec<MPoly>,
    /// Normalized gcd of the raw components.
    pub common_factor: MPoly,
    pub p: ParamSurface,
    /// `deg(Q) deg(S)`, the degree of every raw component.
    pub degree_product: u32,
}

impl Composition {
    pub fn common_factor_degree(&self) -> u32 {
        self.common_factor.total_degree().expect_finite("gcd")
    }
}

pub fn compose(q: &ParamSurface, s: &PlaneMap) -> Result<Composition> {
    let raw = s.pull_back(q.components());
    let h = gcd_all(raw.iter());
    let comps = raw
        .iter()
        .map(|f| {
            f.div_exact(&h)
                .ok_or_else(|| Error::InexactDivision(format!("{h} does not divide {f}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Composition {
        degree_product: q.degree() * s.degree(),
        p: ParamSurface::new(comps)?,
        common_factor: h,
        raw,
    })
}

/// Surface degree and generic fiber size of `Q`, which the composition
/// formulas take as given.
fn required_meta(q: &ParamSurface, meta: SurfaceMeta) -> Result<(u64, u64)> {
    let surface_degree = meta
        .surface_degree
        .or(q.meta.surface_degree)
        .ok_or(Error::MissingMetadata("surface degree of Q"))?;
    let degmap = meta
        .degmap
        .or(q.meta.degmap)
        .ok_or(Error::MissingMetadata("degMap of Q"))?;
    Ok((surface_degree, degmap))
}

/// Everything compared for one composition.
#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub composition: Composition,
    pub degree_p: u32,
    pub degree_q: u32,
    pub degree_s: u32,
    pub mult_p: u32,
    pub mult_q: u32,
    pub mult_s: u32,
    pub degmap_s: u32,
    pub surface_degree: u64,
    pub degmap_q: u64,
    /// `deg(S)^2 mult(Q) + deg(surface) degMap(Q) mult(S)`.
    pub rhs: u64,
    /// The gcd of the raw components is 1.
    pub gcd_trivial: bool,
    /// `deg(P) = deg(Q) deg(S)`.
    pub degree_multiplies: bool,
    /// `mult(P)` equals `rhs`.
    pub mult_identity: bool,
    /// `deg(P) <= deg(Q) deg(S)`.
    pub degree_inequality: bool,
    /// `mult(P) <= rhs`.
    pub mult_inequality: bool,
    /// `deg(P)^2 - deg(Q)^2 deg(S)^2 = mult(P) - rhs`; fails when the
    /// supplied metadata is inconsistent with the computed multiplicities.
    pub consistency_identity: bool,
    pub content_power: Option<ContentPowerCheck>,
    pub report_q: BaseLocusReport,
    pub report_s: PlaneMapReport,
    pub report_p: BaseLocusReport,
}

impl CompositionReport {
    /// The three equivalent statements agree.
    pub fn statements_agree(&self) -> bool {
        self.gcd_trivial == self.degree_multiplies && self.degree_multiplies == self.mult_identity
    }

    pub fn statements(&self) -> [bool; 3] {
        [self.gcd_trivial, self.degree_multiplies, self.mult_identity]
    }
}

/// Computes all three multiplicities and evaluates the equivalent
/// statements independently of each other.
pub fn check_property_p1(
    q: &ParamSurface,
    s: &PlaneMap,
    meta: SurfaceMeta,
    opts: &MultOptions,
) -> Result<CompositionReport> {
    let (surface_degree, degmap_q) = required_meta(q, meta)?;
    let composition = compose(q, s)?;
    let surface_opts = opts.clone().with_path(opts.path.for_surface());
    let report_q = mult_base_locus(q, &surface_opts)?;
    let report_s = mult_base_locus_plane(s, &opts.clone().with_path(opts.path.for_plane()))?;
    let report_p = mult_base_locus(&composition.p, &surface_opts)?;

    let (dp, dq, ds) = (composition.p.degree(), q.degree(), s.degree());
    let (mp, mq, ms) = (report_p.mult_total, report_q.mult_total, report_s.mult);
    let rhs = (ds as u64).pow(2) * mq as u64 + surface_degree * degmap_q * ms as u64;
    let lhs_identity = (dp as i64).pow(2) - (dq as i64 * ds as i64).pow(2);
    let content_power = if mq == 0 {
        Some(content_power_check(q, s, SurfaceMeta {
            degmap: Some(degmap_q),
            surface_degree: Some(surface_degree),
        }, opts)?)
    } else {
        None
    };
    Ok(CompositionReport {
        degree_p: dp,
        degree_q: dq,
        degree_s: ds,
        mult_p: mp,
        mult_q: mq,
        mult_s: ms,
        degmap_s: report_s.degmap,
        surface_degree,
        degmap_q,
        rhs,
        gcd_trivial: composition.common_factor.is_one(),
        degree_multiplies: dp == composition.degree_product,
        mult_identity: mp as u64 == rhs,
        degree_inequality: dp <= composition.degree_product,
        mult_inequality: mp as u64 <= rhs,
        consistency_identity: lhs_identity == mp as i64 - rhs as i64,
        content_power,
        composition,
        report_q,
        report_s,
        report_p,
    })
}

/// Verdict of the no-base-point corollaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoBasePointsVerdict {
    NotApplicable { mult_q: u32 },
    Checked {
        gcd_trivial: bool,
        degree_multiplies: bool,
        /// `mult(P) = deg(surface) degMap(Q) mult(S)`.
        mult_formula: bool,
        /// Rational base points of `P` and `S` coincide.
        base_points_match: bool,
    },
}

impl NoBasePointsVerdict {
    pub fn all_hold(&self) -> Option<bool> {
        match self {
            NoBasePointsVerdict::NotApplicable { .. } => None,
            NoBasePointsVerdict::Checked {
                gcd_trivial,
                degree_multiplies,
                mult_formula,
                base_points_match,
            } => Some(*gcd_trivial && *degree_multiplies && *mult_formula && *base_points_match),
        }
    }
}

fn rational_points(points: &[crate::baselocus::BasePoint]) -> Vec<Vec<BigInt>> {
    let mut v: Vec<Vec<BigInt>> = points.iter().map(|b| b.point.clone()).collect();
    v.sort();
    v
}

/// When `Q` has no base points: the composition needs no division, degrees
/// multiply and the multiplicity comes from `S` alone.
pub fn check_no_base_points_q(
    q: &ParamSurface,
    s: &PlaneMap,
    meta: SurfaceMeta,
    opts: &MultOptions,
) -> Result<NoBasePointsVerdict> {
    let surface_opts = opts.clone().with_path(opts.path.for_surface());
    let report_q = mult_base_locus(q, &surface_opts)?;
    if report_q.mult_total != 0 {
        return Ok(NoBasePointsVerdict::NotApplicable {
            mult_q: report_q.mult_total,
        });
    }
    let (surface_degree, degmap_q) = required_meta(q, meta)?;
    let composition = compose(q, s)?;
    let report_s = mult_base_locus_plane(s, &opts.clone().with_path(opts.path.for_plane()))?;
    let report_p = mult_base_locus(&composition.p, &surface_opts)?;
    Ok(NoBasePointsVerdict::Checked {
        gcd_trivial: composition.common_factor.is_one(),
        degree_multiplies: composition.p.degree() == composition.degree_product,
        mult_formula: report_p.mult_total as u64
            == surface_degree * degmap_q * report_s.mult as u64,
        base_points_match: rational_points(&report_p.rational_points)
            == rational_points(&report_s.rational_points),
    })
}

/// Comparison of the two contents in shared parameter coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentPowerCheck {
    pub exponent: u64,
    /// Parameter shift applied to both `P` and `S`.
    pub ell: ProjTransform,
    pub content_p: MPoly,
    pub content_s: MPoly,
    pub transform_p: ProjTransform,
    pub transform_s: ProjTransform,
    /// `content_p = content_s^exponent` after normalization.
    pub holds: bool,
    /// `deg content_p = exponent * deg content_s`.
    pub degree_holds: bool,
}

/// A shift that brings both maps to the standing hypotheses.
fn shared_shift(p: &ParamSurface, s: &PlaneMap, opts: &MultOptions) -> Result<ProjTransform> {
    let mut candidates = vec![opts.ell.clone().unwrap_or_else(|| ProjTransform::identity(2))];
    for k in 0..NORMALIZATION_TRIES {
        candidates.push(sample_star_transform(
            2,
            opts.seed.wrapping_mul(7_919).wrapping_add(k as u64 + 1),
            opts.coeff_bound,
        )?);
    }
    for ell in candidates {
        let ns = normalize_with(s, opts.seed, opts.coeff_bound, Some(&ell))?;
        let np = normalize_with(p, opts.seed, opts.coeff_bound, Some(&ell))?;
        if ns.ell == ell && np.ell == ell {
            return Ok(ell);
        }
    }
    Err(Error::NormalizationFailed(NORMALIZATION_TRIES))
}

/// Checks that the K-path content of `P = Q ∘ S` is the J-path content of
/// `S` raised to `deg(surface) degMap(Q)`, both taken after the same
/// parameter shift. Requires `Q` without base points.
pub fn content_power_check(
    q: &ParamSurface,
    s: &PlaneMap,
    meta: SurfaceMeta,
    opts: &MultOptions,
) -> Result<ContentPowerCheck> {
    let (surface_degree, degmap_q) = required_meta(q, meta)?;
    let mq = crate::baselocus::mult(q, &opts.clone().with_path(opts.path.for_surface()))?;
    if mq != 0 {
        return Err(Error::Precondition(format!(
            "Q has base points (multiplicity {mq})"
        )));
    }
    let composition = compose(q, s)?;
    let ell = shared_shift(&composition.p, s, opts)?;
    let np = normalize_with(&composition.p, opts.seed, opts.coeff_bound, Some(&ell))?;
    let ns = normalize_with(s, opts.seed, opts.coeff_bound, Some(&ell))?;
    let cp = certified_content(&np.map, &opts.clone().with_path(Path::K))?;
    let cs = j_content(&ns.map, &opts.clone().with_path(Path::J))?;
    let exponent = surface_degree * degmap_q;
    let power = u32::try_from(exponent)
        .map_err(|_| Error::Precondition(format!("exponent {exponent} too large")))?;
    let content_p = cp.split.content.clone();
    let content_s = cs.split.content.clone();
    let holds = content_p == content_s.pow(power).normalize();
    let degree_holds = cp.content_degree() as u64 == exponent * cs.content_degree() as u64;
    Ok(ContentPowerCheck {
        exponent,
        ell,
        content_p,
        content_s,
        transform_p: cp.transform,
        transform_s: cs.transform,
        holds,
        degree_holds,
    })
}

/// Searches seeded random quadratic maps `S` with `gcd(q_i(S)) = 1`. For a
/// `Q` with base points such an `S` shows that a trivial gcd does not force
/// `Q` to be free of base points.
pub fn find_trivial_gcd_witness(
    q: &ParamSurface,
    seed: u64,
    tries: usize,
) -> Result<Option<PlaneMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let comps: Vec<MPoly> = (0..3).map(|_| random_form(&mut rng, 2, 0, 2)).collect();
        if comps.iter().any(MPoly::is_zero) || !gcd_all(comps.iter()).is_one() {
            continue;
        }
        let Ok(s) = PlaneMap::new(comps) else {
            continue;
        };
        if compose(q, &s)?.common_factor.is_one() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
