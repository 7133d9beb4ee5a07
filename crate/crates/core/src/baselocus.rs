//! Base-locus multiplicity of a rational surface parametrization
//! `P = (p1 : p2 : p3 : p4)` of P² into P³, computed as the t-degree of the
//! content of a univariate resultant of two symbolic combinations of the
//! components, plus the per-point data and the degree formula it feeds.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::elimination::{
    content_split, homogeneous_linear_factors, resultant, ContentSplit, LinePoint,
};
use crate::error::{Error, Result};
use crate::polycore::{gcd_all, q, Degree, MPoly, Var, VarSet};
use crate::transform::{
    normalize_with, primitive_point, sample_star_transform, sample_transform, satisfies_hypotheses,
    Check, ComponentMap, Normalized, ProjTransform, DEFAULT_COEFF_BOUND,
};

/// Optional metadata about the image surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SurfaceMeta {
    /// Cardinality of the generic fiber.
    pub degmap: Option<u64>,
    /// Degree of the image surface.
    pub surface_degree: Option<u64>,
}

/// A parametrization by four forms of a common degree in `t1, t2, t3`
/// without common factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSurface {
    components: Vec<MPoly>,
    degree: u32,
    pub meta: SurfaceMeta,
}

/// Shared validation for tuples of forms in `t1, t2, t3`: returns the
/// common degree.
pub(crate) fn check_forms(components: &[MPoly], arity: usize) -> Result<u32> {
    if components.len() != arity {
        return Err(Error::DimensionMismatch {
            expected: arity,
            got: components.len(),
        });
    }
    let mut degree = None;
    for (i, p) in components.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if !p.vars().difference(VarSet::T).is_empty() {
            return Err(Error::Input(format!(
                "component {} uses variables outside t1, t2, t3",
                i + 1
            )));
        }
        if !p.is_homogeneous_in(VarSet::T) {
            return Err(Error::NotHomogeneous(format!("component {}: {p}", i + 1)));
        }
        let d = p.total_degree().expect_finite("non-zero component");
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::NotHomogeneous(format!(
                    "components of different degrees {e} and {d}"
                )))
            }
            _ => {}
        }
    }
    match degree {
        None => Err(Error::ZeroInput("all components are zero")),
        Some(0) => Err(Error::Precondition("components must have positive degree".into())),
        Some(d) => Ok(d),
    }
}

impl ParamSurface {
    pub fn new(components: Vec<MPoly>) -> Result<ParamSurface> {
        let degree = check_forms(&components, 4)?;
        let h = gcd_all(components.iter());
        if !h.is_one() {
            return Err(Error::CommonFactor(h.to_string()));
        }
        Ok(ParamSurface {
            components,
            degree,
            meta: SurfaceMeta::default(),
        })
    }

    pub fn parse(components: [&str; 4]) -> Result<ParamSurface> {
        ParamSurface::new(
            components
                .iter()
                .map(|s| crate::polycore::parse_poly(s, VarSet::T))
                .collect::<Result<_>>()?,
        )
    }

    pub fn with_meta(mut self, meta: SurfaceMeta) -> ParamSurface {
        self.meta = meta;
        self
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.components[i]
    }

    pub fn is_base_point(&self, a: &[BigRational; 3]) -> bool {
        self.components.iter().all(|p| p.eval_t(a).is_zero())
    }
}

impl ComponentMap for ParamSurface {
    const ARITY: usize = 4;

    fn components(&self) -> &[MPoly] {
        &self.components
    }

    fn with_components(&self, components: Vec<MPoly>) -> Self {
        ParamSurface {
            components,
            degree: self.degree,
            meta: self.meta,
        }
    }
}

/// Which auxiliary pair feeds the resultant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    /// `W1 = Σ x_i L_i(P)`, `W2 = Σ y_i L_i(P)`, content over `{x, y}`.
    W,
    /// `K1 = x4 L1(P) - x1 L4(P)`, `K2 = x4 L3(P) - x3 L4(P)`, content
    /// over `{x}`, for star `L`.
    K,
    /// Plane-map analogue of `W`: `V1 = Σ x_i L_i(S)`, `V2 = Σ y_i L_i(S)`.
    V,
    /// Plane-map analogue of `K`: `J1 = x3 L1(S) - x1 L3(S)`,
    /// `J2 = x3 L2(S) - x2 L3(S)`.
    J,
}

impl Path {
    /// The analogue of this path for plane maps.
    pub fn for_plane(self) -> Path {
        match self {
            Path::W | Path::V => Path::V,
            Path::K | Path::J => Path::J,
        }
    }

    /// The analogue of this path for surfaces.
    pub fn for_surface(self) -> Path {
        match self {
            Path::W | Path::V => Path::W,
            Path::K | Path::J => Path::K,
        }
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Path::W => "W",
            Path::K => "K",
            Path::V => "V",
            Path::J => "J",
        })
    }
}

fn x(i: usize) -> MPoly {
    MPoly::var(Var::x(i))
}

fn y(i: usize) -> MPoly {
    MPoly::var(Var::y(i))
}

/// `W1 = Σ x_i p_i` and `W2 = Σ y_i p_i`.
pub fn build_w(p: &ParamSurface) -> (MPoly, MPoly) {
    build_w_forms(p.components())
}

pub(crate) fn build_w_forms(forms: &[MPoly]) -> (MPoly, MPoly) {
    let w1 = forms
        .iter()
        .enumerate()
        .fold(MPoly::zero(), |acc, (i, p)| &acc + &(&x(i + 1) * p));
    let w2 = forms
        .iter()
        .enumerate()
        .fold(MPoly::zero(), |acc, (i, p)| &acc + &(&y(i + 1) * p));
    (w1, w2)
}

/// `K1 = x4 L1(P) - x1 L4(P)` and `K2 = x4 L3(P) - x3 L4(P)`.
pub fn build_k(p: &ParamSurface, l: &ProjTransform) -> Result<(MPoly, MPoly)> {
    if l.k() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: l.k() + 1,
        });
    }
    if !l.is_star() {
        return Err(Error::NotStar);
    }
    let lp = l.apply_forms(p.components())?;
    let k1 = &(&x(4) * &lp[0]) - &(&x(1) * &lp[3]);
    let k2 = &(&x(4) * &lp[2]) - &(&x(3) * &lp[3]);
    Ok((k1, k2))
}

/// The substitution taking `(W1, W2)` to `(K1, K2)`:
/// `(x1, x2, x3, x4, y1, y2, y3, y4) -> (x4, 0, 0, -x1, 0, 0, x4, -x3)`.
pub fn w_to_k_substitution() -> HashMap<Var, MPoly> {
    let mut s = HashMap::new();
    s.insert(Var::X1, x(4));
    s.insert(Var::X2, MPoly::zero());
    s.insert(Var::X3, MPoly::zero());
    s.insert(Var::X4, -x(1));
    s.insert(Var::Y1, MPoly::zero());
    s.insert(Var::Y2, MPoly::zero());
    s.insert(Var::Y3, x(4));
    s.insert(Var::Y4, -x(3));
    s
}

/// Recorded checks standing in for membership of `L` in the generic set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub checks: Vec<Check>,
}

impl GenericityCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub(crate) fn push(&mut self, name: &str, passed: bool, witness: impl Into<String>) {
        self.checks.push(Check::new(name, passed, witness));
    }
}

/// One candidate transform tried by the certification loop.
#[derive(Clone, Debug)]
pub struct Attempt {
    pub trial: usize,
    pub transform: ProjTransform,
    pub certificate: GenericityCertificate,
}

/// Resultant, its content split and the certificate for the transform that
/// produced it.
#[derive(Clone, Debug)]
pub struct ContentComputation {
    pub path: Path,
    pub transform: ProjTransform,
    pub resultant: MPoly,
    pub split: ContentSplit,
    pub certificate: GenericityCertificate,
    pub attempts: Vec<Attempt>,
}

impl ContentComputation {
    pub fn content_degree(&self) -> u32 {
        self.split.content.total_degree().expect_finite("content")
    }

    pub fn resultant_degree(&self) -> u32 {
        self.resultant.degree_in(VarSet::T).expect_finite("resultant")
    }

    pub fn primpart_degree(&self) -> u32 {
        self.split
            .primpart
            .degree_in(VarSet::T)
            .expect_finite("primitive part")
    }
}

/// Tuning for the certified computations.
#[derive(Clone, Debug)]
pub struct MultOptions {
    pub path: Path,
    /// Candidate transforms tried before giving up.
    pub trials: usize,
    pub seed: u64,
    /// Cross-check the K content degree against the W path.
    pub validate: bool,
    pub coeff_bound: i64,
    /// Parameter shift tried first during normalization.
    pub ell: Option<ProjTransform>,
    /// Fixed left transform instead of sampling.
    pub transform: Option<ProjTransform>,
}

impl Default for MultOptions {
    fn default() -> Self {
        MultOptions {
            path: Path::K,
            trials: 25,
            seed: 0,
            validate: false,
            coeff_bound: DEFAULT_COEFF_BOUND,
            ell: None,
            transform: None,
        }
    }
}

impl MultOptions {
    pub fn with_path(mut self, path: Path) -> Self {
        self.path = path;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validated(mut self) -> Self {
        self.validate = true;
        self
    }
}

fn leading_t3(f: &MPoly, n: u32) -> MPoly {
    f.coefficients_in(Var::T3)
        .get(n as usize)
        .cloned()
        .unwrap_or_else(MPoly::zero)
}

pub(crate) fn resultant_checks(
    cert: &mut GenericityCertificate,
    f1: &MPoly,
    f2: &MPoly,
    n: u32,
) -> Result<Option<MPoly>> {
    let lead1 = leading_t3(f1, n);
    let lead2 = leading_t3(f2, n);
    cert.push("leading t3-coefficient of first form non-zero", !lead1.is_zero(), lead1.to_string());
    cert.push("leading t3-coefficient of second form non-zero", !lead2.is_zero(), lead2.to_string());
    if lead1.is_zero() || lead2.is_zero() {
        return Ok(None);
    }
    let r = resultant(f1, f2, Var::T3)?;
    cert.push("resultant in t3 non-zero", !r.is_zero(), if r.is_zero() { "0" } else { "non-zero" });
    if r.is_zero() {
        return Ok(None);
    }
    let d = r.degree_in(VarSet::T);
    cert.push(
        "resultant t-degree equals deg^2",
        d == Degree::Finite(n * n),
        d.to_string(),
    );
    Ok(Some(r))
}

/// W-path content for a fixed left transform (any invertible `L`).
pub fn w_content(p_star: &ParamSurface, l: &ProjTransform) -> Result<ContentComputation> {
    if !satisfies_hypotheses(p_star.components()) {
        return Err(Error::Precondition(
            "parametrization must be normalized: components non-zero at (0:0:1)".into(),
        ));
    }
    let forms = l.apply_forms(p_star.components())?;
    let (w1, w2) = build_w_forms(&forms);
    let mut cert = GenericityCertificate::default();
    let r = resultant_checks(&mut cert, &w1, &w2, p_star.degree())?;
    let Some(r) = r.filter(|_| cert.passed()) else {
        return Err(Error::CertificationFailed {
            trials: 1,
            summary: cert.failures().join("; "),
        });
    };
    let split = content_split(&r, VarSet::XY)?;
    Ok(ContentComputation {
        path: Path::W,
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

fn k_attempt(
    p_star: &ParamSurface,
    l: &ProjTransform,
    w_degree: Option<u32>,
) -> Result<(GenericityCertificate, Option<(MPoly, ContentSplit)>)> {
    let mut cert = GenericityCertificate::default();
    let lp = l.apply_forms(p_star.components())?;
    let g14 = crate::polycore::gcd_multi(&lp[0], &lp[3]);
    let g34 = crate::polycore::gcd_multi(&lp[2], &lp[3]);
    cert.push("gcd(L1(P), L4(P)) = 1", g14.is_one(), g14.to_string());
    cert.push("gcd(L3(P), L4(P)) = 1", g34.is_one(), g34.to_string());
    let (k1, k2) = build_k(p_star, l)?;
    let r = resultant_checks(&mut cert, &k1, &k2, p_star.degree())?;
    let Some(r) = r.filter(|_| cert.passed()) else {
        return Ok((cert, None));
    };
    let split = content_split(&r, VarSet::X)?;
    if let Some(wd) = w_degree {
        let kd = split.content.total_degree().expect_finite("content");
        cert.push(
            "content degree agrees with W path",
            kd == wd,
            format!("K {kd}, W {wd}"),
        );
        if kd != wd {
            return Ok((cert, None));
        }
    }
    Ok((cert, Some((r, split))))
}

/// K-path content with a certified star transform, sampled deterministically
/// per seed unless `opts.transform` fixes it.
pub fn k_content(p_star: &ParamSurface, opts: &MultOptions) -> Result<ContentComputation> {
    if !satisfies_hypotheses(p_star.components()) {
        return Err(Error::Precondition(
            "parametrization must be normalized: components non-zero at (0:0:1)".into(),
        ));
    }
    let w_degree = if opts.validate {
        Some(w_content(p_star, &ProjTransform::identity(3))?.content_degree())
    } else {
        None
    };
    let candidates: Vec<ProjTransform> = match &opts.transform {
        Some(l) => vec![l.clone()],
        None => (0..opts.trials.max(1))
            .map(|t| sample_star_transform(3, trial_seed(opts.seed, t), opts.coeff_bound))
            .collect::<Result<_>>()?,
    };
    // A sampled L can make L1(P), L3(P), L4(P) share a zero that is not a
    // base point (e.g. when a component of p4 = 0 maps onto a line), which
    // inflates the content. Such L are special, so unless L is fixed by the
    // caller a second certified transform must give the same content degree.
    let cross_check = opts.transform.is_none();
    let mut attempts = Vec::new();
    let mut certified: Vec<(usize, u32)> = Vec::new();
    for (trial, l) in candidates.into_iter().enumerate() {
        let (mut cert, found) = k_attempt(p_star, &l, w_degree)?;
        let accepted = match found {
            Some((r, split)) if cross_check => {
                let kd = split.content.total_degree().expect_finite("content");
                let partner = certified.iter().find(|(_, d)| *d == kd).map(|(t, _)| *t);
                certified.push((trial, kd));
                match partner {
                    Some(t) => {
                        cert.push(
                            "content degree agrees with an independent transform",
                            true,
                            format!("trial {t}: {kd}"),
                        );
                        Some((r, split))
                    }
                    None => {
                        cert.push(
                            "content degree agrees with an independent transform",
                            false,
                            format!("no earlier transform gave {kd}"),
                        );
                        None
                    }
                }
            }
            other => other,
        };
        attempts.push(Attempt {
            trial,
            transform: l.clone(),
            certificate: cert.clone(),
        });
        if let Some((r, split)) = accepted {
            return Ok(ContentComputation {
                path: Path::K,
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

pub(crate) fn certification_failure(attempts: &[Attempt]) -> Error {
    let summary = attempts
        .iter()
        .map(|a| format!("trial {}: {}", a.trial, a.certificate.failures().join(", ")))
        .collect::<Vec<_>>()
        .join("; ");
    Error::CertificationFailed {
        trials: attempts.len(),
        summary,
    }
}

pub(crate) fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9).wrapping_add(trial as u64 + 1)
}

/// Content computation along the requested path on a normalized surface.
pub fn certified_content(p_star: &ParamSurface, opts: &MultOptions) -> Result<ContentComputation> {
    match opts.path.for_surface() {
        Path::W => {
            let l = opts
                .transform
                .clone()
                .unwrap_or_else(|| ProjTransform::identity(3));
            w_content(p_star, &l)
        }
        _ => k_content(p_star, opts),
    }
}

/// A rational base point with its data in the input coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePoint {
    /// Coprime integer coordinates.
    pub point: Vec<BigInt>,
    /// Share of the base-locus multiplicity carried by the point.
    pub multiplicity: u32,
    /// Minimum order of vanishing of the components at the point.
    pub curve_multiplicity: u32,
    pub tangent_cone: TangentCone,
}

impl BasePoint {
    pub fn coords(&self) -> [BigRational; 3] {
        std::array::from_fn(|i| BigRational::from_integer(self.point[i].clone()))
    }
}

/// Outcome of splitting the content into points.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Attribution {
    /// Points in the normalized coordinates with multiplicities.
    pub points: Vec<([BigRational; 3], u32)>,
    /// Rational line factors whose points could not be isolated.
    pub unresolved: Vec<(LinePoint, u32)>,
    pub residual_degree: u32,
}

/// Matches each rational line factor `(b t1 - a t2)^m` of the content with
/// the single base point on that line through `(0:0:1)`.
pub(crate) fn attribute(components: &[MPoly], content: &MPoly) -> Result<Attribution> {
    let lf = homogeneous_linear_factors(content)?;
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    for (line, m) in lf.factors {
        let mut sigma = HashMap::new();
        let a = MPoly::constant(BigRational::from_integer(line.a.clone()));
        let b = MPoly::constant(BigRational::from_integer(line.b.clone()));
        sigma.insert(Var::T1, &a * &MPoly::var(Var::T1));
        sigma.insert(Var::T2, &b * &MPoly::var(Var::T1));
        let restricted: Vec<MPoly> = components.iter().map(|p| p.substitute(&sigma)).collect();
        let g = gcd_all(restricted.iter());
        let mut rename = HashMap::new();
        rename.insert(Var::T3, MPoly::var(Var::T2));
        let g = g.substitute(&rename);
        let roots = if g.is_constant() {
            None
        } else {
            homogeneous_linear_factors(&g).ok()
        };
        match roots {
            Some(r) if r.factors.len() == 1 && r.residual.is_one() => {
                let (root, _) = &r.factors[0];
                let alpha = BigRational::from_integer(root.a.clone());
                let beta = BigRational::from_integer(root.b.clone());
                let pt = [
                    BigRational::from_integer(line.a.clone()) * &alpha,
                    BigRational::from_integer(line.b.clone()) * &alpha,
                    beta,
                ];
                points.push((pt, m));
            }
            _ => unresolved.push((line, m)),
        }
    }
    Ok(Attribution {
        points,
        unresolved,
        residual_degree: lf.residual.total_degree().expect_finite("residual"),
    })
}

/// Lowest-order data of the components at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCone {
    /// Coordinate change used to move the point to `(0:0:1)`; its last
    /// column is the point.
    pub chart: ProjTransform,
    /// Order of vanishing of each component (`None` for a zero component).
    pub orders: Vec<Option<u32>>,
    /// Minimum order.
    pub order: u32,
    /// Which components attain the minimum.
    pub attains_min: Vec<bool>,
    /// `Σ ε_i x_i T_i`, a form of degree `order` in `t1, t2` with linear
    /// coefficients in `x`.
    pub cone: MPoly,
}

/// Invertible matrix with the point as last column, completed by unit
/// vectors.
fn chart_for(a: &[BigRational; 3]) -> Result<ProjTransform> {
    let r = a
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Input("(0:0:0) is not a point".into()))?;
    let others: Vec<usize> = (0..3).filter(|&i| i != r).collect();
    let mut rows = vec![vec![q(0); 3]; 3];
    rows[others[0]][0] = q(1);
    rows[others[1]][1] = q(1);
    for i in 0..3 {
        rows[i][2] = a[i].clone();
    }
    ProjTransform::from_rows(rows)
}

pub(crate) fn local_forms(components: &[MPoly], a: &[BigRational; 3]) -> Result<(ProjTransform, Vec<MPoly>)> {
    let chart = chart_for(a)?;
    let sigma = chart.t_substitution();
    let locals = components
        .iter()
        .map(|p| p.substitute(&sigma).eval_partial(&[(Var::T3, q(1))]))
        .collect();
    Ok((chart, locals))
}

/// Tangent-cone data of the components at the base point `a`.
pub fn tangent_cone_of(components: &[MPoly], a: &[BigRational; 3]) -> Result<TangentCone> {
    if !components.iter().all(|p| p.eval_t(a).is_zero()) {
        return Err(Error::NotBasePoint(format!(
            "({} : {} : {})",
            a[0], a[1], a[2]
        )));
    }
    let (chart, locals) = local_forms(components, a)?;
    let orders: Vec<Option<u32>> = locals
        .iter()
        .map(|f| f.min_degree_in(VarSet::T12).finite())
        .collect();
    let order = orders
        .iter()
        .flatten()
        .copied()
        .min()
        .ok_or(Error::ZeroInput("all components are zero"))?;
    let attains_min: Vec<bool> = orders.iter().map(|o| *o == Some(order)).collect();
    let cone = locals
        .iter()
        .enumerate()
        .filter(|(i, _)| attains_min[*i])
        .fold(MPoly::zero(), |acc, (i, f)| {
            &acc + &(&x(i + 1) * &f.homogeneous_part(VarSet::T12, order))
        });
    Ok(TangentCone {
        chart,
        orders,
        order,
        attains_min,
        cone,
    })
}

/// Minimum over all four components of the order of vanishing at `a`.
pub fn point_curve_multiplicity(p: &ParamSurface, a: &[BigRational; 3]) -> Result<u32> {
    Ok(tangent_cone_of(p.components(), a)?.order)
}

pub fn tangent_cone(p: &ParamSurface, a: &[BigRational; 3]) -> Result<TangentCone> {
    tangent_cone_of(p.components(), a)
}

/// Everything computed about the base locus of one parametrization.
#[derive(Clone, Debug)]
pub struct BaseLocusReport {
    pub degree: u32,
    pub mult_total: u32,
    /// Normalized content in the normalized parameter coordinates.
    pub content: MPoly,
    pub resultant_degree: u32,
    pub primpart_degree: u32,
    pub rational_points: Vec<BasePoint>,
    /// Content degree not carried by isolated rational points.
    pub residual_degree: u32,
    pub path: Path,
    pub transform: ProjTransform,
    pub ell: ProjTransform,
    pub left: ProjTransform,
    pub genericity: GenericityCertificate,
    pub hypotheses: crate::transform::HypothesisCertificate,
    pub attempts: Vec<Attempt>,
    pub seed: u64,
}

impl BaseLocusReport {
    pub fn degree_split_holds(&self) -> bool {
        self.mult_total + self.primpart_degree == self.degree * self.degree
            && self.resultant_degree == self.degree * self.degree
    }

    pub fn attributed_total(&self) -> u32 {
        self.rational_points.iter().map(|b| b.multiplicity).sum::<u32>() + self.residual_degree
    }
}

pub(crate) fn normalized_for_attempt<M: ComponentMap>(
    map: &M,
    opts: &MultOptions,
    attempt: usize,
) -> Result<Normalized<M>> {
    if attempt == 0 {
        normalize_with(map, opts.seed, opts.coeff_bound, opts.ell.as_ref())
    } else {
        // a fresh non-trivial shift to separate base points sharing a line
        // through (0:0:1)
        let mut last = None;
        for k in 0..crate::transform::NORMALIZATION_TRIES as u64 {
            let ell = sample_star_transform(
                2,
                trial_seed(opts.seed ^ 0x5EED, attempt * 131 + k as usize),
                opts.coeff_bound,
            )?;
            let n = normalize_with(map, opts.seed, opts.coeff_bound, Some(&ell))?;
            if n.ell == ell {
                return Ok(n);
            }
            last = Some(n);
        }
        last.ok_or(Error::NormalizationFailed(0))
    }
}

/// Multiplicity of the base locus with per-point attribution. The surface is
/// normalized first; if two base points share a line through `(0:0:1)` a new
/// shift is drawn.
pub fn mult_base_locus(p: &ParamSurface, opts: &MultOptions) -> Result<BaseLocusReport> {
    let rounds = opts.trials.max(1);
    let mut best: Option<(Normalized<ParamSurface>, ContentComputation, Attribution)> = None;
    for round in 0..rounds {
        let normalized = normalized_for_attempt(p, opts, round)?;
        let comp = certified_content(&normalized.map, opts)?;
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
        let original = normalized.ell.apply_point(pt);
        let ints = primitive_point(&original);
        let coords: [BigRational; 3] =
            std::array::from_fn(|i| BigRational::from_integer(ints[i].clone()));
        let cone = tangent_cone(p, &coords)?;
        rational_points.push(BasePoint {
            point: ints,
            multiplicity: *m,
            curve_multiplicity: cone.order,
            tangent_cone: cone,
        });
    }
    rational_points.sort_by(|a, b| a.point.cmp(&b.point));
    let unresolved: u32 = attribution.unresolved.iter().map(|(_, m)| m).sum();
    Ok(BaseLocusReport {
        degree: p.degree(),
        mult_total: comp.content_degree(),
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

/// Multiplicity only, skipping attribution.
pub fn mult(p: &ParamSurface, opts: &MultOptions) -> Result<u32> {
    let normalized = normalized_for_attempt(p, opts, 0)?;
    Ok(certified_content(&normalized.map, opts)?.content_degree())
}

/// W-path multiplicity after an extra random left transform, drawn from the
/// full projective group.
pub fn mult_w_random_left(p: &ParamSurface, seed: u64, opts: &MultOptions) -> Result<u32> {
    let normalized = normalized_for_attempt(p, opts, 0)?;
    let l = sample_transform(3, seed, opts.coeff_bound)?;
    Ok(w_content(&normalized.map, &l)?.content_degree())
}

/// Where a number in a degree report comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Given,
    Computed,
    Derived,
}

/// The degree formula `mult = deg^2 - deg(surface) * degMap` and its
/// corollaries.
#[derive(Clone, Debug)]
pub struct DegreeFormulaReport {
    pub degree: u32,
    pub mult: u32,
    /// `deg^2 - mult`, equal to the t-degree of the primitive part.
    pub primpart_degree: u32,
    pub degmap: Option<(u64, Provenance)>,
    pub surface_degree: Option<(u64, Provenance)>,
    /// The formula with both factors known.
    pub formula_holds: Option<bool>,
    /// `deg(P)^2 >= deg(surface) * degMap >= deg(surface)`.
    pub degree_bound_holds: Option<bool>,
    /// For birational parametrizations: `deg^2 - mult = deg(surface)`.
    pub birational_identity: Option<bool>,
    /// Surface degree is not a perfect square, so a birational
    /// parametrization must have base points.
    pub base_points_forced: Option<bool>,
    pub base: BaseLocusReport,
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

pub fn degree_formula_report(
    p: &ParamSurface,
    known: SurfaceMeta,
    opts: &MultOptions,
) -> Result<DegreeFormulaReport> {
    let base = mult_base_locus(p, opts)?;
    let n = base.degree as u64;
    let mult = base.mult_total as u64;
    let d = n * n - mult;
    if d == 0 {
        return Err(Error::NonPositiveDegMap(0));
    }
    let meta = SurfaceMeta {
        degmap: known.degmap.or(p.meta.degmap),
        surface_degree: known.surface_degree.or(p.meta.surface_degree),
    };
    let (degmap, surface_degree) = match (meta.degmap, meta.surface_degree) {
        (Some(m), Some(s)) => (Some((m, Provenance::Given)), Some((s, Provenance::Given))),
        (Some(m), None) => {
            if m == 0 || d % m != 0 {
                return Err(Error::InexactDivision(format!(
                    "deg^2 - mult = {d} is not divisible by degMap = {m}"
                )));
            }
            (Some((m, Provenance::Given)), Some((d / m, Provenance::Derived)))
        }
        (None, Some(s)) => {
            if s == 0 || d % s != 0 {
                return Err(Error::InexactDivision(format!(
                    "deg^2 - mult = {d} is not divisible by the surface degree {s}"
                )));
            }
            (Some((d / s, Provenance::Derived)), Some((s, Provenance::Given)))
        }
        (None, None) => (None, None),
    };
    let both = degmap.zip(surface_degree).map(|((m, _), (s, _))| (m, s));
    Ok(DegreeFormulaReport {
        degree: base.degree,
        mult: base.mult_total,
        primpart_degree: base.primpart_degree,
        degmap,
        surface_degree,
        formula_holds: both.map(|(m, s)| mult + s * m == n * n),
        degree_bound_holds: both.map(|(m, s)| n * n >= s * m && s * m >= s),
        birational_identity: both.filter(|(m, _)| *m == 1).map(|(_, s)| n * n - mult == s),
        base_points_forced: both
            .filter(|(m, _)| *m == 1)
            .map(|(_, s)| !is_square(s)),
        base,
    })
}
