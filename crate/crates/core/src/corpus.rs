//! Named fixtures, the `.poly` input format and seeded random generators
//! for parametrizations and plane maps.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselocus::{ParamSurface, SurfaceMeta};
use crate::error::{Error, Result};
use crate::planemaps::PlaneMap;
use crate::polycore::{gcd_all, parse, parse_poly, MPoly, Monomial, Var, VarSet};
use crate::transform::{apply_left, apply_param, sample_transform, ComponentMap, ProjTransform};

/// The degree-3 surface with a single base point of multiplicity 4.
pub const COX: [&str; 4] = ["t2^2*t3 + t1^3", "t1^2*t3 + t2^3", "t1*t2*t3", "t2^2*t3"];

/// Cubic parametrization with base-locus multiplicity 3.
pub const CUBIC: [&str; 4] = [
    "t1^3 - t1*t2*t3 - t3^3",
    "t2*t3^2 - t1^3 - 5*t3^3",
    "t1^3 - t2^2*t3 - t1^2*t3 + 4*t3^3",
    "t1^3 - t2*t3^2 - t3^3",
];

/// A 2:1 parametrization of the quadric `u1 u2 = u4^2` without base points.
pub const QUADRIC_PARAM: [&str; 4] = ["t1^2", "t2^2", "t3^2", "t1*t2"];

/// Implicit equation of the image of `QUADRIC_PARAM`.
pub const QUADRIC: &str = "u1*u2 - u4^2";

pub fn cox() -> ParamSurface {
    ParamSurface::parse(COX).expect("fixture")
}

/// Shift moving the base point of `cox` off the coordinate lines; with it
/// the content becomes `(t1 - t2)^4`.
pub fn cox_shift() -> ProjTransform {
    ProjTransform::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]).expect("invertible")
}

pub fn cubic() -> ParamSurface {
    ParamSurface::parse(CUBIC).expect("fixture")
}

pub fn quadric_param() -> ParamSurface {
    ParamSurface::parse(QUADRIC_PARAM).expect("fixture")
}

pub fn quadric() -> MPoly {
    parse(QUADRIC).expect("fixture")
}

/// Contents of a `.poly` file.
#[derive(Clone, Debug, PartialEq)]
pub enum MapInput {
    Surface(ParamSurface),
    Plane(PlaneMap),
}

fn parse_list(text: &str, line: usize) -> Result<Vec<MPoly>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Input(format!("line {line}: expected [poly, ...]")))?;
    inner
        .split(',')
        .map(|s| {
            parse_poly(s.trim(), VarSet::T)
                .map_err(|e| Error::Input(format!("line {line}: {e}")))
        })
        .collect()
}

fn parse_count(text: &str, line: usize) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Input(format!("line {line}: expected a non-negative integer")))
}

/// Parses `P = [p1, p2, p3, p4]` or `S = [s1, s2, s3]`, with optional
/// `degmap = N` and `surfdeg = M` lines for surfaces. `#` starts a comment.
pub fn parse_map_input(text: &str) -> Result<MapInput> {
    let mut map: Option<(char, Vec<MPoly>)> = None;
    let mut meta = SurfaceMeta::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("line {}: expected key = value", i + 1)))?;
        match key.trim() {
            k @ ("P" | "S") => {
                if map.is_some() {
                    return Err(Error::Input(format!("line {}: second map", i + 1)));
                }
                map = Some((k.chars().next().unwrap_or('P'), parse_list(value, i + 1)?));
            }
            "degmap" => meta.degmap = Some(parse_count(value, i + 1)?),
            "surfdeg" => meta.surface_degree = Some(parse_count(value, i + 1)?),
            other => {
                return Err(Error::Input(format!("line {}: unknown key {other}", i + 1)));
            }
        }
    }
    match map {
        Some(('P', comps)) => {
            if comps.len() != 4 {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    got: comps.len(),
                });
            }
            Ok(MapInput::Surface(ParamSurface::new(comps)?.with_meta(meta)))
        }
        Some((_, comps)) => {
            if comps.len() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    got: comps.len(),
                });
            }
            Ok(MapInput::Plane(PlaneMap::new(comps)?))
        }
        None => Err(Error::Input("no map found (expected P = [...] or S = [...])".into())),
    }
}

/// A random form of the given degree whose order at `(0:0:1)` is at least
/// `order`; each monomial is kept with probability one half.
pub fn random_form(rng: &mut ChaCha8Rng, degree: u32, order: u32, bound: i64) -> MPoly {
    let mut terms = Vec::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            if a + b < order || !rng.gen_bool(0.5) {
                continue;
            }
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                let m = Monomial::from_exponents(&[
                    (Var::T1, a),
                    (Var::T2, b),
                    (Var::T3, degree - a - b),
                ]);
                terms.push((m, BigRational::from_integer(c.into())));
            }
        }
    }
    MPoly::from_terms(terms)
}

fn random_components(
    rng: &mut ChaCha8Rng,
    n: usize,
    degree: u32,
    order: u32,
    bound: i64,
) -> Option<Vec<MPoly>> {
    let comps: Vec<MPoly> = (0..n).map(|_| random_form(rng, degree, order, bound)).collect();
    if comps.iter().any(MPoly::is_zero) || !gcd_all(comps.iter()).is_one() {
        return None;
    }
    Some(comps)
}

/// Attempts per generated instance.
const GENERATOR_TRIES: usize = 200;

/// A random parametrization of degree `1..=max_degree`. About half of them
/// get a rational base point of random order, moved off `(0:0:1)` by a
/// random coordinate change.
pub fn random_surface(seed: u64, max_degree: u32) -> Result<ParamSurface> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_TRIES {
        let degree = rng.gen_range(1..=max_degree.max(1));
        let order = if degree > 1 && rng.gen_bool(0.5) {
            rng.gen_range(1..degree)
        } else {
            0
        };
        let Some(comps) = random_components(&mut rng, 4, degree, order, 5) else {
            continue;
        };
        let Ok(p) = ParamSurface::new(comps) else {
            continue;
        };
        let ell = sample_transform(2, rng.gen(), 3)?;
        return apply_param(&ell, &p);
    }
    Err(Error::SamplerExhausted(GENERATOR_TRIES))
}

/// Families of plane maps produced by `random_plane_map`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneFamily {
    Dense,
    WithBasePoint,
    Linear,
    QuadraticCremona,
    CubicCremona,
}

/// A random dominant map of degree at most 3, cycling through the families
/// by seed so that birational maps are well represented.
pub fn random_plane_map(seed: u64) -> Result<(PlaneFamily, PlaneMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = match seed % 5 {
        0 => PlaneFamily::Dense,
        1 => PlaneFamily::WithBasePoint,
        2 => PlaneFamily::Linear,
        3 => PlaneFamily::QuadraticCremona,
        _ => PlaneFamily::CubicCremona,
    };
    for _ in 0..GENERATOR_TRIES {
        let ell = sample_transform(2, rng.gen(), 3)?;
        let left = sample_transform(2, rng.gen(), 3)?;
        let candidate = match family {
            PlaneFamily::Dense => {
                let d = rng.gen_range(2..=3);
                random_components(&mut rng, 3, d, 0, 5).map(PlaneMap::new)
            }
            PlaneFamily::WithBasePoint => {
                let d = rng.gen_range(2..=3);
                let o = rng.gen_range(1..d);
                random_components(&mut rng, 3, d, o, 5).map(PlaneMap::new)
            }
            PlaneFamily::Linear => Some(PlaneMap::linear(&ell)),
            PlaneFamily::QuadraticCremona => Some(Ok(PlaneMap::cremona())),
            PlaneFamily::CubicCremona => Some(cubic_cremona(&mut rng)),
        };
        let Some(Ok(map)) = candidate else {
            continue;
        };
        let moved = apply_left(&left, &apply_param(&ell, &map)?)?;
        if let Ok(m) = PlaneMap::new(moved.components().to_vec()) {
            return Ok((family, m));
        }
    }
    Err(Error::SamplerExhausted(GENERATOR_TRIES))
}

/// `C ∘ L ∘ C` with `C` the standard quadratic involution and `L` fixing
/// `(1:0:0)`, which has degree 3 after removing the common factor.
fn cubic_cremona(rng: &mut ChaCha8Rng) -> Result<PlaneMap> {
    let mut e = || rng.gen_range(-3i64..=3);
    let rows = [[1, e(), e()], [0, e(), e()], [0, e(), e()]];
    let l = ProjTransform::from_ints(&[&rows[0], &rows[1], &rows[2]])?;
    let raw = raw_composition(&PlaneMap::cremona(), &l)?;
    let h = gcd_all(raw.iter());
    let comps: Vec<MPoly> = raw
        .iter()
        .map(|f| f.div_exact(&h).expect("gcd divides"))
        .collect();
    if comps[0].total_degree().finite() != Some(3) {
        return Err(Error::Precondition("degenerate cubic".into()));
    }
    PlaneMap::new(comps)
}

/// Components of `C ∘ L ∘ C` before removing their gcd.
fn raw_composition(c: &PlaneMap, l: &ProjTransform) -> Result<Vec<MPoly>> {
    let lc = PlaneMap::new(l.apply_forms(c.components())?)?;
    Ok(lc.pull_back(c.components()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_files() {
        let text = "# Cox surface\nP = [t2^2*t3 + t1^3, t1^2*t3 + t2^3, t1*t2*t3, t2^2*t3]\ndegmap = 1\n";
        match parse_map_input(text).unwrap() {
            MapInput::Surface(p) => {
                assert_eq!(p, cox().with_meta(SurfaceMeta { degmap: Some(1), surface_degree: None }));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_map_input("S = [t2*t3, t1*t3, t1*t2]").unwrap(),
            MapInput::Plane(PlaneMap::cremona())
        );
        assert!(parse_map_input("S = [t1, t2]").is_err());
        assert!(parse_map_input("Q = [t1]").is_err());
        assert!(parse_map_input("P = [t1, t2, t3, x1]").is_err());
        assert!(parse_map_input("").is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        for seed in 0..10 {
            assert_eq!(random_surface(seed, 3).unwrap(), random_surface(seed, 3).unwrap());
            let (fam, s) = random_plane_map(seed).unwrap();
            assert!(s.degree() <= 3);
            if fam == PlaneFamily::CubicCremona {
                assert_eq!(s.degree(), 3);
            }
        }
    }
}
