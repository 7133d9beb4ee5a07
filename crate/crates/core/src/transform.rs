//! Projective transformations of P² and P³, the subgroup fixing the last
//! coordinate form, seeded sampling, and normalization of parametrizations
//! and plane maps to the standing hypotheses.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polycore::{gcd_all, q, MPoly, Var};

/// Default bound on sampled integer entries.
pub const DEFAULT_COEFF_BOUND: i64 = 10;
/// Attempts before the sampler gives up on finding an invertible matrix.
pub const SAMPLER_ATTEMPTS: usize = 1000;
/// Shifts tried by `normalize_hypotheses`.
pub const NORMALIZATION_TRIES: usize = 50;

/// An invertible `(k+1) x (k+1)` rational matrix acting on P^k.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjTransform {
    rows: Vec<Vec<BigRational>>,
}

impl ProjTransform {
    pub fn identity(k: usize) -> ProjTransform {
        let n = k + 1;
        ProjTransform {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
                .collect(),
        }
    }

    /// Builds a transform from its rows, rejecting singular or non-square
    /// input and sizes other than 3 and 4.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<ProjTransform> {
        let n = rows.len();
        if !(n == 3 || n == 4) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: n,
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        let t = ProjTransform { rows };
        if t.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(t)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<ProjTransform> {
        ProjTransform::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// The permutation matrix sending coordinate `perm[i]` to slot `i`.
    pub fn permutation(perm: &[usize]) -> Result<ProjTransform> {
        let n = perm.len();
        ProjTransform::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| if perm[i] == j { q(1) } else { q(0) }).collect())
                .collect(),
        )
    }

    /// Projective dimension `k`.
    pub fn k(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    /// Membership in the subgroup whose last row is `(0, ..., 0, 1)`.
    pub fn is_star(&self) -> bool {
        let last = self.rows.last().expect("non-empty");
        let n = last.len();
        last[..n - 1].iter().all(Zero::is_zero) && last[n - 1].is_one()
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjTransform::identity(self.k())
    }

    pub fn det(&self) -> BigRational {
        let mut m = self.rows.clone();
        let n = m.len();
        let mut det = q(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return q(0);
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &m[c][c];
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[r][j] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> ProjTransform {
        let n = self.rows.len();
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .expect("invertible by construction");
            a.swap(p, c);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let delta = &f * &a[c][j];
                    a[r][j] -= delta;
                }
            }
        }
        ProjTransform {
            rows: a.into_iter().map(|r| r[n..].to_vec()).collect(),
        }
    }

    /// Matrix product `self * other`, i.e. the map `self ∘ other`.
    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        assert_eq!(self.k(), other.k(), "dimension mismatch");
        let n = self.rows.len();
        ProjTransform {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(q(0), |acc, l| acc + &self.rows[i][l] * &other.rows[l][j])
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Image of a point given by homogeneous coordinates.
    pub fn apply_point(&self, p: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(p).fold(q(0), |acc, (a, x)| acc + a * x))
            .collect()
    }

    /// The forms `L_i(f_1, ..., f_n) = Σ_j a_ij f_j`.
    pub fn apply_forms(&self, forms: &[MPoly]) -> Result<Vec<MPoly>> {
        if forms.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                got: forms.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(forms)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(MPoly::zero(), |acc, (a, f)| &acc + &f.scale(a))
            })
            .collect())
    }

    /// Substitution `t_i -> Σ_j a_ij t_j` for a transform of P².
    pub fn t_substitution(&self) -> HashMap<Var, MPoly> {
        assert_eq!(self.k(), 2, "parameter transforms act on P²");
        let ts: Vec<MPoly> = (1..=3).map(|i| MPoly::var(Var::t(i))).collect();
        let images = self.apply_forms(&ts).expect("three forms");
        (1..=3).map(Var::t).zip(images).collect()
    }
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn sample_matrix(k: usize, rng: &mut ChaCha8Rng, bound: i64, star: bool) -> Result<ProjTransform> {
    let n = k + 1;
    for _ in 0..SAMPLER_ATTEMPTS {
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if star {
            rows[k] = (0..n).map(|j| if j == k { q(1) } else { q(0) }).collect();
        }
        if let Ok(t) = ProjTransform::from_rows(rows) {
            return Ok(t);
        }
    }
    Err(Error::SamplerExhausted(SAMPLER_ATTEMPTS))
}

/// A random star transform of P^k with entries uniform in `[-bound, bound]`,
/// deterministic per seed.
pub fn sample_star_transform(k: usize, seed: u64, bound: i64) -> Result<ProjTransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_matrix(k, &mut rng, bound.max(1), true)
}

/// A random invertible transform of P^k, not necessarily star.
pub fn sample_transform(k: usize, seed: u64, bound: i64) -> Result<ProjTransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_matrix(k, &mut rng, bound.max(1), false)
}

/// Tuple of homogeneous forms in `t1, t2, t3` that can be transformed on
/// either side.
pub trait ComponentMap: Sized + Clone {
    /// Number of components.
    const ARITY: usize;

    fn components(&self) -> &[MPoly];

    /// Rebuilds the map from transformed components, which keep the
    /// invariants of the original.
    fn with_components(&self, components: Vec<MPoly>) -> Self;
}

/// `M(ℓ(t̄))`: substitutes the parameter transform into every component.
pub fn apply_param<M: ComponentMap>(ell: &ProjTransform, map: &M) -> Result<M> {
    if ell.k() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: ell.k() + 1,
        });
    }
    let sigma = ell.t_substitution();
    Ok(map.with_components(map.components().iter().map(|p| p.substitute(&sigma)).collect()))
}

/// `L(M)`: the components `L_i(m_1, ..., m_n)`.
pub fn apply_left<M: ComponentMap>(l: &ProjTransform, map: &M) -> Result<M> {
    if l.k() + 1 != M::ARITY {
        return Err(Error::DimensionMismatch {
            expected: M::ARITY,
            got: l.k() + 1,
        });
    }
    Ok(map.with_components(l.apply_forms(map.components())?))
}

/// One named check of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            witness: witness.into(),
        }
    }
}

/// Record of the checks made while normalizing a map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypothesisCertificate {
    pub checks: Vec<Check>,
}

impl HypothesisCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Output of `normalize_hypotheses`: the map `L(M(ℓ(t̄)))`.
#[derive(Clone, Debug)]
pub struct Normalized<M> {
    pub map: M,
    /// Parameter transform; base points of `map` correspond to base points
    /// of the input via `A = ℓ(A*)`.
    pub ell: ProjTransform,
    /// Left transform applied to the components (permutation and slot
    /// fill-ins); it leaves base points unchanged.
    pub left: ProjTransform,
    pub certificate: HypothesisCertificate,
}

fn origin_values(components: &[MPoly]) -> Vec<BigRational> {
    let origin = [q(0), q(0), q(1)];
    components.iter().map(|p| p.eval_t(&origin)).collect()
}

fn hypothesis_checks(components: &[MPoly]) -> Vec<Check> {
    let n = components.len();
    let mut checks = vec![Check::new(
        format!("component {n} is non-zero"),
        !components[n - 1].is_zero(),
        components[n - 1].to_string(),
    )];
    for (i, v) in origin_values(components).iter().enumerate() {
        checks.push(Check::new(
            format!("component {} non-zero at (0:0:1)", i + 1),
            !v.is_zero(),
            v.to_string(),
        ));
    }
    checks
}

/// True when every component is non-zero at `(0:0:1)` and the last
/// component is non-zero.
pub fn satisfies_hypotheses(components: &[MPoly]) -> bool {
    hypothesis_checks(components).iter().all(|c| c.passed)
}

/// Brings a map to the standing hypotheses: last component non-zero (by a
/// permutation), no zero component (by adding the last one), and every
/// component non-zero at `(0:0:1)` (by a sampled star shift ℓ, identity if
/// the input already passes).
pub fn normalize_hypotheses<M: ComponentMap>(
    map: &M,
    seed: u64,
    bound: i64,
) -> Result<Normalized<M>> {
    normalize_with(map, seed, bound, None)
}

/// As `normalize_hypotheses`, trying the supplied shift first.
pub fn normalize_with<M: ComponentMap>(
    map: &M,
    seed: u64,
    bound: i64,
    preferred: Option<&ProjTransform>,
) -> Result<Normalized<M>> {
    let comps = map.components();
    let n = M::ARITY;
    if comps.iter().all(MPoly::is_zero) {
        return Err(Error::ZeroInput("all components are zero"));
    }
    let h = gcd_all(comps.iter());
    if !h.is_one() {
        return Err(Error::CommonFactor(h.to_string()));
    }
    let mut certificate = HypothesisCertificate::default();
    let mut left = ProjTransform::identity(n - 1);

    if comps[n - 1].is_zero() {
        let j = (0..n).rev().find(|&i| !comps[i].is_zero()).expect("some non-zero");
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(j, n - 1);
        left = ProjTransform::permutation(&perm)?;
        certificate.checks.push(Check::new(
            format!("swap components {} and {n}", j + 1),
            true,
            "last component was zero",
        ));
    }
    let permuted = left.apply_forms(comps)?;
    let zero_slots: Vec<usize> = (0..n).filter(|&i| permuted[i].is_zero()).collect();
    if !zero_slots.is_empty() {
        let mut rows = ProjTransform::identity(n - 1).rows().to_vec();
        for &i in &zero_slots {
            rows[i][n - 1] = q(1);
            certificate.checks.push(Check::new(
                format!("add component {n} to zero component {}", i + 1),
                true,
                "zero component",
            ));
        }
        left = ProjTransform::from_rows(rows)?.compose(&left);
    }
    let base = map.with_components(left.apply_forms(comps)?);

    let mut candidates: Vec<ProjTransform> = Vec::new();
    if let Some(p) = preferred {
        candidates.push(p.clone());
    }
    candidates.push(ProjTransform::identity(2));
    for attempt in 0..NORMALIZATION_TRIES {
        candidates.push(sample_star_transform(
            2,
            seed.wrapping_mul(1_000_003).wrapping_add(attempt as u64),
            bound,
        )?);
    }
    for ell in candidates {
        let shifted = apply_param(&ell, &base)?;
        let checks = hypothesis_checks(shifted.components());
        if checks.iter().all(|c| c.passed) {
            certificate.checks.push(Check::new(
                "parameter shift",
                true,
                if ell.is_identity() {
                    "identity".to_string()
                } else {
                    ell.to_string()
                },
            ));
            certificate.checks.extend(checks);
            return Ok(Normalized {
                map: shifted,
                ell,
                left,
                certificate,
            });
        }
    }
    Err(Error::NormalizationFailed(NORMALIZATION_TRIES))
}

/// Integer view of a point, scaled to coprime integer coordinates with the
/// first non-zero entry positive.
pub fn primitive_point(p: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: Vec<BigInt> = if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    };
    if out
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x < &BigInt::zero())
    {
        for x in out.iter_mut() {
            *x = -x.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse;

    #[derive(Clone, Debug, PartialEq)]
    struct Tuple(Vec<MPoly>);

    impl ComponentMap for Tuple {
        const ARITY: usize = 4;
        fn components(&self) -> &[MPoly] {
            &self.0
        }
        fn with_components(&self, c: Vec<MPoly>) -> Self {
            Tuple(c)
        }
    }

    fn tuple(s: [&str; 4]) -> Tuple {
        Tuple(s.iter().map(|x| parse(x).unwrap()).collect())
    }

    #[test]
    fn star_sampling() {
        let t = sample_star_transform(3, 7, DEFAULT_COEFF_BOUND).unwrap();
        assert!(t.is_star());
        assert_eq!(t.rows()[3], vec![q(0), q(0), q(0), q(1)]);
        assert!(ProjTransform::identity(3).is_star());
        let distinct: std::collections::HashSet<_> = (0..10)
            .map(|s| sample_star_transform(3, s, DEFAULT_COEFF_BOUND).unwrap())
            .collect();
        assert!(distinct.len() >= 9);
        assert_eq!(
            sample_star_transform(2, 3, 10).unwrap(),
            sample_star_transform(2, 3, 10).unwrap()
        );
    }

    #[test]
    fn inverse_and_compose() {
        let t = ProjTransform::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        assert!(t.compose(&t.inverse()).is_identity());
        assert_eq!(
            ProjTransform::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn shift_and_back() {
        let p = tuple(["t2^2*t3 + t1^3", "t1^2*t3 + t2^3", "t1*t2*t3", "t2^2*t3"]);
        let ell = ProjTransform::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        let shifted = apply_param(&ell, &p).unwrap();
        assert_eq!(shifted.0[3], parse("(t2 + t3)^2*t3").unwrap());
        assert_eq!(apply_param(&ell.inverse(), &shifted).unwrap(), p);
        assert_eq!(apply_param(&ProjTransform::identity(2), &p).unwrap(), p);
    }

    #[test]
    fn left_permutation_swaps() {
        let p = tuple(["t1", "t2", "t3", "t1 + t2"]);
        let swap = ProjTransform::permutation(&[1, 0, 2, 3]).unwrap();
        let out = apply_left(&swap, &p).unwrap();
        assert_eq!(out.0[0], parse("t2").unwrap());
        assert_eq!(out.0[1], parse("t1").unwrap());
        assert!(apply_left(&ProjTransform::identity(2), &p).is_err());
    }

    #[test]
    fn normalization_of_cox_example() {
        let p = tuple(["t2^2*t3 + t1^3", "t1^2*t3 + t2^3", "t1*t2*t3", "t2^2*t3"]);
        let n = normalize_hypotheses(&p, 0, DEFAULT_COEFF_BOUND).unwrap();
        assert!(!n.ell.is_identity());
        assert!(n.certificate.all_pass());
        assert!(satisfies_hypotheses(&n.map.0));
        let again = normalize_hypotheses(&n.map, 5, DEFAULT_COEFF_BOUND).unwrap();
        assert!(again.ell.is_identity());
        assert!(again.left.is_identity());
        assert_eq!(again.map, n.map);
    }

    #[test]
    fn normalization_identity_when_hypotheses_hold() {
        let p = tuple([
            "t1^3 + t3^3",
            "t2^3 + t3^3",
            "t1*t2*t3 + t3^3",
            "t3^3",
        ]);
        let n = normalize_hypotheses(&p, 0, DEFAULT_COEFF_BOUND).unwrap();
        assert!(n.ell.is_identity());
        assert!(n.certificate.all_pass());
    }

    #[test]
    fn normalization_fills_zero_slots() {
        let p = tuple(["t1", "0", "t2 + t3", "0"]);
        let n = normalize_hypotheses(&p, 0, DEFAULT_COEFF_BOUND).unwrap();
        assert!(n.map.0.iter().all(|c| !c.is_zero()));
        assert!(satisfies_hypotheses(&n.map.0));
        let common = tuple(["t1*t2", "t1*t3", "t1^2", "t1*t2"]);
        assert!(matches!(
            normalize_hypotheses(&common, 0, 10),
            Err(Error::CommonFactor(_))
        ));
    }

    #[test]
    fn primitive_points() {
        let p = primitive_point(&[q(-2), BigRational::new(4.into(), 3.into()), q(0)]);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
