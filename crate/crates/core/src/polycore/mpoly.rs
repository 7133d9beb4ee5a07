//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order on the
//! canonical variable order, with no zero coefficients, so two polynomials
//! are equal exactly when their term vectors are equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::var::{Degree, Var, VarSet, NVARS};

/// An exponent vector over the fixed universe. The derived ordering compares
/// total degree first and then exponents lexicographically, which is graded
/// lex with `t1 > t2 > ... > u4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: [u16; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        exps: [0; NVARS],
    };

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[v.index()] = u16::try_from(e).expect("exponent overflow");
        m.deg = e;
        m
    }

    pub fn from_exponents(pairs: &[(Var, u32)]) -> Monomial {
        pairs
            .iter()
            .fold(Monomial::ONE, |m, (v, e)| m.mul(&Monomial::var(*v, *e)))
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.index()] as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn degree_in(&self, set: VarSet) -> u32 {
        set.iter().map(|v| self.exp(v)).sum()
    }

    pub fn vars(&self) -> VarSet {
        Var::all()
            .filter(|v| self.exps[v.index()] > 0)
            .fold(VarSet::EMPTY, |s, v| s.with(v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..NVARS {
            out.exps[i] = self.exps[i].checked_sub(other.exps[i])?;
        }
        out.deg = self.deg - other.deg;
        Some(out)
    }

    /// Splits into the part over `set` and the part over the other variables.
    pub fn split(&self, set: VarSet) -> (Monomial, Monomial) {
        let mut inside = Monomial::ONE;
        let mut outside = Monomial::ONE;
        for v in Var::all() {
            let e = self.exps[v.index()];
            if e == 0 {
                continue;
            }
            let target = if set.contains(v) {
                &mut inside
            } else {
                &mut outside
            };
            target.exps[v.index()] = e;
            target.deg += e as u32;
        }
        (inside, outside)
    }

    pub fn without(&self, v: Var) -> Monomial {
        let mut out = *self;
        out.deg -= out.exps[v.index()] as u32;
        out.exps[v.index()] = 0;
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        Var::all()
            .map(|v| (v, self.exp(v)))
            .filter(|(_, e)| *e > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(v, e)| {
                if e == 1 {
                    v.name().to_string()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial over ℚ in the variables of the fixed universe.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, BigRational)>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MPoly {
        MPoly::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Monomial::var(v, 1), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> MPoly {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        MPoly::from_btree(acc)
    }

    fn from_btree(map: BTreeMap<Monomial, BigRational>) -> MPoly {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MPoly { terms }
    }

    fn from_hash(map: HashMap<Monomial, BigRational>) -> MPoly {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((m, c)) if *m == Monomial::ONE => c.clone(),
            _ => BigRational::zero(),
        }
    }

    /// Leading term in the canonical order.
    pub fn leading_term(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn vars(&self) -> VarSet {
        self.terms
            .iter()
            .fold(VarSet::EMPTY, |s, (m, _)| s.union(m.vars()))
    }

    pub fn total_degree(&self) -> Degree {
        self.degree_in(VarSet::ALL)
    }

    /// Maximum total exponent over the variables of `set`.
    pub fn degree_in(&self, set: VarSet) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(set))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in one variable, `0` for the zero polynomial.
    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Minimum total exponent over `set` (order of vanishing along that block).
    pub fn min_degree_in(&self, set: VarSet) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(set))
            .min()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// True iff every term has the same total exponent over `set`.
    pub fn is_homogeneous_in(&self, set: VarSet) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree_in(set));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The part of `self` whose `set`-degree equals `d`.
    pub fn homogeneous_part(&self, set: VarSet, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(set) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), cmul(a, c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (lm, lc) = &d.terms[0];
        if d.terms.len() == 1 {
            let inv = lc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.checked_div(lm)?, c * &inv));
            }
            return Some(MPoly { terms });
        }
        if self.terms[0].0.total_degree() < lm.total_degree() {
            return None;
        }
        let mut rem: BTreeMap<Monomial, BigRational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lm)?;
            let qc = cdiv(&c, lc);
            for (dm, dc) in &d.terms[1..] {
                let key = qm.mul(dm);
                let prod = cmul(&qc, dc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        csub_assign(e.get_mut(), &prod);
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-prod);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MPoly { terms: quot })
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let deg = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        // removing one variable keeps the relative order within a bucket
        // only up to ties in total degree, so re-sort
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: ts }
            })
            .collect()
    }

    /// Inverse of [`MPoly::coefficients_in`].
    pub fn from_coefficients(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut acc = HashMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(v, i as u32);
            for (m, a) in &c.terms {
                acc.insert(m.mul(&vm), a.clone());
            }
        }
        MPoly::from_hash(acc)
    }

    /// Coefficients with respect to the monomials of `set`; the values are
    /// polynomials in the remaining variables.
    pub fn coefficients_wrt(&self, set: VarSet) -> BTreeMap<Monomial, MPoly> {
        let mut acc: BTreeMap<Monomial, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(set);
            acc.entry(inside).or_default().push((outside, c.clone()));
        }
        acc.into_iter()
            .map(|(k, mut ts)| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (k, MPoly { terms: ts })
            })
            .collect()
    }

    /// Simultaneous substitution of variables; unmapped variables are kept.
    pub fn substitute(&self, map: &HashMap<Var, MPoly>) -> MPoly {
        if map.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), MPoly> = HashMap::new();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = MPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match map.get(&v) {
                    Some(image) => {
                        let p = powers
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e))
                            .clone();
                        factor = &factor * &p;
                    }
                    None => kept = kept.mul(&Monomial::var(v, e)),
                }
            }
            for (fm, fc) in factor.terms {
                *acc.entry(fm.mul(&kept)).or_insert_with(BigRational::zero) += fc;
            }
        }
        MPoly::from_hash(acc)
    }

    /// Substitutes rational values for some variables.
    pub fn eval_partial(&self, values: &[(Var, BigRational)]) -> MPoly {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut coeff = c.clone();
            for (v, val) in values {
                let e = m.exp(*v);
                if e > 0 {
                    coeff *= num_traits::pow(val.clone(), e as usize);
                    kept = kept.without(*v);
                }
            }
            if !coeff.is_zero() {
                *acc.entry(kept).or_insert_with(BigRational::zero) += coeff;
            }
        }
        MPoly::from_hash(acc)
    }

    /// Full evaluation; every variable of `self` must be assigned.
    pub fn eval(&self, values: &[(Var, BigRational)]) -> BigRational {
        let p = self.eval_partial(values);
        assert!(p.is_constant(), "eval: unassigned variables remain in {p}");
        p.constant_term()
    }

    /// Evaluates a polynomial in `t1, t2, t3` at a point.
    pub fn eval_t(&self, point: &[BigRational; 3]) -> BigRational {
        self.eval(&[
            (Var::T1, point[0].clone()),
            (Var::T2, point[1].clone()),
            (Var::T3, point[2].clone()),
        ])
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut dm = m.without(v);
            dm = dm.mul(&Monomial::var(v, e - 1));
            terms.push((dm, c * rat(e as i64)));
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Returns `(unit, p)` with `self = unit * p`, where `p` has coprime
    /// integer coefficients and a positive leading coefficient. The zero
    /// polynomial maps to `(1, 0)`.
    pub fn normalize_with_unit(&self) -> (BigRational, MPoly) {
        if self.is_zero() {
            return (BigRational::one(), MPoly::zero());
        }
        let den = self.denominator_lcm();
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let factor = BigRational::new(den, g);
        let p = self.scale(&factor);
        (factor.recip(), p)
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn normalize(&self) -> MPoly {
        self.normalize_with_unit().1
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// True iff all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Equality up to a non-zero rational factor.
    pub fn associate(&self, other: &MPoly) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn sign_of_leading(&self) -> Sign {
        self.terms
            .first()
            .map_or(Sign::NoSign, |(_, c)| c.numer().sign())
    }

    pub fn map_coeffs<F: Fn(&BigRational) -> BigRational>(&self, f: F) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn small_coeffs(p: &MPoly) -> Option<Vec<i64>> {
    p.terms
        .iter()
        .map(|(_, c)| {
            if c.is_integer() {
                i64::try_from(c.numer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Product in machine integers when every coefficient fits in `i64`;
/// `None` on non-integer input or accumulator overflow.
fn small_int_mul(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let ca = small_coeffs(a)?;
    let cb = small_coeffs(b)?;
    let mut prods: Vec<(Monomial, i128)> = Vec::with_capacity(ca.len() * cb.len());
    for ((ma, _), x) in a.terms.iter().zip(&ca) {
        for ((mb, _), y) in b.terms.iter().zip(&cb) {
            prods.push((ma.mul(mb), *x as i128 * *y as i128));
        }
    }
    prods.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut merged: Vec<(Monomial, i128)> = Vec::with_capacity(prods.len());
    for (m, c) in prods {
        match merged.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = lc.checked_add(c)?,
            _ => merged.push((m, c)),
        }
    }
    Some(MPoly {
        terms: merged
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c))))
            .collect(),
    })
}

fn cmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn cdiv(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        let (q, r) = a.numer().div_rem(b.numer());
        if r.is_zero() {
            return BigRational::from_integer(q);
        }
    }
    a / b
}

fn cadd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn cadd_assign(a: &mut BigRational, b: &BigRational) {
    if a.is_integer() && b.is_integer() {
        let n = std::mem::replace(a, BigRational::zero()).into_raw().0;
        *a = BigRational::from_integer(n + b.numer());
    } else {
        *a += b;
    }
}

fn csub_assign(a: &mut BigRational, b: &BigRational) {
    if a.is_integer() && b.is_integer() {
        let n = std::mem::replace(a, BigRational::zero()).into_raw().0;
        *a = BigRational::from_integer(n - b.numer());
    } else {
        *a -= b;
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, other: &MPoly) -> MPoly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    terms.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = cadd(ca, cb);
                    if !s.is_zero() {
                        terms.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        MPoly { terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, other: &MPoly) -> MPoly {
        self + &(-other)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_monomial(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        if let Some(p) = small_int_mul(self, other) {
            return p;
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), cmul(ca, cb)));
            }
        }
        prods.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => cadd_assign(lc, &c),
                _ => {
                    if terms.last().is_some_and(|(_, c)| c.is_zero()) {
                        terms.pop();
                    }
                    terms.push((m, c));
                }
            }
        }
        if terms.last().is_some_and(|(_, c)| c.is_zero()) {
            terms.pop();
        }
        MPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, other: MPoly) -> MPoly {
                (&self).$method(&other)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, other: &MPoly) -> MPoly {
                (&self).$method(other)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, other: MPoly) -> MPoly {
                self.$method(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> MPoly {
        MPoly::var(Var::t(i))
    }

    #[test]
    fn ring_basics() {
        let a = &t(1) + &t(2);
        let b = &t(1) - &t(2);
        let prod = &a * &b;
        let expected = &t(1).pow(2) - &t(2).pow(2);
        assert_eq!(prod, expected);
        assert!((&a - &a).is_zero());
        assert_eq!(MPoly::zero().total_degree(), Degree::NegInfinity);
    }

    #[test]
    fn ordering_is_graded_lex() {
        let p = &(&t(3).pow(2) + &t(1)) + &t(2).pow(2);
        let ms: Vec<_> = p.terms().iter().map(|(m, _)| *m).collect();
        assert_eq!(ms[0], Monomial::var(Var::T2, 2));
        assert_eq!(ms[1], Monomial::var(Var::T3, 2));
        assert_eq!(ms[2], Monomial::var(Var::T1, 1));
    }

    #[test]
    fn exact_division() {
        let a = &t(1) + &t(2);
        let b = &(&t(1) * &t(3)) - &MPoly::int(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &MPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn normalization() {
        let p = MPoly::from_terms([
            (Monomial::var(Var::T1, 1), BigRational::new((-2).into(), 3.into())),
            (Monomial::ONE, BigRational::new(4.into(), 9.into())),
        ]);
        let (unit, n) = p.normalize_with_unit();
        assert_eq!(n, &(&t(1) * &MPoly::int(3)) - &MPoly::int(2));
        assert_eq!(n.scale(&unit), p);
    }

    #[test]
    fn coefficient_views() {
        let p = &(&t(1) * &t(3).pow(2)) + &(&t(2) * &MPoly::var(Var::X1));
        let cs = p.coefficients_in(Var::T3);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], t(1));
        assert_eq!(MPoly::from_coefficients(Var::T3, &cs), p);
        let by_x = p.coefficients_wrt(VarSet::X);
        assert_eq!(by_x.len(), 2);
    }
}
