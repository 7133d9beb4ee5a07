//! Exact sparse multivariate polynomial arithmetic over ℚ on a fixed
//! variable universe, with block-wise degree, homogeneity and substitution.

mod gcd;
mod mpoly;
mod parse;
mod var;

pub use gcd::{content_and_primpart, gcd_all, gcd_multi, pseudo_remainder};
pub use mpoly::{MPoly, Monomial};
pub use parse::{format_poly, parse, parse_poly};
pub use var::{Block, Degree, Var, VarSet, NVARS};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer as a rational.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Degree of `f` over the variables of `block`; the zero polynomial has the
/// `NegInfinity` sentinel.
pub fn degree_in_block(f: &MPoly, block: VarSet) -> Degree {
    f.degree_in(block)
}

pub fn is_homogeneous_in_block(f: &MPoly, block: VarSet) -> bool {
    f.is_homogeneous_in(block)
}

/// Simultaneous substitution `f(σ)`.
pub fn substitute(f: &MPoly, sigma: &std::collections::HashMap<Var, MPoly>) -> MPoly {
    f.substitute(sigma)
}
