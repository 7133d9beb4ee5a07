//! Base-locus multiplicities of rational surface parametrizations and of
//! rational maps of the projective plane, computed exactly from contents of
//! univariate resultants, together with the degree formulas they feed and
//! brute-force oracles that check them.

pub mod baselocus;
pub mod composition;
pub mod corpus;
pub mod elimination;
pub mod error;
pub mod oracle;
pub mod planemaps;
pub mod transform;
pub mod polycore;

pub use error::{Error, Result};
