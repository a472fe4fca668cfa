//! Exact arithmetic in `F_p` and in sparse multivariate polynomial rings
//! over it.
//!
//! Polynomials are immutable values; every operation returns a new
//! polynomial and is safe to call concurrently on shared inputs.

mod basis;
mod field;
mod monomial;
mod poly;
mod ring;

pub use basis::HomogeneousBasis;
pub use field::{PrimeField, MAX_PRIME};
pub use monomial::{Monomial, MAX_DEGREE, MAX_VARS};
pub use poly::FpPoly;
pub use ring::PolyRing;

#[cfg(test)]
mod tests;
