//! Exact computational algebra for extraspecial `p`-groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`fppoly`]: the prime field and sparse multivariate polynomials over it.
//! * [`fplinalg`]: dense linear algebra, canonical subspaces and exhaustive
//!   enumeration of points, hyperplanes and subspaces.
//! * [`symplectic`]: the symplectic space `E = F_p^{2n}`, its Lagrangians,
//!   radical lines and transvection generators.
//! * [`dickson`]: Mui polynomials, Dickson invariants, the relative invariant
//!   `MuiRel` and the symplectic invariants `zeta_i`.
//! * [`quillen`]: even cohomology classes modulo nilpotents, modelled by their
//!   restrictions to all maximal elementary abelian subgroups.
//! * [`theorems`]: one verifier per main result, each producing a
//!   [`report::VerificationReport`].

pub mod dickson;
pub mod error;
pub mod fplinalg;
pub mod fppoly;
pub mod quillen;
pub mod report;
pub mod symplectic;
pub mod theorems;

pub use error::{Error, Result};
pub use fppoly::{FpPoly, Monomial, PolyRing, PrimeField};
