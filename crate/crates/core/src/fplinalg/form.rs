use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fppoly::{FpPoly, PolyRing, PrimeField};

/// A linear form on `F_p^k`, i.e. a vector of the dual space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<u8>,
}

impl LinearForm {
    pub fn new(field: PrimeField, coeffs: &[u32]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| (c % field.p()) as u8).collect() }
    }

    pub(crate) fn from_residues(coeffs: Vec<u8>) -> Self {
        Self { coeffs }
    }

    /// Reads a homogeneous degree-one polynomial.
    pub fn from_poly(f: &FpPoly) -> Result<Self> {
        let c = f.linear_coefficients()?;
        Ok(Self::new(f.field(), &c))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, field: PrimeField, v: &[u8]) -> Result<u32> {
        if v.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "form of length {} applied to vector of length {}",
                self.coeffs.len(),
                v.len()
            )));
        }
        let s: u32 = self.coeffs.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
        Ok(s % field.p())
    }

    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Result<FpPoly> {
        if ring.nvars() != self.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "form of length {} in a ring with {} variables",
                self.coeffs.len(),
                ring.nvars()
            )));
        }
        let c: Vec<u32> = self.coeffs.iter().map(|&x| x as u32).collect();
        Ok(ring.linear_form(&c))
    }
}
