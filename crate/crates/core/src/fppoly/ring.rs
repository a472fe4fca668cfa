use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// A polynomial ring `F_p[v_0, ..., v_{k-1}]` with a fixed variable order.
///
/// Rings are shared behind an [`Arc`]; polynomials compare their rings
/// structurally, so two rings built with the same prime and names are
/// interchangeable.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: PrimeField, names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Self { field, names }))
    }

    /// Ring on `prefix1, ..., prefixk`.
    pub fn numbered(field: PrimeField, prefix: &str, k: usize) -> Result<Arc<Self>> {
        Self::new(field, (1..=k).map(|i| format!("{prefix}{i}")))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> FpPoly {
        assert!(i < self.nvars(), "variable index {i} out of range");
        FpPoly::from_sorted_terms(self.clone(), vec![(Monomial::var(i), 1)])
    }

    pub fn zero(self: &Arc<Self>) -> FpPoly {
        FpPoly::from_sorted_terms(self.clone(), Vec::new())
    }

    pub fn one(self: &Arc<Self>) -> FpPoly {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> FpPoly {
        let c = self.field.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::ONE, c)] };
        FpPoly::from_sorted_terms(self.clone(), terms)
    }

    /// The linear form `sum_i coeffs[i] * v_i`.
    pub fn linear_form(self: &Arc<Self>, coeffs: &[u32]) -> FpPoly {
        assert_eq!(coeffs.len(), self.nvars(), "linear form length");
        FpPoly::from_terms(self.clone(), coeffs.iter().enumerate().map(|(i, &c)| (Monomial::var(i), c as i64)))
    }
}
