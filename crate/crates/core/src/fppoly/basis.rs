use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::poly::FpPoly;
use super::ring::PolyRing;

/// The monomials of degree `d` in the first `k` variables of a ring, in
/// ascending graded lex order. Coordinates for graded linear algebra.
#[derive(Clone, Debug)]
pub struct HomogeneousBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
}

fn compositions(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == k {
        prefix.push(d);
        out.push(Monomial::from_exponents(prefix));
        prefix.pop();
        return;
    }
    for e in 0..=d {
        prefix.push(e);
        compositions(k, d - e, prefix, out);
        prefix.pop();
    }
}

impl HomogeneousBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                monomials.push(Monomial::ONE);
            }
        } else {
            compositions(nvars, degree, &mut Vec::with_capacity(nvars), &mut monomials);
        }
        monomials.sort_unstable();
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Self { nvars, degree, monomials, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient vector of `f`; `None` if `f` has a term outside the basis.
    pub fn to_vector(&self, f: &FpPoly) -> Option<Vec<u8>> {
        let mut v = vec![0u8; self.len()];
        for (m, c) in f.terms() {
            v[self.index_of(m)?] = *c as u8;
        }
        Some(v)
    }

    /// Sparse coefficient list of `f`; `None` if `f` has a term outside the basis.
    pub fn to_sparse(&self, f: &FpPoly) -> Option<Vec<(usize, u8)>> {
        f.terms().iter().map(|(m, c)| self.index_of(m).map(|i| (i, *c as u8))).collect()
    }

    pub fn from_vector(&self, ring: &Arc<PolyRing>, v: &[u8]) -> FpPoly {
        assert_eq!(v.len(), self.len());
        assert!(self.nvars <= ring.nvars());
        let terms = self.monomials.iter().zip(v).filter(|(_, &c)| c != 0).map(|(&m, &c)| (m, c as u32)).collect();
        FpPoly::from_sorted_terms(ring.clone(), terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fppoly::PrimeField;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sizes_match_stars_and_bars() {
        for k in 1..=4usize {
            for d in 0..=12u32 {
                let b = HomogeneousBasis::new(k, d);
                assert_eq!(b.len() as u64, binom(d as u64 + k as u64 - 1, k as u64 - 1));
                assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(HomogeneousBasis::new(4, 6).len(), 84);
        assert_eq!(HomogeneousBasis::new(0, 0).len(), 1);
        assert_eq!(HomogeneousBasis::new(0, 3).len(), 0);
    }

    #[test]
    fn vector_round_trip() {
        let ring = PolyRing::numbered(PrimeField::new(5).unwrap(), "x", 3).unwrap();
        let f = FpPoly::parse(&ring, "3*x0^2*x2 + x1^3 + 4*x0*x1*x2").unwrap();
        let b = HomogeneousBasis::new(3, 3);
        let v = b.to_vector(&f).unwrap();
        assert_eq!(b.from_vector(&ring, &v), f);
        assert!(b.to_vector(&ring.var(0)).is_none());
        assert!(HomogeneousBasis::new(2, 3).to_vector(&f).is_none());
    }
}
