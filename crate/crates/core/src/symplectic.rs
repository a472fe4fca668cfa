//! The symplectic space `E = F_p^{2n}` with basis `A_1..A_n, B_1..B_n`,
//! `(A_i, B_j) = δ_ij`, and its Lagrangian subspaces.
//!
//! Vectors of `E` are coordinate vectors in that basis. Linear forms on `E`
//! are coefficient vectors in the dual basis `α_1..α_n, β_1..β_n`, which are
//! also the variables of [`SymplecticSpace::dual_ring`]. Each Lagrangian `I`
//! carries coordinates `x_1..x_n` on `I*`, dual to the RREF basis of `I`;
//! the restriction ring has one extra variable `z` after them.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fplinalg::{all_subspaces, normalized_vectors, projective_count, LinearForm, Matrix, Subspace};
use crate::fppoly::{FpPoly, PolyRing, PrimeField};

/// Largest supported rank; keeps the restriction ring within the monomial
/// packing limit.
pub const MAX_RANK: usize = 4;

#[derive(Debug)]
struct Inner {
    n: usize,
    field: PrimeField,
    gram: Matrix,
    dual_ring: Arc<PolyRing>,
    restriction_ring: Arc<PolyRing>,
    lagrangians: OnceLock<Arc<Vec<Lagrangian>>>,
}

/// `E = F_p^{2n}` with the standard symplectic form. Cheap to clone.
#[derive(Clone, Debug)]
pub struct SymplecticSpace(Arc<Inner>);

impl PartialEq for SymplecticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n && self.0.field == other.0.field
    }
}

impl Eq for SymplecticSpace {}

/// A maximal totally isotropic subspace together with its restriction map
/// `S(E*) -> S(I*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lagrangian {
    space: Subspace,
    images: Vec<FpPoly>,
}

impl SymplecticSpace {
    pub fn new(field: PrimeField, n: usize) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::OutOfRange(format!("rank n = {n}, at most {MAX_RANK} supported")));
        }
        let mut gram = Matrix::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, 1);
            gram.set(n + i, i, field.neg(1));
        }
        let names = (1..=n).map(|i| format!("a{i}")).chain((1..=n).map(|i| format!("b{i}")));
        let dual_ring = PolyRing::new(field, names)?;
        let restriction_ring = PolyRing::new(field, (1..=n).map(|i| format!("x{i}")).chain(["z".to_string()]))?;
        Ok(Self(Arc::new(Inner { n, field, gram, dual_ring, restriction_ring, lagrangians: OnceLock::new() })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn dim(&self) -> usize {
        2 * self.0.n
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn p(&self) -> u32 {
        self.0.field.p()
    }

    pub fn gram(&self) -> &Matrix {
        &self.0.gram
    }

    /// `S(E*)` on `a1..an, b1..bn` (standing for `α_i, β_i`).
    pub fn dual_ring(&self) -> &Arc<PolyRing> {
        &self.0.dual_ring
    }

    /// `S(I*)[z]` on `x1..xn, z`, shared by all Lagrangians.
    pub fn restriction_ring(&self) -> &Arc<PolyRing> {
        &self.0.restriction_ring
    }

    pub fn alpha(&self, i: usize) -> FpPoly {
        self.0.dual_ring.var(i - 1)
    }

    pub fn beta(&self, i: usize) -> FpPoly {
        self.0.dual_ring.var(self.0.n + i - 1)
    }

    /// Basis vector `A_i` (1-based).
    pub fn a_vec(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[i - 1] = 1;
        v
    }

    /// Basis vector `B_i` (1-based).
    pub fn b_vec(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[self.0.n + i - 1] = 1;
        v
    }

    /// The dual form `α_i` as a linear form.
    pub fn alpha_form(&self, i: usize) -> LinearForm {
        LinearForm::from_residues(self.a_vec(i))
    }

    /// The dual form `β_i` as a linear form.
    pub fn beta_form(&self, i: usize) -> LinearForm {
        LinearForm::from_residues(self.b_vec(i))
    }

    /// The symplectic form `(u, v)`.
    pub fn form(&self, u: &[u8], v: &[u8]) -> u32 {
        let n = self.0.n;
        let f = self.0.field;
        (0..n).fold(0, |acc, i| {
            let t = f.sub(f.mul(u[i] as u32, v[n + i] as u32), f.mul(u[n + i] as u32, v[i] as u32));
            f.add(acc, t)
        })
    }

    pub fn is_isotropic(&self, u: &Subspace) -> bool {
        let b = u.basis();
        b.iter().all(|x| b.iter().all(|y| self.form(x, y) == 0))
    }

    /// `U^⊥` under the symplectic form.
    pub fn perp(&self, u: &Subspace) -> Subspace {
        let f = self.0.field;
        // row u^T G pairs with v as (u, v)
        let rows: Vec<Vec<u8>> = u
            .basis()
            .iter()
            .map(|x| {
                (0..self.dim())
                    .map(|j| {
                        let s: u32 = (0..self.dim()).map(|k| x[k] as u32 * self.0.gram.get(k, j)).sum();
                        (s % f.p()) as u8
                    })
                    .collect()
            })
            .collect();
        Subspace::span(f, self.dim(), &rows).expect("dimensions agree").annihilator()
    }

    /// `ker φ` as a subspace of `E`.
    pub fn kernel(&self, phi: &LinearForm) -> Result<Subspace> {
        if phi.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "form of length {} on a space of dimension {}",
                phi.dim(),
                self.dim()
            )));
        }
        Ok(Subspace::span(self.0.field, self.dim(), &[phi.coeffs().to_vec()])?.annihilator())
    }

    /// The line `L_φ = (ker φ)^⊥`, which lies in `ker φ`.
    pub fn radical_line(&self, phi: &LinearForm) -> Result<Subspace> {
        if phi.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.perp(&self.kernel(phi)?))
    }

    /// Projective representatives of nonzero linear forms on `E`.
    pub fn projective_forms(&self) -> Vec<LinearForm> {
        normalized_vectors(self.0.field, self.dim()).into_iter().map(LinearForm::from_residues).collect()
    }

    /// The transvection `x -> x + (x, v) v` as a matrix acting on columns.
    pub fn transvection(&self, v: &[u8]) -> Matrix {
        let f = self.0.field;
        let d = self.dim();
        let mut m = Matrix::identity(f, d);
        for j in 0..d {
            let mut e = vec![0u8; d];
            e[j] = 1;
            let c = self.form(&e, v);
            for (i, &vi) in v.iter().enumerate() {
                m.set(i, j, f.add(m.get(i, j), f.mul(c, vi as u32)));
            }
        }
        m
    }

    /// One transvection per projective point of `E`; together they generate
    /// `Sp_{2n}(F_p)`.
    pub fn sp_generators(&self) -> Vec<Matrix> {
        normalized_vectors(self.0.field, self.dim()).iter().map(|v| self.transvection(v)).collect()
    }

    /// Whether `m^T G m = G`.
    pub fn preserves_form(&self, m: &Matrix) -> bool {
        let lhs = m.transpose().mul(&self.0.gram).and_then(|x| x.mul(m));
        lhs.map(|x| x == self.0.gram).unwrap_or(false)
    }

    /// `f ∘ m`: the polynomial on `E` obtained by precomposing with `m`.
    pub fn pullback(&self, f: &FpPoly, m: &Matrix) -> Result<FpPoly> {
        let ring = &self.0.dual_ring;
        let images: Vec<FpPoly> = (0..self.dim())
            .map(|k| {
                let row: Vec<u32> = (0..self.dim()).map(|j| m.get(k, j)).collect();
                ring.linear_form(&row)
            })
            .collect();
        f.substitute_linear(&images, ring)
    }

    fn lagrangian(&self, space: Subspace) -> Lagrangian {
        let ring = &self.0.restriction_ring;
        let n = self.0.n;
        let images = (0..self.dim())
            .map(|k| {
                let mut c: Vec<u32> = space.basis().iter().map(|v| v[k] as u32).collect();
                c.push(0);
                ring.linear_form(&c)
            })
            .collect();
        debug_assert_eq!(space.dim(), n);
        Lagrangian { space, images }
    }

    /// Lagrangians by filtering all `n`-dimensional subspaces.
    pub fn lagrangians_by_filter(&self) -> Vec<Lagrangian> {
        all_subspaces(self.0.field, self.dim(), self.0.n)
            .into_par_iter()
            .filter(|u| self.is_isotropic(u))
            .map(|u| self.lagrangian(u))
            .collect()
    }

    /// Lagrangians by extending isotropic flags one vector at a time.
    pub fn lagrangians_by_flags(&self) -> Vec<Lagrangian> {
        let f = self.0.field;
        let mut level: BTreeSet<Subspace> = BTreeSet::from([Subspace::zero(f, self.dim())]);
        for _ in 0..self.0.n {
            let next: Vec<Vec<Subspace>> = level
                .par_iter()
                .map(|s| {
                    let perp = self.perp(s);
                    normalized_vectors(f, perp.dim())
                        .iter()
                        .map(|c| perp.combine(c))
                        .filter(|v| !s.contains(v))
                        .map(|v| s.sum(&Subspace::span(f, self.dim(), &[v]).expect("length")).expect("same space"))
                        .collect()
                })
                .collect();
            level = next.into_iter().flatten().collect();
        }
        level.into_iter().map(|u| self.lagrangian(u)).collect()
    }

    /// All Lagrangians in canonical order, computed once and cached.
    ///
    /// The filter route is used up to `n = 2`, the flag route beyond.
    pub fn lagrangians(&self) -> Arc<Vec<Lagrangian>> {
        self.0
            .lagrangians
            .get_or_init(|| {
                let list = if self.0.n <= 2 { self.lagrangians_by_filter() } else { self.lagrangians_by_flags() };
                Arc::new(list)
            })
            .clone()
    }

    /// `∏_{i=1}^n (p^i + 1)`.
    pub fn expected_lagrangian_count(&self) -> u64 {
        let p = self.p() as u64;
        (1..=self.0.n as u32).map(|i| p.pow(i) + 1).product()
    }

    /// Index of a Lagrangian in [`Self::lagrangians`].
    pub fn lagrangian_index(&self, space: &Subspace) -> Option<usize> {
        self.lagrangians().binary_search_by(|l| l.space.cmp(space)).ok()
    }

    /// Number of projective points of `E*`.
    pub fn projective_form_count(&self) -> u64 {
        projective_count(self.p(), self.dim() as u32)
    }
}

impl Lagrangian {
    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    /// Images of `α_1..α_n, β_1..β_n` in the restriction ring.
    pub fn images(&self) -> &[FpPoly] {
        &self.images
    }

    /// Restriction of `f ∈ S(E*)` to `I`, landing in `S(I*)[z]`.
    pub fn restrict(&self, f: &FpPoly) -> Result<FpPoly> {
        let target = self.images[0].ring().clone();
        f.substitute_linear(&self.images, &target)
    }

    /// `φ|_I` as a coefficient vector on `x_1..x_n`.
    pub fn restrict_form(&self, phi: &LinearForm) -> Vec<u8> {
        self.space
            .basis()
            .iter()
            .map(|v| {
                let s: u32 = phi.coeffs().iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % self.space.field().p()) as u8
            })
            .collect()
    }

    /// Whether `I ⊆ ker φ`.
    pub fn in_kernel_of(&self, phi: &LinearForm) -> bool {
        self.restrict_form(phi).iter().all(|&c| c == 0)
    }

    /// `I*_φ`: the linear forms on `I` vanishing on the line `L ⊆ I`, as
    /// coefficient vectors on `x_1..x_n`; together with a form not in it.
    pub fn annihilator_of_line(&self, line: &Subspace) -> Result<(Vec<Vec<u8>>, Vec<u8>)> {
        let w = line.basis().first().ok_or(Error::ZeroForm)?;
        let c = self.space.coordinates(w).ok_or(Error::NotProperSubspace)?;
        let f = self.space.field();
        let ann = Subspace::span(f, c.len(), std::slice::from_ref(&c))?.annihilator();
        let outside = (0..c.len())
            .map(|j| {
                let mut e = vec![0u8; c.len()];
                e[j] = 1;
                e
            })
            .find(|e| !ann.contains(e))
            .expect("a nonzero vector has a non-annihilating coordinate form");
        Ok((ann.basis().to_vec(), outside))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u32, n: usize) -> SymplecticSpace {
        SymplecticSpace::new(PrimeField::new(p).unwrap(), n).unwrap()
    }

    fn span(e: &SymplecticSpace, vs: &[Vec<u8>]) -> Subspace {
        Subspace::span(e.field(), e.dim(), vs).unwrap()
    }

    #[test]
    fn perp_examples() {
        let e = space(3, 2);
        assert_eq!(e.perp(&Subspace::full(e.field(), 4)), Subspace::zero(e.field(), 4));
        let u = span(&e, &[e.a_vec(1), e.b_vec(1)]);
        assert_eq!(e.perp(&u), span(&e, &[e.a_vec(2), e.b_vec(2)]));
        let e1 = space(3, 1);
        let a = span(&e1, &[e1.a_vec(1)]);
        assert_eq!(e1.perp(&a), a);
    }

    #[test]
    fn lagrangian_counts_by_brute_force() {
        for (p, n, count) in [(3, 1, 4), (3, 2, 40), (5, 2, 156)] {
            let e = space(p, n);
            let oracle = all_subspaces(e.field(), e.dim(), n)
                .into_iter()
                .filter(|u| u.elements().iter().all(|x| u.elements().iter().all(|y| e.form(x, y) == 0)))
                .count();
            assert_eq!(oracle, count);
            assert_eq!(e.lagrangians().len(), count);
            assert_eq!(e.expected_lagrangian_count(), count as u64);
            assert_eq!(e.lagrangians_by_flags(), e.lagrangians_by_filter());
        }
    }

    #[test]
    fn lagrangians_are_self_perp() {
        let e = space(3, 2);
        for l in e.lagrangians().iter() {
            assert_eq!(l.subspace().dim(), 2);
            assert!(e.is_isotropic(l.subspace()));
            assert_eq!(&e.perp(l.subspace()), l.subspace());
        }
    }

    #[test]
    fn radical_line_examples() {
        let e1 = space(3, 1);
        let l = e1.radical_line(&e1.beta_form(1)).unwrap();
        assert_eq!(l, span(&e1, &[e1.a_vec(1)]));
        let e2 = space(3, 2);
        assert_eq!(e2.radical_line(&e2.beta_form(2)).unwrap(), span(&e2, &[e2.a_vec(2)]));
        let phi = LinearForm::new(e2.field(), &[1, 2, 0, 1]);
        let scaled = LinearForm::new(e2.field(), &[2, 1, 0, 2]);
        assert_eq!(e2.radical_line(&phi).unwrap(), e2.radical_line(&scaled).unwrap());
        assert_eq!(e2.radical_line(&LinearForm::new(e2.field(), &[0; 4])), Err(Error::ZeroForm));
    }

    #[test]
    fn radical_line_lies_in_kernel_and_in_contained_lagrangians() {
        let e = space(3, 2);
        for phi in e.projective_forms() {
            let line = e.radical_line(&phi).unwrap();
            assert_eq!(line.dim(), 1);
            assert!(e.kernel(&phi).unwrap().contains_subspace(&line));
            for l in e.lagrangians().iter().filter(|l| l.in_kernel_of(&phi)) {
                assert!(l.subspace().contains_subspace(&line));
            }
        }
    }

    #[test]
    fn transvections_preserve_form_and_lagrangians() {
        let e1 = space(3, 1);
        assert_eq!(e1.sp_generators().len(), 4);
        let t = e1.transvection(&e1.a_vec(1));
        // (B_1, A_1) = -1
        assert_eq!(t.mul_vec(&e1.b_vec(1)).unwrap(), vec![2, 1]);
        let e = space(3, 2);
        let lags = e.lagrangians();
        for g in e.sp_generators() {
            assert!(e.preserves_form(&g));
            for l in lags.iter() {
                let img = l.subspace().image(&g).unwrap();
                assert!(e.lagrangian_index(&img).is_some());
            }
        }
    }

    #[test]
    fn restriction_uses_rref_coordinates() {
        let e = space(3, 1);
        let lag = e.lagrangians();
        // the line spanned by (1, 2) = A_1 + 2 B_1
        let l = lag.iter().find(|l| l.subspace().basis() == [vec![1, 2]]).unwrap();
        assert_eq!(l.restrict(&e.alpha(1)).unwrap().to_named_text(), "x1");
        assert_eq!(l.restrict(&e.beta(1)).unwrap().to_named_text(), "2*x1");
    }
}
