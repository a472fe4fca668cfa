use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::fppoly::PrimeField;

use super::matrix::{kernel_from_rref, rref_in_place, Matrix, RowOps};

/// A linear subspace of `F_p^ambient`, stored by its reduced row echelon
/// basis. Equal subspaces have identical bases, so `==` is set equality.
///
/// The order is lexicographic on `(ambient_dim, dim, basis rows)`.
#[derive(Clone)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.basis.len(), &self.basis).cmp(&(other.ambient, other.basis.len(), &other.basis))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}){:?}", self.field.p(), self.ambient, self.basis)
    }
}

impl Subspace {
    /// The span of `vectors` (entries reduced mod `p`).
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        let p = field.p() as u8;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
            rows.push(v.iter().map(|&x| x % p).collect());
        }
        Ok(Self::from_rows_unchecked(field, ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(field: PrimeField, ambient: usize, mut rows: Vec<Vec<u8>>) -> Self {
        let ops = RowOps::new(field);
        let pivots = rref_in_place(&ops, &mut rows, ambient);
        rows.truncate(pivots.len());
        Self { field, ambient, basis: rows, pivots }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0u8; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    /// The RREF basis rows.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_residue_rows(self.field, self.ambient, self.basis.clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.basis.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field || self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field.p(),
                self.ambient,
                other.field.p(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<u8> = self.pivots.iter().map(|&c| v[c]).collect();
        (self.combine(&coords) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    /// `Σ coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let ops = RowOps::new(self.field);
        let mut out = vec![0u8; self.ambient];
        for (row, &c) in self.basis.iter().zip(coeffs) {
            ops.axpy(&mut out, c, row);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, rows))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{phi : phi(u) = 0 for all u}` in the dual space, with dual
    /// coordinates identified with the ambient coordinates.
    pub fn annihilator(&self) -> Subspace {
        let ops = RowOps::new(self.field);
        let kernel = kernel_from_rref(&ops, &self.basis, &self.pivots, self.ambient);
        Self::from_rows_unchecked(self.field, self.ambient, kernel)
    }

    /// All `p^dim` vectors, in lexicographic order of their coordinates.
    pub fn elements(&self) -> Vec<Vec<u8>> {
        coefficient_vectors(self.field, self.dim()).iter().map(|c| self.combine(c)).collect()
    }

    /// Vectors of `self` extending a basis of `sub` to a basis of `self`,
    /// chosen greedily from the RREF basis of `self`.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Vec<u8>>> {
        self.check_same(sub)?;
        if !self.contains_subspace(sub) {
            return Err(Error::NotProperSubspace);
        }
        let mut current = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !current.contains(v) {
                current = current.sum(&Subspace::span(self.field, self.ambient, std::slice::from_ref(v))?)?;
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// Applies the linear map `x -> m x` (column-vector convention).
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        let rows = self.basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(self.field, m.nrows(), rows))
    }
}

/// All vectors in `F_p^k`, lexicographically ordered.
pub fn coefficient_vectors(field: PrimeField, k: usize) -> Vec<Vec<u8>> {
    let p = field.p() as u8;
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..p).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Representatives of the points of `P(F_p^k)`: nonzero vectors whose first
/// nonzero entry is 1, lexicographically ordered.
pub fn normalized_vectors(field: PrimeField, k: usize) -> Vec<Vec<u8>> {
    coefficient_vectors(field, k).into_iter().filter(|v| v.iter().find(|&&x| x != 0) == Some(&1)).collect()
}

/// One representative per line of `v`, each with first nonzero ambient
/// coordinate 1, sorted lexicographically.
pub fn projective_points(v: &Subspace) -> Result<Vec<Vec<u8>>> {
    if v.dim() == 0 {
        return Err(Error::OutOfRange("projective points of the zero space".into()));
    }
    // RREF coordinates with leading 1 give ambient vectors with leading 1.
    let mut pts: Vec<Vec<u8>> = normalized_vectors(v.field, v.dim()).iter().map(|c| v.combine(c)).collect();
    pts.sort();
    Ok(pts)
}

/// All `k`-dimensional subspaces of `F_p^n`, sorted.
pub fn all_subspaces(field: PrimeField, n: usize, k: usize) -> Vec<Subspace> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| {
                let pivots = &pivots;
                ((pc + 1)..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        for fill in coefficient_vectors(field, free.len()) {
            let mut rows = vec![vec![0u8; n]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (&(i, c), &a) in free.iter().zip(&fill) {
                rows[i][c] = a;
            }
            out.push(Subspace { field, ambient: n, basis: rows, pivots: pivots.clone() });
        }
    }
    out.sort();
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The hyperplanes `W` of `v` with `u ⊆ W`, sorted. There are
/// `(p^s - 1)/(p - 1)` of them, `s = dim v - dim u`.
pub fn hyperplanes_containing(v: &Subspace, u: &Subspace) -> Result<Vec<Subspace>> {
    v.check_same(u)?;
    if !v.contains_subspace(u) || u.dim() == v.dim() {
        return Err(Error::NotProperSubspace);
    }
    let t = v.complement_basis(u)?;
    let s = t.len();
    let ops = RowOps::new(v.field);
    let mut out = Vec::new();
    for lambda in normalized_vectors(v.field, s) {
        let functional = Matrix::from_residue_rows(v.field, s, vec![lambda]);
        let mut rows = u.basis.clone();
        for mu in functional.nullspace() {
            let mut w = vec![0u8; v.ambient];
            for (ti, &c) in t.iter().zip(&mu) {
                ops.axpy(&mut w, c, ti);
            }
            rows.push(w);
        }
        out.push(Subspace::from_rows_unchecked(v.field, v.ambient, rows));
    }
    out.sort();
    Ok(out)
}

/// `(p^k - 1)/(p - 1)`.
pub fn projective_count(p: u32, k: u32) -> u64 {
    ((p as u64).pow(k) - 1) / (p as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<u8> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn hyperplane_counts() {
        let v = Subspace::full(f(3), 2);
        let lines = hyperplanes_containing(&v, &Subspace::zero(f(3), 2)).unwrap();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|w| w.dim() == 1));

        let v3 = Subspace::full(f(3), 3);
        let planes = hyperplanes_containing(&v3, &Subspace::zero(f(3), 3)).unwrap();
        assert_eq!(planes.len(), 13);
        assert_eq!(planes, all_subspaces(f(3), 3, 2));
    }

    #[test]
    fn codim_one_returns_itself() {
        let v = Subspace::full(f(5), 3);
        let u = Subspace::span(f(5), 3, &[unit(3, 0), unit(3, 2)]).unwrap();
        assert_eq!(hyperplanes_containing(&v, &u).unwrap(), vec![u.clone()]);
        assert_eq!(hyperplanes_containing(&u, &u), Err(Error::NotProperSubspace));
        let other = Subspace::span(f(5), 3, &[unit(3, 1)]).unwrap();
        assert_eq!(hyperplanes_containing(&u, &other), Err(Error::NotProperSubspace));
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(projective_points(&Subspace::full(f(3), 1)).unwrap().len(), 1);
        assert_eq!(projective_points(&Subspace::full(f(3), 2)).unwrap().len(), 4);
        let pts = projective_points(&Subspace::full(f(5), 3)).unwrap();
        assert_eq!(pts.len(), 31);
        // brute force: nonzero vectors modulo scalars
        let mut seen = std::collections::BTreeSet::new();
        for v in coefficient_vectors(f(5), 3).into_iter().filter(|v| v.iter().any(|&x| x != 0)) {
            let lead = *v.iter().find(|&&x| x != 0).unwrap() as u32;
            let inv = f(5).inv(lead).unwrap();
            seen.insert(v.iter().map(|&x| f(5).mul(x as u32, inv) as u8).collect::<Vec<_>>());
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), pts);
        assert!(projective_points(&Subspace::zero(f(3), 2)).is_err());
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(Subspace::zero(f(3), 4).annihilator(), Subspace::full(f(3), 4));
        assert_eq!(Subspace::full(f(3), 4).annihilator(), Subspace::zero(f(3), 4));
        let u = Subspace::span(f(3), 4, &[unit(4, 0), unit(4, 1)]).unwrap();
        let expected = Subspace::span(f(3), 4, &[unit(4, 2), unit(4, 3)]).unwrap();
        assert_eq!(u.annihilator(), expected);
        assert_eq!(u.annihilator().annihilator(), u);
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // [4 choose 2]_3 = 130
        assert_eq!(all_subspaces(f(3), 4, 2).len(), 130);
        assert_eq!(all_subspaces(f(5), 3, 1).len(), 31);
        assert_eq!(all_subspaces(f(3), 3, 0), vec![Subspace::zero(f(3), 3)]);
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(f(3), 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(f(3), 3, &[vec![1, 2, 1], vec![2, 2, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![1, 0, 2], vec![0, 1, 1]]);
        assert_eq!(a.elements().len(), 9);
        assert!(a.elements().iter().all(|v| a.contains(v)));
    }

    #[test]
    fn intersection_and_sum() {
        let x = Subspace::span(f(3), 3, &[unit(3, 0), unit(3, 1)]).unwrap();
        let y = Subspace::span(f(3), 3, &[unit(3, 1), unit(3, 2)]).unwrap();
        assert_eq!(x.intersection(&y).unwrap(), Subspace::span(f(3), 3, &[unit(3, 1)]).unwrap());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(f(3), 3));
    }
}
