use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fppoly::PrimeField;

/// Row operations over `F_p` on `u8` residues, using a lookup table for the
/// reduction of `a + c*b` (at most `12 + 12*12 < 256` for `p <= 13`).
#[derive(Clone)]
pub(crate) struct RowOps {
    p: u8,
    reduce: [u8; 256],
    inverse: [u8; 16],
}

impl RowOps {
    pub(crate) fn new(field: PrimeField) -> Self {
        let p = field.p() as u8;
        let mut reduce = [0u8; 256];
        for (s, r) in reduce.iter_mut().enumerate() {
            *r = (s % p as usize) as u8;
        }
        let mut inverse = [0u8; 16];
        for a in 1..p {
            inverse[a as usize] = field.inv(a as u32).expect("nonzero") as u8;
        }
        Self { p, reduce, inverse }
    }

    /// `dst += c * src`.
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        let c = c as usize;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.reduce[*d as usize + c * s as usize];
        }
    }

    #[inline]
    pub(crate) fn scale(&self, row: &mut [u8], c: u8) {
        for x in row.iter_mut() {
            *x = self.reduce[*x as usize * c as usize];
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn inv(&self, a: u8) -> u8 {
        self.inverse[a as usize]
    }
}

/// Brings `rows` into reduced row echelon form in place, choosing pivots only
/// among the first `pivot_limit` columns. Returns the pivot columns; rows
/// `0..pivots.len()` carry the pivots, in order.
pub(crate) fn rref_in_place(ops: &RowOps, rows: &mut [Vec<u8>], pivot_limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_limit {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r][col];
        if lead != 1 {
            ops.scale(&mut rows[r][col..], ops.inv(lead));
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let tail = &pivot_row[col..];
        let work = rows.len() * (pivot_row.len() - col);
        let eliminate = |row: &mut Vec<u8>| {
            if row.is_empty() {
                return;
            }
            let c = row[col];
            if c != 0 {
                ops.axpy(&mut row[col..], ops.neg(c), tail);
            }
        };
        if work > 1 << 16 {
            rows.par_iter_mut().for_each(eliminate);
        } else {
            rows.iter_mut().for_each(eliminate);
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// A dense matrix over `F_p`, row-major, entries stored as residues.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[p={}]{:?}", self.field.p(), self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of integers (reduced mod `p`).
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_residue_rows(field: PrimeField, cols: usize, rows: Vec<Vec<u8>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Self { field, rows: nrows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j] as u32
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = (v % self.field.p()) as u8;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| x as u32).collect()).collect()
    }

    pub(crate) fn residue_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ops = RowOps::new(self.field);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u8; other.cols];
            for k in 0..self.cols {
                ops.axpy(&mut acc, self.data[i * self.cols + k], other.row(k));
            }
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&acc);
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let p = self.field.p();
        Ok((0..self.rows)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect())
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let ops = RowOps::new(self.field);
        let mut rows = self.residue_rows();
        let pivots = rref_in_place(&ops, &mut rows, self.cols);
        (Matrix::from_residue_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The inverse of a square matrix, or `None` when it is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let ops = RowOps::new(self.field);
        let mut rows: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u8::from(i == j)));
                r
            })
            .collect();
        if rref_in_place(&ops, &mut rows, n).len() < n {
            return None;
        }
        let rows = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_residue_rows(self.field, n, rows))
    }

    /// A basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&RowOps::new(self.field), &r.residue_rows(), &pivots, self.cols)
    }
}

/// Kernel basis read off an RREF: one vector per free column.
pub(crate) fn kernel_from_rref(ops: &RowOps, rows: &[Vec<u8>], pivots: &[usize], cols: usize) -> Vec<Vec<u8>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u8; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ops.neg(rows[i][free]);
            }
            v
        })
        .collect()
}

/// A particular solution together with a basis of the homogeneous kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u8>,
    pub kernel: Vec<Vec<u8>>,
}

/// A matrix reduced once so that many right-hand sides can be solved
/// later, each at the cost of one matrix-vector product.
///
/// Stores `T` with `T A = R`, `R` the reduced row echelon form of `A`.
#[derive(Clone, Debug)]
pub struct Factorization {
    a: Matrix,
    reduced: Vec<Vec<u8>>,
    transform: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Factorization {
    pub fn new(a: &Matrix) -> Self {
        let ops = RowOps::new(a.field);
        let n = a.rows;
        let mut rows: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = Vec::with_capacity(a.cols + n);
                r.extend_from_slice(a.row(i));
                r.extend((0..n).map(|j| u8::from(i == j)));
                r
            })
            .collect();
        let pivots = rref_in_place(&ops, &mut rows, a.cols);
        let mut reduced = Vec::with_capacity(pivots.len());
        let mut transform = Vec::with_capacity(n);
        for (i, mut r) in rows.into_iter().enumerate() {
            transform.push(r.split_off(a.cols));
            if i < pivots.len() {
                reduced.push(r);
            }
        }
        Self { a: a.clone(), reduced, transform, pivots }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// One solution of `A x = b`, re-verified, or `None`.
    pub fn solve(&self, b: &[u8]) -> Result<Option<Vec<u8>>> {
        if b.len() != self.a.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.a.rows
            )));
        }
        let p = self.a.field.p();
        let y: Vec<u8> = self
            .transform
            .iter()
            .map(|t| {
                let s: u32 = t.iter().zip(b).map(|(&a, &c)| a as u32 * c as u32).sum();
                (s % p) as u8
            })
            .collect();
        if y[self.rank()..].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.a.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = y[i];
        }
        assert_eq!(self.a.mul_vec(&x)?, b, "solution failed re-verification");
        Ok(Some(x))
    }

    /// A basis of the kernel of `A`.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        kernel_from_rref(&RowOps::new(self.a.field), &self.reduced, &self.pivots, self.a.cols)
    }
}

/// Solves `A x = b`. `Ok(None)` means the system is inconsistent.
///
/// Every returned solution has been re-verified by multiplication.
pub fn solve_linear(a: &Matrix, b: &[u8]) -> Result<Option<Solution>> {
    let (mut sols, kernel) = solve_linear_many(a, std::slice::from_ref(&b.to_vec()))?;
    Ok(sols.pop().flatten().map(|particular| Solution { particular, kernel }))
}

/// One particular solution (or `None`) per right-hand side, and a kernel basis.
pub type Solutions = (Vec<Option<Vec<u8>>>, Vec<Vec<u8>>);

/// Solves `A x = b` for several right-hand sides with a single elimination.
/// Returns one particular solution (or `None`) per right-hand side and the
/// shared kernel basis of `A`.
pub fn solve_linear_many(a: &Matrix, bs: &[Vec<u8>]) -> Result<Solutions> {
    let (particular, rows, pivots) = eliminate_augmented(a, bs)?;
    let ops = RowOps::new(a.field);
    let kernel = kernel_from_rref(&ops, &rows, &pivots, a.cols);
    Ok((particular, kernel))
}

/// Like [`solve_linear_many`] without computing the kernel.
pub fn solve_particular_many(a: &Matrix, bs: &[Vec<u8>]) -> Result<Vec<Option<Vec<u8>>>> {
    Ok(eliminate_augmented(a, bs)?.0)
}

type Eliminated = (Vec<Option<Vec<u8>>>, Vec<Vec<u8>>, Vec<usize>);

fn eliminate_augmented(a: &Matrix, bs: &[Vec<u8>]) -> Result<Eliminated> {
    for b in bs {
        if b.len() != a.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                a.rows
            )));
        }
    }
    let ops = RowOps::new(a.field);
    let width = a.cols + bs.len();
    let mut rows: Vec<Vec<u8>> = (0..a.rows)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend_from_slice(a.row(i));
            row.extend(bs.iter().map(|b| b[i]));
            row
        })
        .collect();
    let pivots = rref_in_place(&ops, &mut rows, a.cols);
    let rank = pivots.len();
    let mut out = Vec::with_capacity(bs.len());
    for (k, b) in bs.iter().enumerate() {
        let col = a.cols + k;
        if rows[rank..].iter().any(|row| row[col] != 0) {
            out.push(None);
            continue;
        }
        let mut x = vec![0u8; a.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[i][col];
        }
        assert_eq!(&a.mul_vec(&x)?, b, "solution failed re-verification");
        out.push(Some(x));
    }
    let rows = rows.into_iter().map(|mut r| {
        r.truncate(a.cols);
        r
    });
    Ok((out, rows.collect(), pivots))
}
