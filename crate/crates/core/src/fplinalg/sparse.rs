use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fppoly::PrimeField;

use super::matrix::{solve_linear_many, solve_particular_many, Matrix, Solutions};

/// A linear system given column by column, solved block by block.
///
/// Rows and columns are split into the connected components of the
/// row/column incidence graph; each component is an independent dense
/// system. Graded polynomial systems (multiplication by a few sparse
/// generators) fall apart into many small components this way.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    field: PrimeField,
    nrows: usize,
    columns: Vec<Vec<(usize, u8)>>,
}

/// Per right-hand side, a solution or `None`; and, when requested, a basis
/// of the kernel.
pub type SparseSolution = (Vec<Option<Vec<u8>>>, Option<Vec<Vec<u8>>>);

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SparseSystem {
    pub fn new(field: PrimeField, nrows: usize) -> Self {
        Self { field, nrows, columns: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Appends a column given by its nonzero entries; returns its index.
    pub fn push_column(&mut self, entries: Vec<(usize, u8)>) -> Result<usize> {
        if let Some(&(r, _)) = entries.iter().find(|(r, _)| *r >= self.nrows) {
            return Err(Error::DimensionMismatch(format!("row {r} outside {} rows", self.nrows)));
        }
        let p = self.field.p() as u8;
        self.columns.push(entries.into_iter().map(|(r, c)| (r, c % p)).filter(|&(_, c)| c != 0).collect());
        Ok(self.columns.len() - 1)
    }

    fn blocks(&self) -> (Vec<Block>, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.nrows).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for col in &self.columns {
            if let Some(&(first, _)) = col.first() {
                let a = find(&mut parent, first);
                for &(r, _) in &col[1..] {
                    let b = find(&mut parent, r);
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut block_of_root = vec![usize::MAX; self.nrows];
        let mut blocks: Vec<Block> = Vec::new();
        let mut empty_cols = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let Some(&(first, _)) = col.first() else {
                empty_cols.push(j);
                continue;
            };
            let root = find(&mut parent, first);
            if block_of_root[root] == usize::MAX {
                block_of_root[root] = blocks.len();
                blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
            }
            blocks[block_of_root[root]].cols.push(j);
        }
        for r in 0..self.nrows {
            let root = find(&mut parent, r);
            if block_of_root[root] != usize::MAX {
                blocks[block_of_root[root]].rows.push(r);
            }
        }
        (blocks, empty_cols)
    }

    /// Rows touched by no column; a right-hand side must vanish there.
    fn uncovered_rows(&self) -> Vec<bool> {
        let mut covered = vec![false; self.nrows];
        for col in &self.columns {
            for &(r, _) in col {
                covered[r] = true;
            }
        }
        covered
    }

    fn local_matrix(&self, block: &Block) -> Matrix {
        let mut local_row = vec![usize::MAX; self.nrows];
        for (i, &r) in block.rows.iter().enumerate() {
            local_row[r] = i;
        }
        let mut m = Matrix::zeros(self.field, block.rows.len(), block.cols.len());
        for (j, &c) in block.cols.iter().enumerate() {
            for &(r, v) in &self.columns[c] {
                m.set(local_row[r], j, v as u32);
            }
        }
        m
    }

    /// Solves `A x = b` for every `b` in `rhs` (dense, length `nrows`).
    /// Every returned solution is re-verified against the full system.
    pub fn solve(&self, rhs: &[Vec<u8>], want_kernel: bool) -> Result<SparseSolution> {
        for b in rhs {
            if b.len() != self.nrows {
                return Err(Error::DimensionMismatch(format!(
                    "right-hand side of length {}, expected {}",
                    b.len(),
                    self.nrows
                )));
            }
        }
        let (blocks, empty_cols) = self.blocks();
        let covered = self.uncovered_rows();
        let ncols = self.ncols();
        let per_block: Vec<Solutions> = blocks
            .par_iter()
            .map(|block| {
                let m = self.local_matrix(block);
                let local_rhs: Vec<Vec<u8>> = rhs.iter().map(|b| block.rows.iter().map(|&r| b[r]).collect()).collect();
                if want_kernel {
                    solve_linear_many(&m, &local_rhs)
                } else {
                    solve_particular_many(&m, &local_rhs).map(|s| (s, Vec::new()))
                }
            })
            .collect::<Result<_>>()?;

        let mut solutions = Vec::with_capacity(rhs.len());
        for (k, b) in rhs.iter().enumerate() {
            if (0..self.nrows).any(|r| !covered[r] && b[r] != 0) {
                solutions.push(None);
                continue;
            }
            let mut x = vec![0u8; ncols];
            let mut ok = true;
            for (block, (sols, _)) in blocks.iter().zip(&per_block) {
                match &sols[k] {
                    Some(local) => {
                        for (&c, &v) in block.cols.iter().zip(local) {
                            x[c] = v;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                assert_eq!(&self.apply(&x), b, "block solution failed re-verification");
                solutions.push(Some(x));
            } else {
                solutions.push(None);
            }
        }

        let kernel = want_kernel.then(|| {
            let mut kernel = Vec::new();
            for (block, (_, local_kernel)) in blocks.iter().zip(&per_block) {
                for kv in local_kernel {
                    let mut v = vec![0u8; ncols];
                    for (&c, &a) in block.cols.iter().zip(kv) {
                        v[c] = a;
                    }
                    kernel.push(v);
                }
            }
            for &c in &empty_cols {
                let mut v = vec![0u8; ncols];
                v[c] = 1;
                kernel.push(v);
            }
            kernel
        });
        Ok((solutions, kernel))
    }

    /// `A x`.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let p = self.field.p();
        let mut acc = vec![0u32; self.nrows];
        for (col, &xj) in self.columns.iter().zip(x) {
            if xj == 0 {
                continue;
            }
            for &(r, v) in col {
                acc[r] = (acc[r] + v as u32 * xj as u32) % p;
            }
        }
        acc.into_iter().map(|v| v as u8).collect()
    }

    pub fn rank(&self) -> usize {
        let (blocks, _) = self.blocks();
        blocks.par_iter().map(|b| self.local_matrix(b).rank()).sum()
    }
}
