//! Sparse integer matrices and vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;

/// A sparse vector: sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Integer)>;

/// Adds `coef * src` into `dst`, keeping `dst` sorted and free of zeros.
pub fn axpy(dst: &SparseVec, coef: &Integer, src: &SparseVec) -> SparseVec {
    if coef.is_zero() {
        return dst.clone();
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, coef * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + coef * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from_entries(mut entries: Vec<(usize, Integer)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Row-major sparse integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, [", self.nrows, self.ncols)?;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                write!(f, " ({i},{j})={v}")?;
            }
        }
        write!(f, " ])")
    }
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Integer::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, Integer)>) -> Self {
        let mut buckets: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) outside {nrows}x{ncols}");
            buckets[r].push((c, v));
        }
        let rows = buckets.into_iter().map(sparse_from_entries).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_rows(nrows: usize, ncols: usize, rows: Vec<SparseVec>) -> Self {
        assert_eq!(rows.len(), nrows);
        debug_assert!(rows.iter().all(|r| r.iter().all(|(c, v)| *c < ncols && !v.is_zero())));
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let nrows = dense.len();
        let ncols = dense.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            dense
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| (i, j, Integer::from(*v)))),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        let mut out = vec![vec![Integer::zero(); self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Integer::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Integer)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                rows[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Integer)> = Vec::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        acc.push((*j, a * b));
                    }
                }
                sparse_from_entries(acc)
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let dense: alloc::collections::BTreeMap<usize, &Integer> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut s = Integer::zero();
            for (j, a) in row {
                if let Some(x) = dense.get(j) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let one = Integer::one();
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, &one, b)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn scale(&self, c: &Integer) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zeros(self.nrows, self.ncols);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect()).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&-Integer::one()))
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, which: &[usize]) -> SparseMatrix {
        let rows = which.iter().map(|&i| self.rows[i].clone()).collect();
        SparseMatrix { nrows: which.len(), ncols: self.ncols, rows }
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_cols(&self, which: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &j) in which.iter().enumerate() {
            pos[j] = k;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| sparse_from_entries(r.iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, v)| (pos[*j], v.clone())).collect()))
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: which.len(), rows }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &SparseMatrix, b: &SparseMatrix, c: &SparseMatrix, d: &SparseMatrix) -> SparseMatrix {
        assert_eq!(a.nrows, b.nrows);
        assert_eq!(c.nrows, d.nrows);
        assert_eq!(a.ncols, c.ncols);
        assert_eq!(b.ncols, d.ncols);
        let off = a.ncols;
        let mut rows = Vec::with_capacity(a.nrows + c.nrows);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            let mut r = ra.clone();
            r.extend(rb.iter().map(|(j, v)| (j + off, v.clone())));
            rows.push(r);
        }
        for (rc, rd) in c.rows.iter().zip(&d.rows) {
            let mut r = rc.clone();
            r.extend(rd.iter().map(|(j, v)| (j + off, v.clone())));
            rows.push(r);
        }
        SparseMatrix { nrows: a.nrows + c.nrows, ncols: a.ncols + b.ncols, rows }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        self.rows.iter().enumerate().filter_map(|(i, r)| r.binary_search_by_key(&j, |e| e.0).ok().map(|k| (i, r[k].1.clone()))).collect()
    }

    pub fn max_abs_entry(&self) -> Integer {
        self.triplets().map(|(_, _, v)| v.abs()).max().unwrap_or_else(Integer::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 3]]);
        let b = SparseMatrix::from_dense(&[vec![4, 0], vec![1, -1]]);
        assert_eq!(a.mul(&b), SparseMatrix::from_dense(&[vec![6, -2], vec![3, -3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.sub(&a), SparseMatrix::zeros(2, 2));
    }

    #[test]
    fn axpy_cancels() {
        let x: SparseVec = vec![(0, 1.into()), (3, 2.into())];
        let y: SparseVec = vec![(3, 1.into()), (5, 1.into())];
        assert_eq!(axpy(&x, &Integer::from(-2), &y), vec![(0, 1.into()), (5, Integer::from(-2))]);
    }
}
