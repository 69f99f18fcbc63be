//! The Eilenberg–Zilber shuffle product on a Loday complex without coefficients.
//!
//! Levelwise multiplication `R^{⊗X_q} ⊗ R^{⊗X_q} → R^{⊗X_q}` makes the Loday construction a
//! simplicial commutative algebra, and the shuffle map turns it into a product on normalized chains:
//! `a · b = Σ sign(μ, ν) (s_ν a)(s_μ b)` over `(p, q)`-shuffles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::algebra::{expand_tensor, AugAlgebra, Combination};
use super::complex::LodayComplex;
use crate::chainalg::{sparse_from_entries, Integer, SparseMatrix};
use crate::error::{invalid, Error, Result};

pub struct ShuffleProduct<'a> {
    algebra: &'a AugAlgebra,
    loday: &'a LodayComplex,
    index: Vec<BTreeMap<&'a [usize], usize>>,
}

/// Outcome of checking `F_n · F_m ⊆ F_{n+m}` on basis pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiltrationCheck {
    pub pairs: usize,
    /// `(p, a, q, b)` for each pair whose product has a term of too high a tag.
    pub violations: Vec<(usize, usize, usize, usize)>,
}

impl<'a> ShuffleProduct<'a> {
    /// `loday` must have been built from `algebra` without module coefficients.
    pub fn new(algebra: &'a AugAlgebra, loday: &'a LodayComplex) -> Result<Self> {
        if loday.base.is_some() {
            return Err(Error::Unsupported("the shuffle product needs a Loday complex without coefficients".into()));
        }
        let index = loday.labels.iter().map(|ts| ts.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect()).collect();
        Ok(ShuffleProduct { algebra, loday, index })
    }

    /// Highest degree in which products are available.
    pub fn top(&self) -> usize {
        self.loday.labels.len() - 1
    }

    fn weight(&self, q: usize, k: usize) -> u32 {
        self.loday.labels[q][k].iter().map(|&e| self.algebra.weights[e]).sum()
    }

    fn degenerate(&self, q: usize, t: &[usize], j: usize) -> Vec<usize> {
        let image = &self.loday.levels.degeneracies[q][j];
        let mut out = vec![0; self.loday.levels.sizes[q + 1]];
        for (s, &e) in t.iter().enumerate() {
            out[image[s]] = e;
        }
        out
    }

    /// Applies `s_{j_1}`, then `s_{j_2}`, and so on.
    fn degenerate_along(&self, mut q: usize, t: &[usize], js: &[usize]) -> Vec<usize> {
        let mut cur = t.to_vec();
        for &j in js {
            cur = self.degenerate(q, &cur, j);
            q += 1;
        }
        cur
    }

    /// The product of basis tensor `a` of degree `p` with basis tensor `b` of degree `q`.
    pub fn multiply(&self, p: usize, a: usize, q: usize, b: usize) -> Result<Combination> {
        let n = p + q;
        if n > self.top() {
            return Err(invalid(format!("products of degrees {p} and {q} need the complex through degree {n}")));
        }
        if self.weight(p, a) + self.weight(q, b) > self.loday.max_weight {
            return Err(invalid(format!("product leaves the weight range 0..={}", self.loday.max_weight)));
        }
        let (ta, tb) = (&self.loday.labels[p][a], &self.loday.labels[q][b]);
        let mut terms = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != p {
                continue;
            }
            let (mu, nu): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| mask >> i & 1 == 1);
            let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
            let sign = if inversions.is_multiple_of(2) { Integer::one() } else { -Integer::one() };
            let left = self.degenerate_along(p, ta, &nu);
            let right = self.degenerate_along(q, tb, &mu);
            let parts: Vec<Combination> = left.iter().zip(&right).map(|(&x, &y)| self.algebra.product(x, y).clone()).collect();
            for (t, c) in expand_tensor(&parts) {
                if self.loday.levels.is_degenerate(n, &t, None) {
                    continue;
                }
                let k = *self.index[n].get(t.as_slice()).ok_or_else(|| invalid("product term missing from the normalized basis"))?;
                terms.push((k, &sign * c));
            }
        }
        Ok(sparse_from_entries(terms))
    }

    /// The product as a matrix from `L_p ⊗ L_q` (column `a · rank_q + b`) to `L_{p+q}`,
    /// on pairs within the weight range; other columns are zero.
    pub fn matrix(&self, p: usize, q: usize) -> Result<SparseMatrix> {
        let (rp, rq) = (self.loday.labels[p].len(), self.loday.labels[q].len());
        let mut trip = Vec::new();
        for a in 0..rp {
            for b in 0..rq {
                if self.weight(p, a) + self.weight(q, b) > self.loday.max_weight {
                    continue;
                }
                for (row, c) in self.multiply(p, a, q, b)? {
                    trip.push((row, a * rq + b, c));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(self.loday.labels[p + q].len(), rp * rq, trip))
    }

    /// Checks that every product of basis tensors of total degree at most `max_total`
    /// (and total weight in range) has filtration tag at most the sum of the factors' tags.
    pub fn check_filtration(&self, max_total: usize) -> Result<FiltrationCheck> {
        let tags = &self.loday.filtration;
        let mut report = FiltrationCheck::default();
        for n in 0..=max_total.min(self.top()) {
            for p in 0..=n {
                let q = n - p;
                for a in 0..tags[p].len() {
                    for b in 0..tags[q].len() {
                        if self.weight(p, a) + self.weight(q, b) > self.loday.max_weight {
                            continue;
                        }
                        report.pairs += 1;
                        let bound = tags[p][a] + tags[q][b];
                        if self.multiply(p, a, q, b)?.iter().any(|&(k, _)| tags[n][k] > bound) {
                            report.violations.push((p, a, q, b));
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}
