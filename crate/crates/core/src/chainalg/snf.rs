//! Smith normal form of sparse integer matrices.
//!
//! Elimination pivots on unit entries first, choosing the one with the
//! smallest Markowitz cost `(row_len - 1) * (col_len - 1)`, and falls back to
//! Euclidean reduction on the smallest remaining entry. Transformation
//! certificates are tracked only when requested, since they dominate the cost
//! on large boundary matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{Integer, SparseMatrix, SparseVec};

/// Which transformation matrices to record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Track {
    pub left: bool,
    pub right: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, right: false };
    pub const BOTH: Track = Track { left: true, right: true };
    pub const LEFT: Track = Track { left: true, right: false };
    pub const RIGHT: Track = Track { left: false, right: true };
}

/// `U · M · V = D` with `D` diagonal, diagonal entries `d_1 | d_2 | …`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub nrows: usize,
    pub ncols: usize,
    /// Nonzero diagonal entries, positive, in divisibility order.
    pub diagonal: Vec<Integer>,
    /// `(U, U⁻¹)` when the left side was tracked.
    pub left: Option<(SparseMatrix, SparseMatrix)>,
    /// `(V, V⁻¹)` when the right side was tracked.
    pub right: Option<(SparseMatrix, SparseMatrix)>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors strictly greater than one.
    pub fn torsion(&self) -> Vec<Integer> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.nrows, self.ncols, self.diagonal.iter().enumerate().map(|(i, d)| (i, i, d.clone())))
    }

    /// Checks `U·M·V = D` and `U·U⁻¹ = V·V⁻¹ = 1` exactly.
    pub fn verify(&self, m: &SparseMatrix) -> bool {
        let (Some((u, ui)), Some((v, vi))) = (&self.left, &self.right) else {
            return false;
        };
        u.mul(m).mul(v) == self.diagonal_matrix()
            && u.mul(ui) == SparseMatrix::identity(self.nrows)
            && v.mul(vi) == SparseMatrix::identity(self.ncols)
            && self.diagonal.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && self.diagonal.iter().all(|d| d.is_positive())
    }
}

type Row = BTreeMap<usize, Integer>;

fn identity_rows(n: usize) -> Vec<Row> {
    (0..n).map(|i| core::iter::once((i, Integer::one())).collect()).collect()
}

fn row_axpy(rows: &mut [Row], t: usize, s: usize, c: &Integer) {
    debug_assert_ne!(t, s);
    let src: Vec<(usize, Integer)> = rows[s].iter().map(|(j, v)| (*j, v * c)).collect();
    let dst = &mut rows[t];
    for (j, v) in src {
        let e = dst.entry(j).or_insert_with(Integer::zero);
        *e += v;
        if e.is_zero() {
            dst.remove(&j);
        }
    }
}

fn rows_to_matrix(rows: Vec<Row>, ncols: usize) -> SparseMatrix {
    let nrows = rows.len();
    SparseMatrix::from_rows(nrows, ncols, rows.into_iter().map(|r| r.into_iter().collect::<SparseVec>()).collect())
}

struct Work {
    nrows: usize,
    ncols: usize,
    rows: Vec<Row>,
    cols: Vec<BTreeSet<usize>>,
    u: Option<Vec<Row>>,
    uinv_t: Option<Vec<Row>>,
    v_t: Option<Vec<Row>>,
    vinv: Option<Vec<Row>>,
}

impl Work {
    fn new(m: &SparseMatrix, track: Track) -> Self {
        let mut rows = Vec::with_capacity(m.nrows());
        let mut cols = alloc::vec![BTreeSet::new(); m.ncols()];
        for (i, r) in m.rows().iter().enumerate() {
            for (j, _) in r {
                cols[*j].insert(i);
            }
            rows.push(r.iter().cloned().collect::<Row>());
        }
        Work {
            nrows: m.nrows(),
            ncols: m.ncols(),
            rows,
            cols,
            u: track.left.then(|| identity_rows(m.nrows())),
            uinv_t: track.left.then(|| identity_rows(m.nrows())),
            v_t: track.right.then(|| identity_rows(m.ncols())),
            vinv: track.right.then(|| identity_rows(m.ncols())),
        }
    }

    fn entry(&self, i: usize, j: usize) -> Integer {
        self.rows[i].get(&j).cloned().unwrap_or_else(Integer::zero)
    }

    /// row_t += c · row_s
    fn row_add(&mut self, t: usize, s: usize, c: &Integer) {
        if c.is_zero() {
            return;
        }
        let src: Vec<(usize, Integer)> = self.rows[s].iter().map(|(j, v)| (*j, v * c)).collect();
        for (j, v) in src {
            let e = self.rows[t].entry(j).or_insert_with(Integer::zero);
            *e += v;
            if e.is_zero() {
                self.rows[t].remove(&j);
                self.cols[j].remove(&t);
            } else {
                self.cols[j].insert(t);
            }
        }
        if let Some(u) = &mut self.u {
            row_axpy(u, t, s, c);
        }
        if let Some(ui) = &mut self.uinv_t {
            row_axpy(ui, s, t, &-c);
        }
    }

    /// col_t += c · col_s
    fn col_add(&mut self, t: usize, s: usize, c: &Integer) {
        if c.is_zero() {
            return;
        }
        let touched: Vec<usize> = self.cols[s].iter().copied().collect();
        for i in touched {
            let add = &self.rows[i][&s] * c;
            let e = self.rows[i].entry(t).or_insert_with(Integer::zero);
            *e += add;
            if e.is_zero() {
                self.rows[i].remove(&t);
                self.cols[t].remove(&i);
            } else {
                self.cols[t].insert(i);
            }
        }
        if let Some(v) = &mut self.v_t {
            row_axpy(v, t, s, c);
        }
        if let Some(vi) = &mut self.vinv {
            row_axpy(vi, s, t, &-c);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for v in self.rows[i].values_mut() {
            *v = -&*v;
        }
        for m in [&mut self.u, &mut self.uinv_t].into_iter().flatten() {
            for v in m[i].values_mut() {
                *v = -&*v;
            }
        }
    }

    fn pick_pivot(&self, active_rows: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let mut best_unit: Option<(usize, (usize, usize))> = None;
        let mut best_small: Option<(Integer, usize, (usize, usize))> = None;
        for &i in active_rows {
            let rlen = self.rows[i].len();
            for (j, v) in &self.rows[i] {
                let cost = (rlen - 1) * (self.cols[*j].len() - 1);
                let a = v.abs();
                if a.is_one() {
                    if best_unit.as_ref().is_none_or(|b| cost < b.0) {
                        best_unit = Some((cost, (i, *j)));
                        if cost == 0 {
                            return Some((i, *j));
                        }
                    }
                } else if best_unit.is_none() && best_small.as_ref().is_none_or(|b| a < b.0 || (a == b.0 && cost < b.1)) {
                    best_small = Some((a, cost, (i, *j)));
                }
            }
        }
        best_unit.map(|b| b.1).or(best_small.map(|b| b.2))
    }

    /// Clears row and column of the pivot, moving the pivot to smaller
    /// entries of its row or column until it divides everything there.
    fn eliminate(&mut self, mut pr: usize, mut pc: usize) -> (usize, usize) {
        loop {
            let p = self.entry(pr, pc);
            let others: Vec<usize> = self.cols[pc].iter().copied().filter(|&i| i != pr).collect();
            let mut smallest: Option<(Integer, usize)> = None;
            for i in others {
                let a = self.entry(i, pc);
                let (q, r) = a.div_mod_floor(&p);
                self.row_add(i, pr, &-q);
                if !r.is_zero() && smallest.as_ref().is_none_or(|s| r.abs() < s.0) {
                    smallest = Some((r.abs(), i));
                }
            }
            if let Some((_, i)) = smallest {
                pr = i;
                continue;
            }
            let others: Vec<usize> = self.rows[pr].keys().copied().filter(|&j| j != pc).collect();
            let mut smallest: Option<(Integer, usize)> = None;
            for j in others {
                let b = self.entry(pr, j);
                let (q, r) = b.div_mod_floor(&p);
                self.col_add(j, pc, &-q);
                if !r.is_zero() && smallest.as_ref().is_none_or(|s| r.abs() < s.0) {
                    smallest = Some((r.abs(), j));
                }
            }
            match smallest {
                Some((_, j)) => pc = j,
                None => return (pr, pc),
            }
        }
    }
}

/// Computes the Smith normal form of `m`, tracking the requested certificates.
pub fn smith_normal_form(m: &SparseMatrix, track: Track) -> SmithForm {
    let mut w = Work::new(m, track);
    let mut active: BTreeSet<usize> = (0..w.nrows).filter(|&i| !w.rows[i].is_empty()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    while let Some((r, c)) = w.pick_pivot(&active) {
        let (r, c) = w.eliminate(r, c);
        if w.entry(r, c).is_negative() {
            w.row_neg(r);
        }
        active.remove(&r);
        w.cols[c].clear();
        pivots.push((r, c));
        active.retain(|&i| !w.rows[i].is_empty());
    }

    let mut diagonal: Vec<Integer> = pivots.iter().map(|&(r, c)| w.entry(r, c)).collect();

    // Permute pivots onto the leading diagonal.
    let row_order = leading_order(w.nrows, pivots.iter().map(|p| p.0));
    let col_order = leading_order(w.ncols, pivots.iter().map(|p| p.1));
    let permute = |rows: Vec<Row>, order: &[usize]| -> Vec<Row> {
        let mut slots: Vec<Option<Row>> = rows.into_iter().map(Some).collect();
        order.iter().map(|&i| slots[i].take().unwrap()).collect()
    };
    let mut u = w.u.take().map(|m| permute(m, &row_order));
    let mut uinv_t = w.uinv_t.take().map(|m| permute(m, &row_order));
    let mut v_t = w.v_t.take().map(|m| permute(m, &col_order));
    let mut vinv = w.vinv.take().map(|m| permute(m, &col_order));

    // Diagonal to divisibility order through 2x2 gcd/lcm moves.
    let k = diagonal.len();
    for i in 0..k {
        for j in i + 1..k {
            if diagonal[j].is_multiple_of(&diagonal[i]) {
                continue;
            }
            let (a, b) = (diagonal[i].clone(), diagonal[j].clone());
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            if let (Some(u), Some(uit)) = (&mut u, &mut uinv_t) {
                mix_rows(u, i, j, [&s, &t, &-&bg, &ag]);
                mix_rows(uit, i, j, [&ag, &bg, &-&t, &s]);
            }
            if let (Some(vt), Some(vi)) = (&mut v_t, &mut vinv) {
                mix_rows(vt, i, j, [&Integer::one(), &Integer::one(), &-(&t * &bg), &(&s * &ag)]);
                mix_rows(vi, i, j, [&(&s * &ag), &(&t * &bg), &-Integer::one(), &Integer::one()]);
            }
            diagonal[j] = &a * &bg;
            diagonal[i] = g;
        }
    }

    let left = match (u, uinv_t) {
        (Some(u), Some(uit)) => Some((rows_to_matrix(u, w.nrows), rows_to_matrix(uit, w.nrows).transpose())),
        _ => None,
    };
    let right = match (v_t, vinv) {
        (Some(vt), Some(vi)) => Some((rows_to_matrix(vt, w.ncols).transpose(), rows_to_matrix(vi, w.ncols))),
        _ => None,
    };
    SmithForm { nrows: w.nrows, ncols: w.ncols, diagonal, left, right }
}

/// Invariant factors only (no certificates).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<Integer> {
    smith_normal_form(m, Track::NONE).diagonal
}

/// An integer matrix `L` with `L · m = 1`, when `m` has full column rank and
/// its image is a direct summand.
pub fn integral_left_inverse(m: &SparseMatrix) -> Option<SparseMatrix> {
    let s = smith_normal_form(m, Track::BOTH);
    if s.rank() != m.ncols() || s.diagonal.iter().any(|d| !d.is_one()) {
        return None;
    }
    let pad = s.diagonal_matrix().transpose();
    let (u, _) = s.left?;
    let (v, _) = s.right?;
    Some(v.mul(&pad).mul(&u))
}

fn leading_order(n: usize, leading: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut seen = alloc::vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for i in leading {
        seen[i] = true;
        order.push(i);
    }
    order.extend((0..n).filter(|&i| !seen[i]));
    order
}

/// rows (i, j) ← [[c0, c1], [c2, c3]] · rows (i, j)
fn mix_rows(m: &mut [Row], i: usize, j: usize, c: [&Integer; 4]) {
    let ri = core::mem::take(&mut m[i]);
    let rj = core::mem::take(&mut m[j]);
    let combine = |x: &Integer, y: &Integer| -> Row {
        let mut out = Row::new();
        for (k, v) in &ri {
            out.insert(*k, v * x);
        }
        for (k, v) in &rj {
            let e = out.entry(*k).or_insert_with(Integer::zero);
            *e += v * y;
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    m[i] = combine(c[0], c[1]);
    m[j] = combine(c[2], c[3]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m, Track::BOTH);
        assert_eq!(s.diagonal, ints(&[1, 6]));
        assert!(s.verify(&m));
    }

    #[test]
    fn identity_and_zero() {
        let m = SparseMatrix::identity(4);
        assert_eq!(invariant_factors(&m), ints(&[1, 1, 1, 1]));
        let z = SparseMatrix::zeros(3, 2);
        let s = smith_normal_form(&z, Track::BOTH);
        assert!(s.diagonal.is_empty());
        assert!(s.verify(&z));
    }

    #[test]
    fn euclidean_fallback() {
        let m = SparseMatrix::from_dense(&[vec![4, 6], vec![6, 9], vec![2, 8]]);
        let s = smith_normal_form(&m, Track::BOTH);
        assert!(s.verify(&m));
        // gcd of entries is 1, gcd of 2x2 minors is 10
        assert_eq!(s.diagonal, ints(&[1, 10]));
    }
}
