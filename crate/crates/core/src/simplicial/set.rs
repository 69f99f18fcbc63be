//! Finite simplicial sets stored by their nondegenerate simplices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::simplex::{compose, epi_mono, is_surjection, surjections, SimplexRef};
use crate::chainalg::{ChainComplex, ChainMap, SparseMatrix};
use crate::error::{invalid, Result};

/// A simplicial set truncated at dimension `top`, given by its nondegenerate
/// simplices and their faces.
///
/// Every simplex of dimension `≤ top` is `σ^* g` for a unique generator `g`;
/// degenerate simplices are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    top: usize,
    /// `faces[q][g][i] = d_i g` for the `g`-th generator of dimension `q ≥ 1`.
    faces: Vec<Vec<Vec<SimplexRef>>>,
    counts: Vec<usize>,
    basepoint: Option<usize>,
}

impl SimplicialSet {
    /// `counts[q]` generators in dimension `q`; `faces[q][g]` lists the `q + 1`
    /// faces of generator `g` (ignored for `q = 0`). Validates ranges and the
    /// simplicial identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn new(top: usize, counts: Vec<usize>, mut faces: Vec<Vec<Vec<SimplexRef>>>, basepoint: Option<usize>) -> Result<Self> {
        if counts.len() != top + 1 {
            return Err(invalid(format!("expected generator counts for dimensions 0..={top}")));
        }
        faces.resize(top + 1, Vec::new());
        if !faces[0].iter().all(|f| f.is_empty()) || (!faces[0].is_empty() && faces[0].len() != counts[0]) {
            return Err(invalid("vertices have no faces"));
        }
        faces[0] = vec![Vec::new(); counts[0]];
        if let Some(b) = basepoint {
            if b >= counts[0] {
                return Err(invalid("basepoint is not a vertex"));
            }
        }
        let x = SimplicialSet { top, faces, counts, basepoint };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        for q in 1..=self.top {
            if self.faces[q].len() != self.counts[q] {
                return Err(invalid(format!("dimension {q}: {} generators but {} face lists", self.counts[q], self.faces[q].len())));
            }
            for (g, fs) in self.faces[q].iter().enumerate() {
                if fs.len() != q + 1 {
                    return Err(invalid(format!("generator {g} in dimension {q} needs {} faces", q + 1)));
                }
                for f in fs {
                    if f.surj.len() != q || !is_surjection(&f.surj) || f.gen >= self.counts[f.gen_dim()] {
                        return Err(invalid(format!("generator {g} in dimension {q} has an ill-formed face {f:?}")));
                    }
                }
            }
        }
        for q in 2..=self.top {
            for g in 0..self.counts[q] {
                let x = SimplexRef::generator(q, g);
                for j in 1..=q {
                    let dj = self.face(&x, j);
                    for i in 0..j {
                        if self.face(&dj, i) != self.face(&self.face(&x, i), j - 1) {
                            return Err(invalid(format!("simplicial identity d{i}d{j} fails on generator {g} in dimension {q}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    /// Number of nondegenerate `q`-simplices (0 above the truncation).
    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Total number of `q`-simplices, degenerate ones included.
    pub fn simplex_count(&self, q: usize) -> usize {
        (0..=q.min(self.top)).map(|p| self.count(p) * surjections(q, p).len()).sum()
    }

    /// `d_i` of the generator `g` of dimension `q ≥ 1`.
    pub fn generator_face(&self, q: usize, g: usize, i: usize) -> &SimplexRef {
        &self.faces[q][g][i]
    }

    /// All `q`-simplices, ordered by generator dimension, generator, then surjection.
    pub fn simplices(&self, q: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for p in 0..=q.min(self.top) {
            let ss = surjections(q, p);
            for g in 0..self.count(p) {
                for s in &ss {
                    out.push(SimplexRef { surj: s.clone(), gen: g });
                }
            }
        }
        out
    }

    /// The basepoint as a totally degenerate `q`-simplex.
    pub fn base_simplex(&self, q: usize) -> Option<SimplexRef> {
        self.basepoint.map(|b| SimplexRef { surj: vec![0; q + 1], gen: b })
    }

    /// `θ^* x` for a monotone `θ: [a] → [q]` with `x` a `q`-simplex.
    pub fn apply(&self, x: &SimplexRef, theta: &[u8]) -> SimplexRef {
        let phi = compose(&x.surj, theta);
        let (rho, image) = epi_mono(&phi);
        let p = x.gen_dim();
        let mut y = SimplexRef::generator(p, x.gen);
        for m in (0..=p as u8).rev() {
            if !image.contains(&m) {
                y = self.single_face(&y, m as usize);
            }
        }
        SimplexRef { surj: compose(&y.surj, &rho), gen: y.gen }
    }

    fn single_face(&self, y: &SimplexRef, i: usize) -> SimplexRef {
        let q = y.dim();
        let phi: Vec<u8> = (0..q).map(|k| y.surj[if k < i { k } else { k + 1 }]).collect();
        let p = y.gen_dim();
        if phi.last().copied() == Some(p as u8) && is_surjection(&phi) {
            return SimplexRef { surj: phi, gen: y.gen };
        }
        // exactly one value j is missed
        let (rho, image) = epi_mono(&phi);
        let j = (0..=p as u8).find(|v| !image.contains(v)).unwrap() as usize;
        let f = &self.faces[p][y.gen][j];
        SimplexRef { surj: compose(&f.surj, &rho), gen: f.gen }
    }

    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        self.single_face(x, i)
    }

    pub fn degeneracy(&self, x: &SimplexRef, j: usize) -> SimplexRef {
        let q = x.dim();
        let sigma: Vec<u8> = (0..=q + 1).map(|k| if k <= j { k as u8 } else { k as u8 - 1 }).collect();
        SimplexRef { surj: compose(&x.surj, &sigma), gen: x.gen }
    }

    /// Number of failures of the face–face and face–degeneracy identities,
    /// checked on every simplex of dimension `≤ through` (capped at `top`).
    pub fn identity_violations(&self, through: usize) -> usize {
        let mut bad = 0;
        for q in 0..=through.min(self.top) {
            for x in self.simplices(q) {
                for j in (1..=q).filter(|_| q >= 2) {
                    for i in 0..j {
                        bad += usize::from(self.face(&self.face(&x, j), i) != self.face(&self.face(&x, i), j - 1));
                    }
                }
                for j in 0..=q {
                    let up = self.degeneracy(&x, j);
                    for i in 0..=q + 1 {
                        let expected = if i < j {
                            self.degeneracy(&self.face(&x, i), j - 1)
                        } else if i == j || i == j + 1 {
                            x.clone()
                        } else {
                            self.degeneracy(&self.face(&x, i - 1), j)
                        };
                        bad += usize::from(self.face(&up, i) != expected);
                    }
                }
            }
        }
        bad
    }

    /// Normalized chains in degrees `0..=top`, basis = generators in index order.
    pub fn chains(&self) -> ChainComplex {
        let ranks = self.counts.clone();
        let diffs = (0..=self.top)
            .map(|q| {
                if q == 0 {
                    return SparseMatrix::zeros(0, ranks[0]);
                }
                let mut trip = Vec::new();
                for g in 0..ranks[q] {
                    for (i, f) in self.faces[q][g].iter().enumerate() {
                        if f.is_nondegenerate() {
                            trip.push((f.gen, g, BigInt::from(if i % 2 == 0 { 1 } else { -1 })));
                        }
                    }
                }
                SparseMatrix::from_triplets(ranks[q - 1], ranks[q], trip)
            })
            .collect();
        ChainComplex::new(0, ranks, diffs).expect("faces satisfy the simplicial identities")
    }

    /// The opposite simplicial set: `d_i^op = d_{q-i}`.
    pub fn opposite(&self) -> SimplicialSet {
        let faces = self.faces.iter().map(|gs| gs.iter().map(|fs| fs.iter().rev().map(reflect).collect()).collect()).collect();
        SimplicialSet { top: self.top, faces, counts: self.counts.clone(), basepoint: self.basepoint }
    }

    /// Reindexes generators of each dimension; `keep[q]` lists the surviving
    /// generators. Fails if the result is not closed under faces.
    pub fn subcomplex(&self, keep: &[Vec<usize>]) -> Result<(SimplicialSet, Vec<Vec<usize>>)> {
        let mut new_index: Vec<Vec<Option<usize>>> = self.counts.iter().map(|&c| vec![None; c]).collect();
        for (q, ks) in keep.iter().enumerate() {
            for (k, &g) in ks.iter().enumerate() {
                new_index[q][g] = Some(k);
            }
        }
        let mut faces = vec![Vec::new(); self.top + 1];
        for q in 1..=self.top {
            for &g in &keep[q] {
                let mut fs = Vec::with_capacity(q + 1);
                for f in &self.faces[q][g] {
                    let k = new_index[f.gen_dim()][f.gen].ok_or_else(|| invalid("subcomplex is not closed under faces"))?;
                    fs.push(SimplexRef { surj: f.surj.clone(), gen: k });
                }
                faces[q].push(fs);
            }
        }
        let basepoint = self.basepoint.and_then(|b| new_index[0][b]);
        let counts = keep.iter().map(|k| k.len()).collect();
        Ok((SimplicialSet { top: self.top, faces, counts, basepoint }, keep.to_vec()))
    }
}

/// The same simplex read in the opposite simplicial set.
pub fn reflect(x: &SimplexRef) -> SimplexRef {
    let q = x.dim();
    let p = x.gen_dim() as u8;
    SimplexRef { surj: (0..=q).map(|i| p - x.surj[q - i]).collect(), gen: x.gen }
}

/// A simplicial map, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    /// `images[q][g]` is the image of the `g`-th `q`-generator.
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Checks dimensions and `f d_i = d_i f` on every generator.
    pub fn new(source: &SimplicialSet, target: &SimplicialSet, images: Vec<Vec<SimplexRef>>) -> Result<Self> {
        if source.top() > target.top() || images.len() != source.top() + 1 {
            return Err(invalid("map needs an image for every dimension of the source"));
        }
        for q in 0..=source.top() {
            if images[q].len() != source.count(q) {
                return Err(invalid(format!("dimension {q}: wrong number of images")));
            }
            for y in &images[q] {
                if y.dim() != q || !is_surjection(&y.surj) || y.gen >= target.count(y.gen_dim()) {
                    return Err(invalid(format!("dimension {q}: image {y:?} is not a simplex of the target")));
                }
            }
        }
        let f = SimplicialMap { images };
        for q in 1..=source.top() {
            for g in 0..source.count(q) {
                for i in 0..=q {
                    let lhs = f.apply(source.generator_face(q, g, i));
                    let rhs = target.face(&f.images[q][g], i);
                    if lhs != rhs {
                        return Err(invalid(format!("map does not commute with d{i} on generator {g} in dimension {q}")));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn apply(&self, x: &SimplexRef) -> SimplexRef {
        let y = &self.images[x.gen_dim()][x.gen];
        SimplexRef { surj: compose(&y.surj, &x.surj), gen: y.gen }
    }

    pub fn image_of_generator(&self, q: usize, g: usize) -> &SimplexRef {
        &self.images[q][g]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let images = self.images.iter().map(|ys| ys.iter().map(|y| other.apply(y)).collect()).collect();
        SimplicialMap { images }
    }

    /// The induced map on normalized chains.
    pub fn chain_map(&self, source: &SimplicialSet, target: &SimplicialSet) -> ChainMap {
        self.chain_map_between(source.chains(), target.chains())
    }

    /// Same as [`SimplicialMap::chain_map`] with precomputed chain complexes.
    pub fn chain_map_between(&self, source: ChainComplex, target: ChainComplex) -> ChainMap {
        let images = &self.images;
        let t = target.clone();
        ChainMap::new(source.clone(), target, |n| {
            let q = n as usize;
            let trip = if n < 0 || q >= images.len() {
                Vec::new()
            } else {
                images[q].iter().enumerate().filter(|(_, y)| y.is_nondegenerate()).map(|(g, y)| (y.gen, g, BigInt::from(1))).collect()
            };
            SparseMatrix::from_triplets(t.rank(n), source.rank(n), trip)
        })
        .expect("simplicial maps induce chain maps")
    }
}

#[cfg(test)]
mod tests {
    use super::super::models::{standard_circle, standard_simplex};
    use super::super::simplex::monotone_maps;
    use super::*;

    #[test]
    fn operators_compose_functorially() {
        let x = standard_simplex(3, 4);
        // (θ ∘ φ)^* = φ^* θ^*
        for q in 0..=3 {
            for s in x.simplices(q) {
                for theta in monotone_maps(2, q) {
                    for phi in monotone_maps(1, 2) {
                        let lhs = x.apply(&s, &compose(&theta, &phi));
                        let rhs = x.apply(&x.apply(&s, &theta), &phi);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn identities_hold_on_every_simplex() {
        assert_eq!(standard_simplex(2, 4).identity_violations(4), 0);
        assert_eq!(standard_circle(4).identity_violations(4), 0);
    }

    #[test]
    fn circle_counts() {
        let s1 = standard_circle(3);
        assert_eq!(s1.simplex_count(2), 3);
        assert_eq!(s1.simplices(2).len(), 3);
        assert_eq!(s1.simplex_count(0), 1);
    }

    #[test]
    fn rejects_broken_identities() {
        // an edge from 0 to 1 and a triangle whose boundary is not a cycle of edges
        let e = |g| SimplexRef::generator(1, g);
        let v = |g| SimplexRef::generator(0, g);
        let bad = SimplicialSet::new(2, vec![2, 1, 1], vec![vec![], vec![vec![v(1), v(0)]], vec![vec![e(0), e(0), e(0)]]], None);
        assert!(bad.is_err());
    }
}
