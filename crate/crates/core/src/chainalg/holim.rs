//! Homotopy limits of diagrams of chain complexes over finite posets.
//!
//! For a covariant diagram `D: P → Ch` the derived limit is computed by the
//! Roos (cosimplicial replacement) total complex: one summand `D(a_s)` for
//! every strict chain `a_0 < … < a_s`, placed in total degree `p − s` for
//! internal degree `p`. The cosimplicial coboundary is
//!
//! `(δx)(b_0<…<b_{s+1}) = Σ_{i≤s} (−1)^i x(…b̂_i…) + (−1)^{s+1} D(b_s→b_{s+1}) x(b_0<…<b_s)`
//!
//! and the total differential is `d + (−1)^p δ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::complex::{ChainComplex, ChainMap};
use super::matrix::{Integer, SparseMatrix};
use crate::error::{invalid, Error, Result};

/// A finite partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the poset from a relation, checking it is a partial order.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let table: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        for a in 0..n {
            if !table[a][a] {
                return Err(invalid(format!("relation is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && table[a][b] && table[b][a] {
                    return Err(invalid(format!("relation is not antisymmetric at ({a},{b})")));
                }
                for c in 0..n {
                    if table[a][b] && table[b][c] && !table[a][c] {
                        return Err(invalid(format!("relation is not transitive at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FinitePoset { leq: table })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// All strict chains, shortest first, lexicographic within a length.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut all: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|a| vec![a]).collect();
        while let Some(c) = stack.pop() {
            let top = *c.last().unwrap();
            for b in (0..n).rev() {
                if self.lt(top, b) {
                    let mut d = c.clone();
                    d.push(b);
                    stack.push(d);
                }
            }
            all.push(c);
        }
        all.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        all
    }

    /// Minimum element, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.leq(a, b)))
    }
}

/// A functor `P → Ch`: a complex per element and a chain map per strict relation.
#[derive(Debug, Clone)]
pub struct PosetDiagram {
    pub poset: FinitePoset,
    pub values: Vec<ChainComplex>,
    pub maps: BTreeMap<(usize, usize), ChainMap>,
}

impl PosetDiagram {
    /// Checks that every strict relation carries a map with matching ends and
    /// that all triangles `a < b < c` commute.
    pub fn new(poset: FinitePoset, values: Vec<ChainComplex>, maps: BTreeMap<(usize, usize), ChainMap>) -> Result<Self> {
        let n = poset.len();
        if values.len() != n {
            return Err(invalid("one value per poset element expected"));
        }
        for a in 0..n {
            for b in 0..n {
                if !poset.lt(a, b) {
                    continue;
                }
                let f = maps.get(&(a, b)).ok_or_else(|| invalid(format!("missing map for {a} < {b}")))?;
                if f.source() != &values[a] || f.target() != &values[b] {
                    return Err(invalid(format!("map for {a} < {b} has the wrong ends")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !(poset.lt(a, b) && poset.lt(b, c)) {
                        continue;
                    }
                    let (ab, bc, ac) = (&maps[&(a, b)], &maps[&(b, c)], &maps[&(a, c)]);
                    let lo = values[a].lo().min(values[c].lo());
                    let hi = values[a].hi().max(values[c].hi());
                    for deg in lo..=hi {
                        if bc.component(deg).mul(&ab.component(deg)) != ac.component(deg) {
                            return Err(Error::NonCommuting(format!("square {a} < {b} < {c} in degree {deg}")));
                        }
                    }
                }
            }
        }
        Ok(PosetDiagram { poset, values, maps })
    }

    fn structure(&self, a: usize, b: usize, deg: i64) -> SparseMatrix {
        self.maps[&(a, b)].component(deg)
    }
}

/// The Roos total complex together with its block layout.
#[derive(Debug, Clone)]
pub struct HomotopyLimit {
    pub complex: ChainComplex,
    pub chains: Vec<Vec<usize>>,
    /// `(chain index, internal degree) → offset` inside total degree `p − s`.
    offsets: BTreeMap<(usize, i64), usize>,
}

impl HomotopyLimit {
    /// Offset of the block for `chain` at internal degree `p`, if nonzero.
    pub fn offset(&self, chain: usize, p: i64) -> Option<usize> {
        self.offsets.get(&(chain, p)).copied()
    }

    pub fn chain_index(&self, chain: &[usize]) -> Option<usize> {
        self.chains.binary_search_by(|c| c.len().cmp(&chain.len()).then_with(|| c.as_slice().cmp(chain))).ok()
    }
}

/// `holim_P D` as the Roos total complex.
pub fn poset_holim(diagram: &PosetDiagram) -> HomotopyLimit {
    let chains = diagram.poset.chains();
    let top = |c: &Vec<usize>| *c.last().unwrap();

    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for c in &chains {
        let v = &diagram.values[top(c)];
        let s = c.len() as i64 - 1;
        if v.hi() >= v.lo() {
            lo = lo.min(v.lo() - s);
            hi = hi.max(v.hi() - s);
        }
    }
    if lo > hi {
        return HomotopyLimit { complex: ChainComplex::zero(), chains, offsets: BTreeMap::new() };
    }

    let mut offsets = BTreeMap::new();
    let mut ranks = vec![0usize; (hi - lo + 1) as usize];
    for (ci, c) in chains.iter().enumerate() {
        let v = &diagram.values[top(c)];
        let s = c.len() as i64 - 1;
        for p in v.lo()..=v.hi() {
            let r = v.rank(p);
            if r == 0 {
                continue;
            }
            let k = (p - s - lo) as usize;
            offsets.insert((ci, p), ranks[k]);
            ranks[k] += r;
        }
    }

    let index: BTreeMap<&[usize], usize> = chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut trip: Vec<Vec<(usize, usize, Integer)>> = vec![Vec::new(); ranks.len()];
    let n = diagram.poset.len();
    for (ci, c) in chains.iter().enumerate() {
        let a_top = top(c);
        let v = &diagram.values[a_top];
        let s = c.len() as i64 - 1;
        for p in v.lo()..=v.hi() {
            let Some(&off) = offsets.get(&(ci, p)) else { continue };
            let k = (p - s - lo) as usize;
            let sign_p = if p.rem_euclid(2) == 0 { Integer::one() } else { -Integer::one() };
            // internal differential
            if let Some(&off_low) = offsets.get(&(ci, p - 1)) {
                for (i, j, x) in v.differential(p).triplets() {
                    trip[k].push((off_low + i, off + j, x.clone()));
                }
            }
            // coboundary: insert one element below the top...
            for pos in 0..c.len() {
                let lower = if pos == 0 { None } else { Some(c[pos - 1]) };
                for b in 0..n {
                    let fits = diagram.poset.lt(b, c[pos]) && lower.is_none_or(|l| diagram.poset.lt(l, b));
                    if !fits {
                        continue;
                    }
                    let mut t = c.clone();
                    t.insert(pos, b);
                    let ti = index[t.as_slice()];
                    let Some(&off_t) = offsets.get(&(ti, p)) else { continue };
                    let coef = if pos % 2 == 0 { sign_p.clone() } else { -sign_p.clone() };
                    for j in 0..v.rank(p) {
                        trip[k].push((off_t + j, off + j, coef.clone()));
                    }
                }
            }
            // ...or above it, through the structure map
            for b in 0..n {
                if !diagram.poset.lt(a_top, b) {
                    continue;
                }
                let mut t = c.clone();
                t.push(b);
                let ti = index[t.as_slice()];
                let Some(&off_t) = offsets.get(&(ti, p)) else { continue };
                let sign = if (s + 1) % 2 == 0 { sign_p.clone() } else { -sign_p.clone() };
                for (i, j, x) in diagram.structure(a_top, b, p).triplets() {
                    trip[k].push((off_t + i, off + j, &sign * x));
                }
            }
        }
    }
    let diffs: Vec<SparseMatrix> = trip
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            SparseMatrix::from_triplets(below, ranks[k], t)
        })
        .collect();
    let complex = ChainComplex::new(lo, ranks, diffs).expect("Roos differential squares to zero");
    HomotopyLimit { complex, chains, offsets }
}

/// The map `A → holim D` induced by a cone `φ_a: A → D(a)`
/// (requires `D(a→b) ∘ φ_a = φ_b`).
pub fn cone_to_holim(source: &ChainComplex, cone: &[ChainMap], diagram: &PosetDiagram, holim: &HomotopyLimit) -> Result<ChainMap> {
    for (&(a, b), f) in &diagram.maps {
        let lo = source.lo();
        for deg in lo..=source.hi() {
            if f.component(deg).mul(&cone[a].component(deg)) != cone[b].component(deg) {
                return Err(Error::NonCommuting(format!("cone leg {a} → {b} in degree {deg}")));
            }
        }
    }
    ChainMap::new(source.clone(), holim.complex.clone(), |deg| {
        let mut trip = Vec::new();
        for (ci, c) in holim.chains.iter().enumerate() {
            if c.len() != 1 {
                continue;
            }
            if let Some(off) = holim.offset(ci, deg) {
                for (i, j, x) in cone[c[0]].component(deg).triplets() {
                    trip.push((off + i, j, x.clone()));
                }
            }
        }
        SparseMatrix::from_triplets(holim.complex.rank(deg), source.rank(deg), trip)
    })
}

/// The map of Roos complexes induced by an order embedding `g: P → P'` and
/// components `η_a: D(a) → D'(g a)` commuting with the structure maps.
pub fn holim_map(
    src_diagram: &PosetDiagram,
    src: &HomotopyLimit,
    tgt_diagram: &PosetDiagram,
    tgt: &HomotopyLimit,
    g: &[usize],
    eta: &[ChainMap],
) -> Result<ChainMap> {
    for (&(a, b), f) in &src_diagram.maps {
        if !tgt_diagram.poset.lt(g[a], g[b]) {
            return Err(invalid(format!("element map does not preserve {a} < {b}")));
        }
        let h = &tgt_diagram.maps[&(g[a], g[b])];
        let v = &src_diagram.values[a];
        for deg in v.lo()..=v.hi() {
            if h.component(deg).mul(&eta[a].component(deg)) != eta[b].component(deg).mul(&f.component(deg)) {
                return Err(Error::NonCommuting(format!("naturality square {a} → {b} in degree {deg}")));
            }
        }
    }
    ChainMap::new(src.complex.clone(), tgt.complex.clone(), |deg| {
        let mut trip = Vec::new();
        for (ci, c) in src.chains.iter().enumerate() {
            let s = c.len() as i64 - 1;
            let p = deg + s;
            let Some(off) = src.offset(ci, p) else { continue };
            let image: Vec<usize> = c.iter().map(|&a| g[a]).collect();
            let ti = tgt.chain_index(&image).expect("order embedding maps chains to chains");
            let Some(off_t) = tgt.offset(ti, p) else { continue };
            for (i, j, x) in eta[*c.last().unwrap()].component(p).triplets() {
                trip.push((off_t + i, off + j, x.clone()));
            }
        }
        SparseMatrix::from_triplets(tgt.complex.rank(deg), src.complex.rank(deg), trip)
    })
}

/// Projection `holim_P D → holim_Q D|_Q` onto the chains lying in the full
/// subposet `keep` (given as a sorted list of elements of `P`).
pub fn restrict_holim(src: &HomotopyLimit, keep: &[usize], sub_diagram: &PosetDiagram, sub: &HomotopyLimit) -> Result<ChainMap> {
    ChainMap::new(src.complex.clone(), sub.complex.clone(), |deg| {
        let mut trip = Vec::new();
        for (ci, c) in src.chains.iter().enumerate() {
            let Ok(local): core::result::Result<Vec<usize>, ()> = c.iter().map(|a| keep.binary_search(a).map_err(|_| ())).collect() else {
                continue;
            };
            let s = c.len() as i64 - 1;
            let p = deg + s;
            let (Some(off), Some(ti)) = (src.offset(ci, p), sub.chain_index(&local)) else { continue };
            let Some(off_t) = sub.offset(ti, p) else { continue };
            let width = sub_diagram.values[*local.last().unwrap()].rank(p);
            for j in 0..width {
                trip.push((off_t + j, off + j, Integer::one()));
            }
        }
        SparseMatrix::from_triplets(sub.complex.rank(deg), src.complex.rank(deg), trip)
    })
}
