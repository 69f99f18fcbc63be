//! Bounded chain complexes of free modules and chain maps between them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::matrix::{Integer, SparseMatrix};
use crate::error::{invalid, Result};

/// A bounded complex `C_hi → … → C_lo` of finitely generated free modules.
///
/// `diffs[k]` is `d: C_{lo+k} → C_{lo+k-1}`; the differential out of the
/// lowest degree is the zero map to the zero module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<SparseMatrix>,
    weights: Option<Vec<Vec<u32>>>,
    modulus: Option<u64>,
}

impl ChainComplex {
    /// Builds a complex from degree `lo` upward; `diffs[k]` maps degree
    /// `lo + k` to `lo + k - 1` (so `diffs[0]` must have zero rows).
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        let c = ChainComplex { lo, ranks, diffs, weights: None, modulus: None };
        c.validate()?;
        Ok(c)
    }

    /// Same as [`ChainComplex::new`] with a weight attached to every basis element.
    pub fn with_weights(lo: i64, ranks: Vec<usize>, diffs: Vec<SparseMatrix>, weights: Vec<Vec<u32>>) -> Result<Self> {
        let c = ChainComplex { lo, ranks, diffs, weights: Some(weights), modulus: None };
        c.validate()?;
        Ok(c)
    }

    /// The zero complex.
    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: Vec::new(), diffs: Vec::new(), weights: None, modulus: None }
    }

    fn validate(&self) -> Result<()> {
        if self.ranks.len() != self.diffs.len() {
            return Err(invalid("one differential per degree expected"));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let below = if k == 0 { 0 } else { self.ranks[k - 1] };
            if d.nrows() != below || d.ncols() != self.ranks[k] {
                return Err(invalid(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    self.lo + k as i64,
                    d.nrows(),
                    d.ncols(),
                    below,
                    self.ranks[k]
                )));
            }
        }
        for k in 1..self.diffs.len() {
            let sq = self.diffs[k - 1].mul(&self.diffs[k]);
            let vanishes = match self.modulus {
                None => sq.is_zero(),
                Some(p) => sq.triplets().all(|(_, _, v)| (v % Integer::from(p)).is_zero()),
            };
            if !vanishes {
                return Err(invalid(format!("d∘d ≠ 0 out of degree {}", self.lo + k as i64)));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.ranks.len() || w.iter().zip(&self.ranks).any(|(w, r)| w.len() != *r) {
                return Err(invalid("weight labels do not match ranks"));
            }
            for (k, d) in self.diffs.iter().enumerate().skip(1) {
                if d.triplets().any(|(i, j, _)| w[k - 1][i] != w[k][j]) {
                    return Err(invalid(format!("differential out of degree {} mixes weights", self.lo + k as i64)));
                }
            }
        }
        Ok(())
    }

    /// Reinterprets the complex over `F_p`: entries are reduced into `[0, p)` and
    /// `d ∘ d` only has to vanish modulo `p`.
    pub fn over_prime(lo: i64, ranks: Vec<usize>, diffs: Vec<SparseMatrix>, weights: Option<Vec<Vec<u32>>>, p: u64) -> Result<Self> {
        let modp = Integer::from(p);
        let diffs = diffs
            .into_iter()
            .map(|d| {
                let (r, c) = (d.nrows(), d.ncols());
                SparseMatrix::from_triplets(r, c, d.triplets().map(|(i, j, v)| (i, j, v.mod_floor(&modp))).collect::<Vec<_>>())
            })
            .collect();
        let c = ChainComplex { lo, ranks, diffs, weights, modulus: Some(p) };
        c.validate()?;
        Ok(c)
    }

    /// `Some(p)` for complexes that only make sense over `F_p`.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Lowest degree with a (possibly zero) term.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a (possibly zero) term; `lo - 1` when empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, deg: i64) -> usize {
        self.index(deg).map_or(0, |k| self.ranks[k])
    }

    fn index(&self, deg: i64) -> Option<usize> {
        let k = deg - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// `d: C_deg → C_{deg-1}`, the zero matrix outside the stored range.
    pub fn differential(&self, deg: i64) -> SparseMatrix {
        match self.index(deg) {
            Some(k) if k > 0 => self.diffs[k].clone(),
            _ => SparseMatrix::zeros(self.rank(deg - 1), self.rank(deg)),
        }
    }

    pub fn weights(&self, deg: i64) -> Option<&[u32]> {
        let k = self.index(deg)?;
        self.weights.as_ref().map(|w| w[k].as_slice())
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weights occurring anywhere in the complex, sorted.
    pub fn weight_support(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.weights.iter().flatten().flatten().copied().collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// The direct summand of weight `w`, with the basis indices it keeps in each degree.
    pub fn weight_block(&self, w: u32) -> (ChainComplex, Vec<Vec<usize>>) {
        let Some(weights) = &self.weights else {
            let keep = self.ranks.iter().map(|&r| (0..r).collect()).collect();
            return (self.clone(), keep);
        };
        let keep: Vec<Vec<usize>> = weights.iter().map(|ws| (0..ws.len()).filter(|&i| ws[i] == w).collect()).collect();
        self.subcomplex_on(&keep, Some(w))
    }

    /// Restriction to basis subsets spanning a subcomplex (the caller guarantees closure).
    pub fn subcomplex_on(&self, keep: &[Vec<usize>], weight: Option<u32>) -> (ChainComplex, Vec<Vec<usize>>) {
        let ranks: Vec<usize> = keep.iter().map(Vec::len).collect();
        let diffs = (0..ranks.len())
            .map(|k| if k == 0 { SparseMatrix::zeros(0, ranks[0]) } else { self.diffs[k].select_rows(&keep[k - 1]).select_cols(&keep[k]) })
            .collect();
        let weights = weight.map(|w| ranks.iter().map(|&r| vec![w; r]).collect());
        (ChainComplex { lo: self.lo, ranks, diffs, weights, modulus: self.modulus }, keep.to_vec())
    }

    /// Quotient by the subcomplex spanned by basis vectors *not* in `keep`
    /// (the caller guarantees that those span a subcomplex).
    pub fn quotient_on(&self, keep: &[Vec<usize>]) -> ChainComplex {
        let ranks: Vec<usize> = keep.iter().map(Vec::len).collect();
        let diffs = (0..ranks.len())
            .map(|k| if k == 0 { SparseMatrix::zeros(0, ranks[0]) } else { self.diffs[k].select_rows(&keep[k - 1]).select_cols(&keep[k]) })
            .collect();
        let weights = self.weights.as_ref().map(|w| keep.iter().enumerate().map(|(k, idx)| idx.iter().map(|&i| w[k][i]).collect()).collect());
        ChainComplex { lo: self.lo, ranks, diffs, weights, modulus: self.modulus }
    }

    /// Shift so that the old degree `n` becomes `n + s`.
    pub fn shift(&self, s: i64) -> ChainComplex {
        ChainComplex { lo: self.lo + s, ..self.clone() }
    }

    /// Σ (-1)^n rank C_n.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| if n.rem_euclid(2) == 0 { self.rank(n) as i64 } else { -(self.rank(n) as i64) }).sum()
    }

    /// Degrees `[lo, hi]` padded to cover `[a, b]`.
    pub fn padded(&self, a: i64, b: i64) -> ChainComplex {
        let lo = a.min(self.lo);
        let hi = b.max(self.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo..=hi).map(|n| if n == lo { SparseMatrix::zeros(0, self.rank(n)) } else { self.differential(n) }).collect();
        let weights = self.weights.as_ref().map(|_| (lo..=hi).map(|n| self.weights(n).map_or(Vec::new(), <[u32]>::to_vec)).collect());
        ChainComplex { lo, ranks, diffs, weights, modulus: self.modulus }
    }

    /// Direct sum `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                if n == lo {
                    SparseMatrix::zeros(0, ranks[0])
                } else {
                    let a = self.differential(n);
                    let b = other.differential(n);
                    SparseMatrix::block(&a, &SparseMatrix::zeros(a.nrows(), b.ncols()), &SparseMatrix::zeros(b.nrows(), a.ncols()), &b)
                }
            })
            .collect();
        ChainComplex { lo, ranks, diffs, weights: None, modulus: self.modulus }
    }
}

/// A degree-preserving map of chain complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    /// `components(n)` must be a `rank_target(n) × rank_source(n)` matrix.
    /// Checks that the map commutes with the differentials.
    pub fn new(source: ChainComplex, target: ChainComplex, mut components: impl FnMut(i64) -> SparseMatrix) -> Result<Self> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps: Vec<SparseMatrix> = (lo..=hi).map(&mut components).collect();
        let f = ChainMap { source, target, lo, maps };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        for n in self.lo..=self.lo + self.maps.len() as i64 - 1 {
            let m = self.component(n);
            if m.nrows() != self.target.rank(n) || m.ncols() != self.source.rank(n) {
                return Err(invalid(format!("chain map component in degree {n} has the wrong shape")));
            }
        }
        for n in self.lo..=self.lo + self.maps.len() as i64 {
            let lhs = self.target.differential(n).mul(&self.component(n));
            let rhs = self.component(n - 1).mul(&self.source.differential(n));
            if lhs != rhs {
                return Err(invalid(format!("chain map does not commute with d in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap::new(c.clone(), c.clone(), |n| SparseMatrix::identity(c.rank(n))).expect("identity is a chain map")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), |n| SparseMatrix::zeros(target.rank(n), source.rank(n))).expect("zero is a chain map")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> SparseMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            SparseMatrix::zeros(self.target.rank(n), self.source.rank(n))
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(invalid("composable maps must share the middle complex"));
        }
        ChainMap::new(self.source.clone(), other.target.clone(), |n| other.component(n).mul(&self.component(n)))
    }

    /// `self - other`.
    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap> {
        ChainMap::new(self.source.clone(), self.target.clone(), |n| self.component(n).sub(&other.component(n)))
    }
}

/// The mapping fiber `Fib(f)` as the shifted cone: `Fib_n = A_n ⊕ B_{n+1}`,
/// `d(a, b) = (d a, f a − d b)`, with the projection `Fib → A`.
#[derive(Debug, Clone)]
pub struct MappingFiber {
    pub complex: ChainComplex,
    /// `Fib → A`, the first coordinate.
    pub projection: ChainMap,
    /// `B[1] → Fib` on the underlying modules: `b ↦ (0, b)`; recorded as
    /// `(degree, rank of A in that degree)` offsets.
    pub offsets: Vec<(i64, usize)>,
}

pub fn mapping_fiber(f: &ChainMap) -> MappingFiber {
    let a = f.source();
    let b = f.target();
    let lo = a.lo().min(b.lo() - 1);
    let hi = a.hi().max(b.hi() - 1);
    let ranks: Vec<usize> = (lo..=hi).map(|n| a.rank(n) + b.rank(n + 1)).collect();
    let diffs: Vec<SparseMatrix> = (lo..=hi)
        .map(|n| {
            if n == lo {
                return SparseMatrix::zeros(0, ranks[0]);
            }
            let da = a.differential(n);
            let db = b.differential(n + 1).scale(&-Integer::one());
            let fa = f.component(n);
            SparseMatrix::block(&da, &SparseMatrix::zeros(da.nrows(), db.ncols()), &fa, &db)
        })
        .collect();
    let complex = ChainComplex::new(lo, ranks, diffs).expect("cone differential squares to zero");
    let projection = ChainMap::new(complex.clone(), a.clone(), |n| {
        let ra = a.rank(n);
        let rb = b.rank(n + 1);
        SparseMatrix::block(&SparseMatrix::identity(ra), &SparseMatrix::zeros(ra, rb), &SparseMatrix::zeros(0, ra), &SparseMatrix::zeros(0, rb))
    })
    .expect("projection is a chain map");
    let offsets = (lo..=hi).map(|n| (n, a.rank(n))).collect();
    MappingFiber { complex, projection, offsets }
}

/// The map of fibers induced by a commuting square `g ∘ top = bottom ∘ f`,
/// where `source = Fib(f)` and `target = Fib(g)`: `(a, b) ↦ (top a, bottom b)`.
pub fn fiber_map(source: &MappingFiber, target: &MappingFiber, top: &ChainMap, bottom: &ChainMap) -> Result<ChainMap> {
    let split = |fib: &MappingFiber, n: i64| {
        let a = fib.projection.target().rank(n);
        (a, fib.complex.rank(n) - a)
    };
    ChainMap::new(source.complex.clone(), target.complex.clone(), |n| {
        let (sa, sb) = split(source, n);
        let (ta, tb) = split(target, n);
        SparseMatrix::block(&top.component(n), &SparseMatrix::zeros(ta, sb), &SparseMatrix::zeros(tb, sa), &bottom.component(n + 1))
    })
}
