//! The normalized Loday complex `q ↦ R^{⊗X_q}` (optionally `⊗ M` at the basepoint),
//! graded by weight and filtered by the number of tensor factors in the augmentation ideal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::algebra::{expand_tensor, AlgModule, AugAlgebra, Combination};
use crate::budget::Budget;
use crate::chainalg::{induced_map, smith_normal_form, ChainComplex, ChainMap, Coefficients, Integer, SparseMatrix, Track};
use crate::error::{invalid, Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

#[derive(Debug, Clone)]
pub struct LodayComplex {
    /// Degrees `0..=degree_bound + 1`; homology is meaningful through `degree_bound`.
    pub complex: ChainComplex,
    /// `labels[q][k][s]`: the algebra basis element at simplex `s` of `X_q` in basis tensor `k`;
    /// with coefficients, the basepoint position holds a module basis element instead.
    pub labels: Vec<Vec<Vec<usize>>>,
    /// `filtration[q][k]`: how many algebra factors of basis tensor `k` lie in the augmentation ideal.
    pub filtration: Vec<Vec<u32>>,
    pub degree_bound: usize,
    pub max_weight: u32,
    pub coefficients: Coefficients,
    /// Index of the basepoint simplex in each degree, when built with coefficients.
    pub base: Option<Vec<usize>>,
    pub(crate) levels: Levels,
}

/// The Loday complex of `algebra` over `x` through degree `degree_bound`, in weights up to `max_weight`.
pub fn loday_complex(algebra: &AugAlgebra, x: &SimplicialSet, degree_bound: usize, max_weight: u32, budget: &Budget) -> Result<LodayComplex> {
    build(algebra, None, x, degree_bound, max_weight, budget)
}

/// The Loday complex with coefficients in `module`, placed at the basepoint of the reduced set `x`.
pub fn loday_with_coefficients(
    algebra: &AugAlgebra,
    module: &AlgModule,
    x: &SimplicialSet,
    degree_bound: usize,
    max_weight: u32,
    budget: &Budget,
) -> Result<LodayComplex> {
    if x.count(0) != 1 || x.basepoint() != Some(0) {
        return Err(invalid("coefficients need a reduced pointed simplicial set"));
    }
    build(algebra, Some(module), x, degree_bound, max_weight, budget)
}

/// The simplices of `X` through some degree with their face and degeneracy maps as index tables.
#[derive(Debug, Clone)]
pub(crate) struct Levels {
    pub(crate) faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[q][j][s]`: the index of `s_j s` in `X_{q+1}`, for `q < top`.
    pub(crate) degeneracies: Vec<Vec<Vec<usize>>>,
    /// `degenerate[q][j][s]`: simplex `s` of `X_q` lies in the image of `s_j`.
    pub(crate) degenerate: Vec<Vec<Vec<bool>>>,
    pub(crate) base: Vec<usize>,
    pub(crate) sizes: Vec<usize>,
}

impl Levels {
    fn new(x: &SimplicialSet, top: usize) -> Self {
        let sims: Vec<Vec<SimplexRef>> = (0..=top).map(|q| x.simplices(q)).collect();
        let index: Vec<BTreeMap<&SimplexRef, usize>> = sims.iter().map(|ss| ss.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for q in 1..=top {
            faces.push((0..=q).map(|i| sims[q].iter().map(|s| index[q - 1][&x.face(s, i)]).collect()).collect());
        }
        let degeneracies: Vec<Vec<Vec<usize>>> =
            (0..top).map(|q| (0..=q).map(|j| sims[q].iter().map(|s| index[q + 1][&x.degeneracy(s, j)]).collect()).collect()).collect();
        let mut degenerate = vec![Vec::new()];
        for q in 1..=top {
            degenerate.push(
                degeneracies[q - 1]
                    .iter()
                    .map(|image| {
                        let mut hit = vec![false; sims[q].len()];
                        for &s in image {
                            hit[s] = true;
                        }
                        hit
                    })
                    .collect(),
            );
        }
        let base = (0..=top).map(|q| x.base_simplex(q).map_or(0, |b| index[q][&b])).collect();
        Levels { faces, degeneracies, degenerate, base, sizes: sims.iter().map(Vec::len).collect() }
    }

    /// Whether a tensor over `X_q` lies in the image of a degeneracy, ignoring the position `skip`.
    pub(crate) fn is_degenerate(&self, q: usize, t: &[usize], skip: Option<usize>) -> bool {
        q > 0 && self.degenerate[q].iter().any(|hit| t.iter().enumerate().all(|(s, &e)| Some(s) == skip || e == 0 || hit[s]))
    }
}

fn build(
    algebra: &AugAlgebra,
    module: Option<&AlgModule>,
    x: &SimplicialSet,
    degree_bound: usize,
    max_weight: u32,
    budget: &Budget,
) -> Result<LodayComplex> {
    let top = degree_bound + 1;
    if x.top() < top {
        return Err(invalid(format!("degree bound {degree_bound} needs the simplicial set through dimension {top}")));
    }
    let levels = Levels::new(x, top);
    let mut labels = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let basis = normalized_basis(algebra, module, &levels, q, max_weight, budget)?;
        labels.push(basis);
    }
    let index: Vec<BTreeMap<&[usize], usize>> = labels.iter().map(|ts| ts.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect()).collect();
    let mut diffs = vec![SparseMatrix::zeros(0, labels[0].len())];
    for q in 1..=top {
        let mut trip = Vec::new();
        for (col, t) in labels[q].iter().enumerate() {
            for i in 0..=q {
                let sign = if i % 2 == 0 { Integer::one() } else { -Integer::one() };
                for (image, c) in face_image(algebra, module, &levels, q, i, t) {
                    if let Some(&row) = index[q - 1].get(image.as_slice()) {
                        trip.push((row, col, &sign * c));
                    }
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(labels[q - 1].len(), labels[q].len(), trip));
    }
    let is_base = |q: usize, s: usize| module.is_some() && levels.base[q] == s;
    let weight_of = |q: usize, t: &[usize]| -> u32 {
        t.iter().enumerate().map(|(s, &e)| if is_base(q, s) { module.unwrap().weights[e] } else { algebra.weights[e] }).sum()
    };
    let weights: Vec<Vec<u32>> = labels.iter().enumerate().map(|(q, ts)| ts.iter().map(|t| weight_of(q, t)).collect()).collect();
    let filtration = labels
        .iter()
        .enumerate()
        .map(|(q, ts)| ts.iter().map(|t| t.iter().enumerate().filter(|&(s, &e)| !is_base(q, s) && e != 0).count() as u32).collect())
        .collect();
    let ranks = labels.iter().map(Vec::len).collect();
    let complex = ChainComplex::with_weights(0, ranks, diffs, weights)?;
    Ok(LodayComplex {
        complex,
        labels,
        filtration,
        degree_bound,
        max_weight,
        coefficients: algebra.coefficients,
        base: module.map(|_| levels.base.clone()),
        levels,
    })
}

/// Basis tensors of degree `q` of weight at most `max_weight` that are not in the image of any degeneracy.
fn normalized_basis(
    algebra: &AugAlgebra,
    module: Option<&AlgModule>,
    levels: &Levels,
    q: usize,
    max_weight: u32,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let positions = levels.sizes[q];
    let base = module.map(|_| levels.base[q]);
    let mut out = Vec::new();
    let mut cur = vec![0; positions];
    let mut search = BasisSearch { algebra, module, base, levels, q, max_weight, budget, out: &mut out };
    search.assign(0, 0, &mut cur)?;
    Ok(out)
}

struct BasisSearch<'a> {
    algebra: &'a AugAlgebra,
    module: Option<&'a AlgModule>,
    base: Option<usize>,
    levels: &'a Levels,
    q: usize,
    max_weight: u32,
    budget: &'a Budget,
    out: &'a mut Vec<Vec<usize>>,
}

impl BasisSearch<'_> {
    fn assign(&mut self, pos: usize, used: u32, cur: &mut Vec<usize>) -> Result<()> {
        if pos == cur.len() {
            if !self.is_degenerate(cur) {
                if self.out.len() >= self.budget.max_block_rank {
                    return Err(Error::Budget(format!("more than {} basis tensors in degree {}", self.budget.max_block_rank, self.q)));
                }
                self.out.push(cur.clone());
            }
            return Ok(());
        }
        let weights = match (self.base, self.module) {
            (Some(b), Some(m)) if b == pos => &m.weights,
            _ => &self.algebra.weights,
        };
        for (e, &w) in weights.iter().enumerate() {
            if used + w <= self.max_weight {
                cur[pos] = e;
                self.assign(pos + 1, used + w, cur)?;
            }
        }
        cur[pos] = 0;
        Ok(())
    }

    fn is_degenerate(&self, t: &[usize]) -> bool {
        self.levels.is_degenerate(self.q, t, self.base)
    }
}

/// `d_i` of one basis tensor, before discarding degenerate terms.
fn face_image(algebra: &AugAlgebra, module: Option<&AlgModule>, levels: &Levels, q: usize, i: usize, t: &[usize]) -> Vec<(Vec<usize>, Integer)> {
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); levels.sizes[q - 1]];
    for (s, &e) in t.iter().enumerate() {
        if module.is_some() && s == levels.base[q] {
            continue;
        }
        fibers[levels.faces[q][i][s]].push(e);
    }
    let parts: Vec<Combination> = fibers
        .into_iter()
        .enumerate()
        .map(|(z, fib)| {
            let product = algebra.multiply_all(fib);
            match module {
                Some(m) if z == levels.base[q - 1] => m.act_combination(&product, &[(t[levels.base[q]], Integer::one())]),
                _ => product,
            }
        })
        .collect();
    expand_tensor(&parts)
}

impl LodayComplex {
    fn keep(&self, select: impl Fn(u32) -> bool) -> Vec<Vec<usize>> {
        self.filtration.iter().map(|tags| (0..tags.len()).filter(|&k| select(tags[k])).collect()).collect()
    }

    /// `F_n`: basis tensors with at most `n` factors in the augmentation ideal, with the basis indices kept.
    pub fn weight_filtration(&self, n: u32) -> (ChainComplex, Vec<Vec<usize>>) {
        let keep = self.keep(|tag| tag <= n);
        // selecting rows and columns of a subcomplex spanned by basis vectors gives the subcomplex
        (self.complex.quotient_on(&keep), keep)
    }

    /// The inclusion `F_n → L`.
    pub fn filtration_inclusion(&self, n: u32) -> Result<ChainMap> {
        let (sub, keep) = self.weight_filtration(n);
        let ranks: Vec<usize> = self.filtration.iter().map(Vec::len).collect();
        ChainMap::new(sub, self.complex.clone(), |deg| {
            let k = deg as usize;
            SparseMatrix::from_triplets(ranks[k], keep[k].len(), keep[k].iter().enumerate().map(|(col, &row)| (row, col, Integer::one())))
        })
    }

    /// `F_n / F_{n-1}`, spanned by the basis tensors with exactly `n` factors in the augmentation ideal.
    pub fn weight_layer(&self, n: u32) -> ChainComplex {
        self.complex.quotient_on(&self.keep(|tag| tag == n))
    }

    /// `L / F_n`.
    pub fn filtration_quotient(&self, n: u32) -> ChainComplex {
        self.complex.quotient_on(&self.keep(|tag| tag > n))
    }

    /// For a Loday complex over a circle model: `slots[q][s]` is the Hochschild position
    /// `0..=q` of simplex `s` of `X_q`, so that `d_i` multiplies positions `i` and `i + 1`
    /// (positions `q` and `0` for `i = q`). Other simplicial sets are rejected.
    pub fn hochschild_slots(&self) -> Result<Vec<Vec<usize>>> {
        let lv = &self.levels;
        let not_circle = || Error::Unsupported("Hochschild positions need the simplicial circle".into());
        let base_of = |q: usize| lv.base[q];
        let mut slots: Vec<Vec<usize>> = Vec::with_capacity(lv.sizes.len());
        for q in 0..lv.sizes.len() {
            if lv.sizes[q] != q + 1 {
                return Err(not_circle());
            }
            let mut row = vec![usize::MAX; q + 1];
            for (s, slot) in row.iter_mut().enumerate() {
                // the number of d_0 steps that reach the basepoint
                let (mut cur, mut deg, mut steps) = (s, q, 0);
                while cur != base_of(deg) {
                    cur = lv.faces[deg][0][cur];
                    deg -= 1;
                    steps += 1;
                }
                *slot = steps;
            }
            let mut seen = row.clone();
            seen.sort_unstable();
            if seen != (0..=q).collect::<Vec<_>>() {
                return Err(not_circle());
            }
            if q > 0 {
                for i in 0..=q {
                    for s in 0..=q {
                        let p = row[s];
                        let expected = if i == q {
                            if p == q {
                                0
                            } else {
                                p
                            }
                        } else if p > i {
                            p - 1
                        } else {
                            p
                        };
                        if slots[q - 1][lv.faces[q][i][s]] != expected {
                            return Err(not_circle());
                        }
                    }
                }
            }
            slots.push(row);
        }
        Ok(slots)
    }

    /// Largest filtration tag of any basis tensor.
    pub fn max_tag(&self) -> u32 {
        self.filtration.iter().flatten().copied().max().unwrap_or(0)
    }

    /// The least `n` such that `F_m → L` induces an isomorphism on rational `H_i` for every `m ≥ n`.
    pub fn convergence_level(&self, i: usize) -> Result<u32> {
        let mut level = self.max_tag();
        while level > 0 {
            let m = induced_map(&self.filtration_inclusion(level - 1)?, i as i64)?;
            if m.nrows() != m.ncols() || smith_normal_form(&m, Track::NONE).rank() != m.nrows() {
                break;
            }
            level -= 1;
        }
        Ok(level)
    }
}

/// Homology of a Loday-type complex through `bound`, one `(degree, weight, rank)` entry per nonzero group,
/// where rank is over `k` (torsion is ignored here).
pub fn betti_table(c: &ChainComplex, bound: usize, k: Coefficients) -> Result<Vec<(usize, u32, usize)>> {
    let mut out = Vec::new();
    for w in c.weight_support() {
        let (block, _) = c.weight_block(w);
        for n in 0..=bound {
            let r = crate::chainalg::homology(&block.padded(0, bound as i64 + 1), n as i64, k)?;
            if r.betti > 0 {
                out.push((n, w, r.betti));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Total ranks per degree `0..=bound`, summed over weights.
pub fn betti_by_degree(c: &ChainComplex, bound: usize, k: Coefficients) -> Result<Vec<usize>> {
    let mut out = vec![0; bound + 1];
    for (n, _, b) in betti_table(c, bound, k)? {
        out[n] += b;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_circle, standard_sphere};

    fn q() -> Coefficients {
        Coefficients::Rationals
    }

    #[test]
    fn ground_ring_has_homology_in_degree_zero() {
        let k = AugAlgebra::ground(q());
        for x in [standard_circle(4), standard_sphere(2, 4).unwrap()] {
            let l = loday_complex(&k, &x, 3, 3, &Budget::default()).unwrap();
            assert_eq!(betti_by_degree(&l.complex, 3, q()).unwrap(), [1, 0, 0, 0]);
        }
    }

    #[test]
    fn dual_numbers_on_the_circle() {
        let r = AugAlgebra::truncated_polynomial(q(), 2).unwrap();
        let l = loday_complex(&r, &standard_circle(4), 3, 4, &Budget::default()).unwrap();
        assert_eq!(betti_by_degree(&l.complex, 3, q()).unwrap(), [2, 1, 1, 1]);
        // gr_1 is spanned by x (degree 0) and 1⊗x (degree 1), with d(1⊗x) = x − x = 0
        assert_eq!(betti_by_degree(&l.weight_layer(1), 3, q()).unwrap(), [1, 1, 0, 0]);
        let k = AlgModule::augmentation(&r);
        let lk = loday_with_coefficients(&r, &k, &standard_circle(3), 2, 4, &Budget::default()).unwrap();
        assert_eq!(betti_by_degree(&lk.complex, 2, q()).unwrap(), [1, 1, 1]);
    }

    #[test]
    fn polynomial_ring_follows_hkr() {
        let r = AugAlgebra::polynomial(q(), 1, 4).unwrap();
        let l = loday_complex(&r, &standard_circle(4), 3, 4, &Budget::default()).unwrap();
        let table = betti_table(&l.complex, 3, q()).unwrap();
        let expected: Vec<(usize, u32, usize)> = (0..=4).map(|w| (0, w, 1)).chain((1..=4).map(|w| (1, w, 1))).collect();
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(table, expected);
    }

    #[test]
    fn free_coefficients_match_plain_complex() {
        let r = AugAlgebra::truncated_polynomial(Coefficients::Integers, 3).unwrap();
        let x = standard_circle(4);
        let plain = loday_complex(&r, &x, 3, 4, &Budget::default()).unwrap();
        let with = loday_with_coefficients(&r, &AlgModule::free(&r), &x, 3, 4, &Budget::default()).unwrap();
        for k in [Coefficients::Integers, Coefficients::Prime(3)] {
            assert_eq!(betti_table(&plain.complex, 3, k).unwrap(), betti_table(&with.complex, 3, k).unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = AugAlgebra::polynomial(q(), 2, 4).unwrap();
        let tiny = Budget { max_block_rank: 10, ..Budget::default() };
        assert!(matches!(loday_complex(&r, &standard_circle(4), 3, 4, &tiny), Err(Error::Budget(_))));
    }

    #[test]
    fn circle_positions_follow_the_cyclic_bar_faces() {
        let r = AugAlgebra::truncated_polynomial(q(), 2).unwrap();
        let l = loday_complex(&r, &standard_circle(5), 3, 4, &Budget::default()).unwrap();
        let slots = l.hochschild_slots().unwrap();
        assert_eq!(slots.len(), 5);
        assert_eq!(slots[0], [0]);
        let s2 = loday_complex(&r, &standard_sphere(2, 5).unwrap(), 3, 4, &Budget::default()).unwrap();
        assert!(matches!(s2.hochschild_slots(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn filtration_converges_two_steps_above_the_degree() {
        // chains of degree ≤ i + 1 carry at most i + 2 ideal factors
        let r = AugAlgebra::polynomial(q(), 2, 3).unwrap();
        let l = loday_complex(&r, &standard_circle(4), 3, 3, &Budget::default()).unwrap();
        let levels: Vec<u32> = (0..=2).map(|i| l.convergence_level(i).unwrap()).collect();
        assert!(levels.iter().enumerate().all(|(i, &n)| n <= i as u32 + 2), "{levels:?}");
        assert!(levels[0] > 0);
    }

    #[test]
    fn filtration_is_exhaustive_and_starts_with_the_unit() {
        let r = AugAlgebra::truncated_polynomial(q(), 3).unwrap();
        let l = loday_complex(&r, &standard_circle(4), 3, 4, &Budget::default()).unwrap();
        let (f0, _) = l.weight_filtration(0);
        assert_eq!(betti_by_degree(&f0, 3, q()).unwrap(), [1, 0, 0, 0]);
        let (f_all, _) = l.weight_filtration(5);
        assert_eq!(f_all, l.complex);
        l.filtration_inclusion(2).unwrap();
    }
}
