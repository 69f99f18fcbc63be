//! `C^{≤n}_X([m])` as the Roos homotopy limit of `V ↦ C_*(X^V)` over the
//! subsets `V ⊆ [m]` with `|V| ≤ n`, ordered by reverse inclusion, with the
//! coordinate projections as structure maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::chainalg::{cone_to_holim, poset_holim, ChainComplex, ChainMap, FinitePoset, HomotopyLimit, Integer, PosetDiagram, SparseMatrix};
use crate::error::{invalid, Error, Result};
use crate::simplicial::{ProductSet, SimplexRef, SimplicialSet};

#[derive(Debug, Clone)]
pub struct TruncatedPower {
    pub base: SimplicialSet,
    pub arity: usize,
    pub bound: usize,
    /// Poset element `i` is the subset with bit mask `subsets[i]`. Larger
    /// subsets come first; they are the smaller elements of the order.
    pub subsets: Vec<u32>,
    pub diagram: PosetDiagram,
    pub holim: HomotopyLimit,
    /// `C_*(X^m)`.
    pub power: ChainComplex,
    /// `C_*(X^m) → holim`, the cone of coordinate projections.
    pub comparison: ChainMap,
    pub(crate) powers: Powers,
}

/// `X^k` for `k = 0..=m`, coordinates in increasing order, with chains.
#[derive(Debug, Clone)]
pub(crate) struct Powers {
    pub(crate) sets: Vec<ProductSet>,
    pub(crate) chains: Vec<ChainComplex>,
}

impl Powers {
    fn new(x: &SimplicialSet, m: usize) -> Result<Self> {
        let sets = (0..=m).map(|k| ProductSet::power(x, k)).collect::<Result<Vec<_>>>()?;
        let chains = sets.iter().map(|p| p.set().chains()).collect();
        Ok(Powers { sets, chains })
    }
}

/// Elements of `mask` in increasing order.
pub(crate) fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// The chain map `C_*(X^k) → C_*(Y^l)` whose `j`-th target coordinate is
/// `along` applied to source coordinate `pick[j]`; into the point it is the augmentation.
pub(crate) fn coordinate_map(
    source: (&ProductSet, &ChainComplex),
    target: (&ProductSet, &ChainComplex),
    pick: &[usize],
    along: impl Fn(&SimplexRef) -> SimplexRef,
) -> Result<ChainMap> {
    let (src_set, src_chains) = source;
    let (tgt_set, tgt_chains) = target;
    if pick.is_empty() {
        let vertices = src_chains.rank(0);
        return ChainMap::new(src_chains.clone(), tgt_chains.clone(), |n| {
            if n == 0 {
                SparseMatrix::from_triplets(1, vertices, (0..vertices).map(|j| (0, j, Integer::from(1))))
            } else {
                SparseMatrix::zeros(tgt_chains.rank(n), src_chains.rank(n))
            }
        });
    }
    let map = src_set.map_to(tgt_set, |t| pick.iter().map(|&p| along(&t[p])).collect())?;
    Ok(map.chain_map_between(src_chains.clone(), tgt_chains.clone()))
}

/// Positions inside `from` of the members of `to` (which must be a subset).
fn projection_pick(from: u32, to: u32) -> Vec<usize> {
    let src = members(from);
    members(to).iter().map(|v| src.iter().position(|u| u == v).expect("subset")).collect()
}

pub(crate) fn projection(powers: &Powers, from: u32, to: u32) -> Result<ChainMap> {
    let (k, l) = (from.count_ones() as usize, to.count_ones() as usize);
    coordinate_map((&powers.sets[k], &powers.chains[k]), (&powers.sets[l], &powers.chains[l]), &projection_pick(from, to), SimplexRef::clone)
}

/// Subsets of `[m]` of size at most `n`, larger first, then by mask.
pub(crate) fn bounded_subsets(m: usize, n: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0..1u32 << m).filter(|s| s.count_ones() as usize <= n).collect();
    out.sort_by_key(|s| (core::cmp::Reverse(s.count_ones()), *s));
    out
}

pub fn truncated_power(x: &SimplicialSet, arity: usize, bound: usize, budget: &Budget) -> Result<TruncatedPower> {
    if x.count(0) != 1 || x.basepoint() != Some(0) {
        return Err(invalid("truncated powers need a reduced pointed simplicial set"));
    }
    check_arity(arity, budget)?;
    build(x, arity, bound)
}

pub(crate) fn check_arity(arity: usize, budget: &Budget) -> Result<()> {
    if arity == 0 {
        return Err(invalid("arity must be at least 1"));
    }
    if arity > budget.max_arity || arity > 31 {
        return Err(Error::Budget(format!("arity {arity} exceeds the limit {}", budget.max_arity)));
    }
    Ok(())
}

/// [`truncated_power`] without the reducedness requirement, for the
/// subdivided circles used to transport degree maps.
pub(crate) fn build(x: &SimplicialSet, arity: usize, bound: usize) -> Result<TruncatedPower> {
    let powers = Powers::new(x, arity)?;
    let subsets = bounded_subsets(arity, bound);
    let below = |a: usize, b: usize| subsets[b] & !subsets[a] == 0;
    let poset = FinitePoset::new(subsets.len(), below)?;
    let values = subsets.iter().map(|s| powers.chains[s.count_ones() as usize].clone()).collect();
    let mut maps = BTreeMap::new();
    for a in 0..subsets.len() {
        for b in 0..subsets.len() {
            if a != b && below(a, b) {
                maps.insert((a, b), projection(&powers, subsets[a], subsets[b])?);
            }
        }
    }
    let diagram = PosetDiagram::new(poset, values, maps)?;
    let holim = poset_holim(&diagram);
    let full = (1u32 << arity) - 1;
    let cone = subsets.iter().map(|&s| projection(&powers, full, s)).collect::<Result<Vec<_>>>()?;
    let power = powers.chains[arity].clone();
    let comparison = cone_to_holim(&power, &cone, &diagram, &holim)?;
    Ok(TruncatedPower { base: x.clone(), arity, bound, subsets, diagram, holim, power, comparison, powers })
}

impl TruncatedPower {
    /// Poset index of the subset `mask`.
    pub fn element(&self, mask: u32) -> Option<usize> {
        self.subsets.iter().position(|&s| s == mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainalg::{betti_numbers, homology_all, induced_map, is_unimodular, Coefficients};
    use crate::simplicial::{alpha_subcomplex, standard_circle};
    use alloc::vec;

    fn betti(c: &ChainComplex, lo: i64, hi: i64) -> Vec<usize> {
        betti_numbers(c, lo, hi, Coefficients::Integers).unwrap()
    }

    #[test]
    fn subsets_are_listed_largest_first() {
        assert_eq!(bounded_subsets(3, 2), vec![0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0]);
    }

    #[test]
    fn wedge_of_two_circles() {
        let tp = truncated_power(&standard_circle(3), 2, 1, &Budget::default()).unwrap();
        assert_eq!(betti(&tp.holim.complex, -1, 2), vec![0, 1, 2, 0]);
        let alpha = alpha_subcomplex(&standard_circle(3), 2, 1).unwrap();
        assert_eq!(betti(&alpha.set.chains(), 0, 2), vec![1, 2, 0]);
    }

    #[test]
    fn two_skeleton_of_the_three_torus() {
        let tp = truncated_power(&standard_circle(4), 3, 2, &Budget::default()).unwrap();
        assert_eq!(betti(&tp.holim.complex, 0, 3), vec![1, 3, 3, 0]);
        assert!(homology_all(&tp.holim.complex, Coefficients::Integers).unwrap().iter().all(|r| r.torsion.is_empty()));
    }

    #[test]
    fn no_truncation_when_the_bound_reaches_the_arity() {
        let tp = truncated_power(&standard_circle(3), 2, 2, &Budget::default()).unwrap();
        for n in 0..=2 {
            assert!(is_unimodular(&induced_map(&tp.comparison, n).unwrap()), "degree {n}");
        }
    }

    #[test]
    fn arity_over_budget_is_rejected() {
        let budget = Budget { max_arity: 2, ..Budget::default() };
        assert!(matches!(truncated_power(&standard_circle(2), 3, 1, &budget), Err(Error::Budget(_))));
    }
}
