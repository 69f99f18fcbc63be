//! Layers `C^{(n)}_X([m]) = Fib(C^{≤n} → C^{≤n−1})`, the coordinate
//! permutation action on their homology, and the Adams maps of the circle.

use alloc::format;
use alloc::vec::Vec;

use super::truncated::{build, check_arity, coordinate_map, members, TruncatedPower};
use crate::budget::Budget;
use crate::chainalg::{
    fiber_map, holim_map, induced_map_with, integral_left_inverse, mapping_fiber, restrict_holim, ChainMap, HomologyBasis, HomologyRecord,
    MappingFiber, SparseMatrix,
};
use crate::error::{invalid, Error, Result};
use crate::simplicial::{degree_map, standard_circle, SimplexRef, SimplicialMap, SimplicialSet};

/// Matrices of an endomorphism of layer homology, one per degree with free homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerOperator {
    pub blocks: Vec<(i64, SparseMatrix)>,
}

impl LayerOperator {
    pub fn block(&self, degree: i64) -> Option<&SparseMatrix> {
        self.blocks.iter().find(|(d, _)| *d == degree).map(|(_, m)| m)
    }

    /// Whether every block is `c` times the identity.
    pub fn is_scalar(&self, c: i64) -> bool {
        self.blocks.iter().all(|(_, m)| *m == SparseMatrix::identity(m.nrows()).scale(&c.into()))
    }

    /// `self ∘ other`, blockwise.
    pub fn compose(&self, other: &LayerOperator) -> LayerOperator {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|((d, a), (_, b))| (*d, a.mul(b))).collect();
        LayerOperator { blocks }
    }
}

#[derive(Debug, Clone)]
pub struct LayerComplex {
    pub arity: usize,
    pub level: usize,
    pub upper: TruncatedPower,
    pub lower: TruncatedPower,
    /// `C^{≤n} → C^{≤n−1}`: projection onto the chains of the smaller poset.
    pub restriction: ChainMap,
    pub fiber: MappingFiber,
    /// Integral homology bases of the fiber, from its lowest degree up.
    pub bases: Vec<HomologyBasis>,
    /// Action of the transpositions `(i i+1)` on homology.
    pub transpositions: Vec<LayerOperator>,
}

impl LayerComplex {
    pub fn homology(&self) -> Vec<HomologyRecord> {
        self.bases.iter().map(|b| HomologyRecord { degree: b.degree, weight: None, betti: b.betti, torsion: b.torsion.clone() }).collect()
    }

    pub fn basis(&self, degree: i64) -> Option<&HomologyBasis> {
        self.bases.iter().find(|b| b.degree == degree)
    }

    fn operator(&self, map: &ChainMap, bases: &[HomologyBasis]) -> Result<LayerOperator> {
        let mut blocks = Vec::new();
        for tgt in self.bases.iter().filter(|b| b.betti > 0) {
            let block = match bases.iter().find(|b| b.degree == tgt.degree) {
                Some(src) => induced_map_with(map, tgt.degree, src, tgt)?,
                None => SparseMatrix::zeros(tgt.betti, 0),
            };
            blocks.push((tgt.degree, block));
        }
        Ok(LayerOperator { blocks })
    }
}

fn fiber_bases(fiber: &MappingFiber) -> Result<Vec<HomologyBasis>> {
    let c = &fiber.complex;
    (c.lo()..=c.hi()).map(|n| HomologyBasis::new(c, n)).collect()
}

pub(crate) fn layer_parts(x: &SimplicialSet, arity: usize, level: usize) -> Result<(TruncatedPower, TruncatedPower, ChainMap, MappingFiber)> {
    let upper = build(x, arity, level)?;
    let lower = build(x, arity, level - 1)?;
    let keep: Vec<usize> = (0..upper.subsets.len()).filter(|&a| (upper.subsets[a].count_ones() as usize) < level).collect();
    let restriction = restrict_holim(&upper.holim, &keep, &lower.diagram, &lower.holim)?;
    let fiber = mapping_fiber(&restriction);
    Ok((upper, lower, restriction, fiber))
}

pub fn hodge_layer(x: &SimplicialSet, arity: usize, level: usize, budget: &Budget) -> Result<LayerComplex> {
    if x.count(0) != 1 || x.basepoint() != Some(0) {
        return Err(invalid("layers need a reduced pointed simplicial set"));
    }
    check_arity(arity, budget)?;
    if level == 0 || level > arity {
        return Err(invalid(format!("level {level} must lie in 1..={arity}")));
    }
    let (upper, lower, restriction, fiber) = layer_parts(x, arity, level)?;
    let bases = fiber_bases(&fiber)?;
    let mut layer = LayerComplex { arity, level, upper, lower, restriction, fiber, bases, transpositions: Vec::new() };
    layer.transpositions = (0..arity - 1)
        .map(|i| {
            let mut perm: Vec<usize> = (0..arity).collect();
            perm.swap(i, i + 1);
            symmetric_action(&layer, &perm)
        })
        .collect::<Result<_>>()?;
    Ok(layer)
}

/// The map of truncated powers induced by permuting coordinates: coordinate
/// `v` of the source lands in coordinate `perm[v]`.
fn permute(tp: &TruncatedPower, perm: &[usize]) -> Result<ChainMap> {
    let image = |mask: u32| members(mask).iter().fold(0u32, |acc, &v| acc | 1 << perm[v]);
    let g: Vec<usize> = tp.subsets.iter().map(|&s| tp.element(image(s)).expect("permutations preserve size")).collect();
    let eta = tp
        .subsets
        .iter()
        .map(|&s| {
            let src = members(s);
            let pick: Vec<usize> = members(image(s)).iter().map(|&w| src.iter().position(|&v| perm[v] == w).expect("preimage")).collect();
            let k = src.len();
            let (set, chains) = (&tp.powers.sets[k], &tp.powers.chains[k]);
            coordinate_map((set, chains), (set, chains), &pick, SimplexRef::clone)
        })
        .collect::<Result<Vec<_>>>()?;
    holim_map(&tp.diagram, &tp.holim, &tp.diagram, &tp.holim, &g, &eta)
}

/// The action of a permutation of `[m]` on layer homology, in the layer's bases.
pub fn symmetric_action(layer: &LayerComplex, perm: &[usize]) -> Result<LayerOperator> {
    let mut seen = alloc::vec![false; layer.arity];
    if perm.len() != layer.arity || perm.iter().any(|&v| v >= layer.arity || core::mem::replace(&mut seen[v], true)) {
        return Err(invalid(format!("not a permutation of {} letters", layer.arity)));
    }
    let upper = permute(&layer.upper, perm)?;
    let lower = permute(&layer.lower, perm)?;
    let on_fiber = fiber_map(&layer.fiber, &layer.fiber, &upper, &lower)?;
    layer.operator(&on_fiber, &layer.bases)
}

/// The map of truncated powers induced by applying `f: Y → X` in every coordinate.
fn coordinatewise(source: &TruncatedPower, target: &TruncatedPower, f: &SimplicialMap) -> Result<ChainMap> {
    let g: Vec<usize> = (0..source.subsets.len()).collect();
    let eta = source
        .subsets
        .iter()
        .map(|&s| {
            let k = s.count_ones() as usize;
            let pick: Vec<usize> = (0..k).collect();
            coordinate_map((&source.powers.sets[k], &source.powers.chains[k]), (&target.powers.sets[k], &target.powers.chains[k]), &pick, |y| {
                f.apply(y)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    holim_map(&source.diagram, &source.holim, &target.diagram, &target.holim, &g, &eta)
}

/// The degree-`r` self-map of `S¹` applied in every coordinate, on layer homology.
///
/// The map is only simplicial out of a subdivided circle `C_r`, so the layer
/// of `C_r` is built as well and the result is `H(r-map) ∘ H(collapse)⁻¹`.
pub fn adams_layer_map(layer: &LayerComplex, r: i64) -> Result<LayerOperator> {
    let top = layer.upper.base.top();
    if layer.upper.base != standard_circle(top) {
        return Err(Error::Unsupported("Adams maps are only modelled on the circle".into()));
    }
    let model = degree_map(r, top)?;
    let (upper, lower, _, fiber) = layer_parts(&model.cycle, layer.arity, layer.level)?;
    let bases = fiber_bases(&fiber)?;
    let induced = |f: &SimplicialMap| -> Result<LayerOperator> {
        let on_upper = coordinatewise(&upper, &layer.upper, f)?;
        let on_lower = coordinatewise(&lower, &layer.lower, f)?;
        layer.operator(&fiber_map(&fiber, &layer.fiber, &on_upper, &on_lower)?, &bases)
    };
    let collapse = induced(&model.collapse)?;
    let map = induced(&model.map)?;
    let blocks = collapse
        .blocks
        .iter()
        .zip(&map.blocks)
        .map(|((d, c), (_, f))| {
            let inverse = integral_left_inverse(c)
                .filter(|_| c.nrows() == c.ncols())
                .ok_or_else(|| invalid(format!("collapse is not an isomorphism on H_{d}")))?;
            Ok((*d, f.mul(&inverse)))
        })
        .collect::<Result<_>>()?;
    Ok(LayerOperator { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_layer(m: usize, n: usize) -> LayerComplex {
        hodge_layer(&standard_circle(m + 1), m, n, &Budget::default()).unwrap()
    }

    fn free_ranks(layer: &LayerComplex) -> Vec<(i64, usize)> {
        layer.homology().iter().filter(|r| r.betti > 0).map(|r| (r.degree, r.betti)).collect()
    }

    #[test]
    fn circle_layers() {
        assert_eq!(free_ranks(&circle_layer(1, 1)), [(1, 1)]);
        assert_eq!(free_ranks(&circle_layer(2, 1)), [(1, 2)]);
        assert_eq!(free_ranks(&circle_layer(2, 2)), [(2, 1)]);
        assert!(circle_layer(3, 2).homology().iter().all(|r| r.torsion.is_empty()));
    }

    #[test]
    fn swapping_coordinates_acts_by_sign() {
        let layer = circle_layer(2, 2);
        assert!(layer.transpositions[0].is_scalar(-1));
        assert!(symmetric_action(&layer, &[0, 1]).unwrap().is_scalar(1));
    }

    #[test]
    fn three_cycle_is_even() {
        let layer = circle_layer(3, 3);
        assert!(symmetric_action(&layer, &[1, 2, 0]).unwrap().is_scalar(1));
    }

    #[test]
    fn adams_maps_scale_by_powers() {
        let layer = circle_layer(2, 2);
        assert!(adams_layer_map(&layer, 1).unwrap().is_scalar(1));
        assert!(adams_layer_map(&layer, 2).unwrap().is_scalar(4));
        assert!(adams_layer_map(&layer, -1).unwrap().is_scalar(1));
    }

    #[test]
    fn rejects_bad_input() {
        let layer = circle_layer(2, 1);
        assert!(symmetric_action(&layer, &[0, 0]).is_err());
        assert!(hodge_layer(&standard_circle(3), 2, 3, &Budget::default()).is_err());
        let sphere = crate::simplicial::standard_sphere(2, 3).unwrap();
        let layer = hodge_layer(&sphere, 1, 1, &Budget::default()).unwrap();
        assert!(matches!(adams_layer_map(&layer, 2), Err(Error::Unsupported(_))));
    }
}
