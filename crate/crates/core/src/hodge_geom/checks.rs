//! Homological comparisons between truncated powers, the bounded subcomplexes
//! of `X^m`, and the full power.

use alloc::vec::Vec;

use super::layer::layer_parts;
use super::truncated::truncated_power;
use crate::budget::Budget;
use crate::chainalg::{homology, induced_map, integral_left_inverse, is_unimodular, mapping_fiber, ChainComplex, Coefficients, HomologyRecord};
use crate::error::Result;
use crate::simplicial::{alpha_subcomplex, standard_circle, SimplicialSet};

/// Nonzero integral homology of `c` in degrees up to `hi`.
pub fn nonzero_homology(c: &ChainComplex, hi: i64) -> Result<Vec<HomologyRecord>> {
    let mut out = Vec::new();
    for n in c.lo()..=hi.min(c.hi()) {
        let r = homology(c, n, Coefficients::Integers)?;
        if r.betti > 0 || !r.torsion.is_empty() {
            out.push(r);
        }
    }
    Ok(out)
}

/// The truncated power against the subcomplex of `X^m` with at most `bound`
/// coordinates off the basepoint, in degrees below the truncation of `X`.
#[derive(Debug, Clone)]
pub struct GeometricModelCheck {
    pub arity: usize,
    pub bound: usize,
    pub holim: Vec<HomologyRecord>,
    pub bounded: Vec<HomologyRecord>,
    /// Bounded subcomplex → `X^m` → holim is an isomorphism on free homology.
    pub comparison_is_iso: bool,
    /// Bounded subcomplex → `X^m` admits an integral left inverse on homology.
    pub split_injection: bool,
}

impl GeometricModelCheck {
    pub fn holds(&self) -> bool {
        self.holim == self.bounded && self.comparison_is_iso && self.split_injection
    }
}

pub fn check_geometric_model(x: &SimplicialSet, arity: usize, bound: usize, budget: &Budget) -> Result<GeometricModelCheck> {
    let tp = truncated_power(x, arity, bound, budget)?;
    let alpha = alpha_subcomplex(x, arity, bound)?;
    let reliable = x.top() as i64 - 1;
    let inclusion = alpha.inclusion.chain_map_between(alpha.set.chains(), tp.power.clone());
    let through = inclusion.then(&tp.comparison)?;
    let mut comparison_is_iso = true;
    let mut split_injection = true;
    for n in 0..=reliable {
        comparison_is_iso &= is_unimodular(&induced_map(&through, n)?);
        let into_power = induced_map(&inclusion, n)?;
        split_injection &= into_power.ncols() == 0 || integral_left_inverse(&into_power).is_some();
    }
    Ok(GeometricModelCheck {
        arity,
        bound,
        holim: nonzero_homology(&tp.holim.complex, reliable)?,
        bounded: nonzero_homology(&alpha.set.chains(), reliable)?,
        comparison_is_iso,
        split_injection,
    })
}

/// Homology of the fiber of `C_*(X^m) → C^{≤n}_X([m])` in degrees up to `bound`.
pub fn comparison_fiber_homology(x: &SimplicialSet, arity: usize, bound: usize, budget: &Budget) -> Result<Vec<HomologyRecord>> {
    let tp = truncated_power(x, arity, bound, budget)?;
    nonzero_homology(&mapping_fiber(&tp.comparison).complex, bound as i64)
}

/// One degree of the comparison `C^{≤n}_{S¹}([n]) → C^{≤n−1}_{S¹}([n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderStep {
    pub degree: i64,
    pub binomial: usize,
    pub upper_rank: usize,
    pub lower_rank: usize,
    /// The induced map is invertible over `Z`.
    pub unimodular: bool,
}

impl LadderStep {
    pub fn holds(&self) -> bool {
        self.upper_rank == self.binomial && self.lower_rank == self.binomial && self.unimodular
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Degrees `0..level` of the comparison for the circle with `m = n = level`.
pub fn circle_rank_ladder(level: usize, budget: &Budget) -> Result<Vec<LadderStep>> {
    let circle = standard_circle(level + 1);
    super::truncated::check_arity(level, budget)?;
    let (upper, lower, restriction, _) = layer_parts(&circle, level, level)?;
    (0..level as i64)
        .map(|i| {
            let z = induced_map(&restriction, i)?;
            let rank = |c: &ChainComplex| homology(c, i, Coefficients::Integers).map(|r| r.betti);
            Ok(LadderStep {
                degree: i,
                binomial: binomial(level, i as usize),
                upper_rank: rank(&upper.holim.complex)?,
                lower_rank: rank(&lower.holim.complex)?,
                unimodular: is_unimodular(&z),
            })
        })
        .collect()
}
