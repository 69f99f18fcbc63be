//! The Eulerian idempotents and Adams operations acting on the normalized Hochschild complex
//! (the Loday complex over the simplicial circle), and the resulting splitting of `HH_*` over `Q`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Pow};

use super::symmetric::{adams_element, eulerian_idempotents_in, SymElement, SymmetricGroup};
use crate::budget::Budget;
use crate::chainalg::{betti_numbers, smith_normal_form, Coefficients, HomologyBasis, Integer, SparseMatrix, Track};
use crate::error::{invalid, Result};
use crate::loday::{loday_complex, AugAlgebra, LodayComplex};
use crate::simplicial::standard_circle;

/// `dim_Q e^{(component)} HH_degree` in one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeComponentRecord {
    pub degree: usize,
    pub component: usize,
    pub dim: usize,
    pub weight: u32,
}

/// `ψ^r` on the free part of `HH_degree` in one weight, with its rational eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdamsBlock {
    pub degree: usize,
    pub weight: u32,
    pub r: u64,
    /// Matrix in the basis of [`HomologyBasis`] for the weight block.
    pub matrix: SparseMatrix,
    /// `(r^i, multiplicity)` for every `i` with a nonzero eigenspace.
    pub eigenvalues: Vec<(Integer, usize)>,
    /// The eigenspaces for `r^0, …, r^degree` span the whole group.
    pub diagonalizable: bool,
}

/// The normalized Hochschild complex of an algebra over `Q`, with group algebra elements acting on it.
pub struct HochschildChains {
    pub loday: LodayComplex,
    slots: Vec<Vec<usize>>,
    groups: Vec<SymmetricGroup>,
}

impl HochschildChains {
    /// Chains through degree `degree_bound + 1` in weights up to `max_weight`.
    pub fn new(algebra: &AugAlgebra, degree_bound: usize, max_weight: u32, budget: &Budget) -> Result<Self> {
        if algebra.coefficients != Coefficients::Rationals {
            return Err(invalid(format!("the Hodge decomposition needs k = Q, not {}", algebra.coefficients)));
        }
        let loday = loday_complex(algebra, &standard_circle(degree_bound + 1), degree_bound, max_weight, budget)?;
        let slots = loday.hochschild_slots()?;
        let groups = (0..=degree_bound + 1).map(|q| SymmetricGroup::new(q, budget)).collect::<Result<_>>()?;
        Ok(HochschildChains { loday, slots, groups })
    }

    pub fn group(&self, q: usize) -> &SymmetricGroup {
        &self.groups[q]
    }

    /// The numerator matrix of `element` acting on chains of degree `q`; divide by `element.denominator`.
    pub fn operator(&self, q: usize, element: &SymElement) -> Result<SparseMatrix> {
        let labels = &self.loday.labels[q];
        let index: BTreeMap<Vec<usize>, usize> = labels.iter().enumerate().map(|(k, t)| (self.to_hochschild(q, t), k)).collect();
        let mut trip = Vec::new();
        for (col, t) in labels.iter().enumerate() {
            for (image, c) in element.act(&self.groups[q], &self.to_hochschild(q, t)) {
                let row = *index.get(&image).ok_or_else(|| invalid("permuted tensor left the normalized basis"))?;
                trip.push((row, col, Integer::from(c)));
            }
        }
        Ok(SparseMatrix::from_triplets(labels.len(), labels.len(), trip))
    }

    fn to_hochschild(&self, q: usize, t: &[usize]) -> Vec<usize> {
        let mut h = vec![0; q + 1];
        for (s, &e) in t.iter().enumerate() {
            h[self.slots[q][s]] = e;
        }
        h
    }

    /// `e^{(i)} b = b e^{(i)}` for every idempotent, on chains of degrees `1..=top`, where
    /// `e^{(i)}` is zero in degrees it does not exist in (`e^{(0)}` lives in degree 0 only).
    pub fn idempotents_commute_with_differential(&self, top: usize) -> Result<bool> {
        let top = top.min(self.groups.len() - 1);
        let idempotents: Vec<Vec<SymElement>> = (0..=top).map(|q| eulerian_idempotents_in(&self.groups[q])).collect::<Result<_>>()?;
        let component = |q: usize, i: usize| -> Result<(SparseMatrix, Integer)> {
            let size = self.loday.labels[q].len();
            let found = if q == 0 { (i == 0).then(|| &idempotents[0][0]) } else { i.checked_sub(1).and_then(|j| idempotents[q].get(j)) };
            match found {
                Some(e) => Ok((self.operator(q, e)?, Integer::from(e.denominator))),
                None => Ok((SparseMatrix::zeros(size, size), Integer::one())),
            }
        };
        for q in 1..=top {
            let d = self.loday.complex.differential(q as i64);
            for i in 0..=q {
                let (low, low_den) = component(q - 1, i)?;
                let (high, high_den) = component(q, i)?;
                if low.mul(&d).scale(&high_den) != d.mul(&high).scale(&low_den) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Rank over `Q` of the matrix of a chain endomorphism on the free part of `H_n` of a weight block.
fn induced_rank(basis: &HomologyBasis, op: &SparseMatrix) -> Result<usize> {
    let m = induced_matrix(basis, op)?;
    Ok(smith_normal_form(&m, Track::NONE).rank())
}

fn induced_matrix(basis: &HomologyBasis, op: &SparseMatrix) -> Result<SparseMatrix> {
    let mut trip = Vec::new();
    for (j, z) in basis.generators.iter().enumerate() {
        for (i, v) in basis.coordinates(&op.mul_vec(z))?.into_iter().enumerate() {
            trip.push((i, j, v));
        }
    }
    Ok(SparseMatrix::from_triplets(basis.betti, basis.betti, trip))
}

/// One weight block of the Hochschild complex with integral homology bases through `degree_bound`.
struct WeightBlock {
    weight: u32,
    keep: Vec<Vec<usize>>,
    bases: Vec<HomologyBasis>,
}

fn weight_blocks(chains: &HochschildChains) -> Result<Vec<WeightBlock>> {
    let bound = chains.loday.degree_bound;
    let mut out = Vec::new();
    for w in chains.loday.complex.weight_support() {
        let (block, keep) = chains.loday.complex.weight_block(w);
        let bases = (0..=bound).map(|n| HomologyBasis::new(&block, n as i64)).collect::<Result<_>>()?;
        out.push(WeightBlock { weight: w, keep, bases });
    }
    Ok(out)
}

fn restrict(op: &SparseMatrix, keep: &[usize]) -> SparseMatrix {
    op.select_rows(keep).select_cols(keep)
}

/// The rational Hodge decomposition of `HH_n(R)` for `n ≤ degree_bound` in weights up to `max_weight`:
/// one record per degree, weight and component `i ∈ 1..=n` (`i = 0` in degree 0).
pub fn hodge_components(algebra: &AugAlgebra, degree_bound: usize, max_weight: u32, budget: &Budget) -> Result<Vec<HodgeComponentRecord>> {
    let chains = HochschildChains::new(algebra, degree_bound, max_weight, budget)?;
    let mut out = Vec::new();
    let blocks = weight_blocks(&chains)?;
    for n in 0..=degree_bound {
        let idempotents = eulerian_idempotents_in(chains.group(n))?;
        let ops: Vec<SparseMatrix> = idempotents.iter().map(|e| chains.operator(n, e)).collect::<Result<_>>()?;
        for block in &blocks {
            for (offset, op) in ops.iter().enumerate() {
                let component = offset + usize::from(n > 0);
                let dim = induced_rank(&block.bases[n], &restrict(op, &block.keep[n]))?;
                out.push(HodgeComponentRecord { degree: n, component, dim, weight: block.weight });
            }
        }
    }
    Ok(out)
}

/// `ψ^r` on `HH_n(R)` for `n ≤ degree_bound`, one block per degree and weight with nonzero homology.
pub fn adams_matrix(algebra: &AugAlgebra, degree_bound: usize, max_weight: u32, r: u64, budget: &Budget) -> Result<Vec<AdamsBlock>> {
    let chains = HochschildChains::new(algebra, degree_bound, max_weight, budget)?;
    let blocks = weight_blocks(&chains)?;
    let mut out = Vec::new();
    for n in 0..=degree_bound {
        let op = chains.operator(n, &adams_element(chains.group(n), r as usize))?;
        for block in &blocks {
            let basis = &block.bases[n];
            if basis.betti == 0 {
                continue;
            }
            let matrix = induced_matrix(basis, &restrict(&op, &block.keep[n]))?;
            let (eigenvalues, diagonalizable) = power_eigenvalues(&matrix, r, n);
            out.push(AdamsBlock { degree: n, weight: block.weight, r, matrix, eigenvalues, diagonalizable });
        }
    }
    Ok(out)
}

/// Eigenspace dimensions of `m` for the candidates `r^0, …, r^top`, and whether they fill the space.
/// Candidates must be distinct, so `r ≥ 2`; for `r = 1` only `1` is tried.
pub fn power_eigenvalues(m: &SparseMatrix, r: u64, top: usize) -> (Vec<(Integer, usize)>, bool) {
    let size = m.nrows();
    let mut seen = Vec::new();
    let mut total = 0;
    for i in 0..=top {
        let lambda: Integer = Pow::pow(Integer::from(r), i as u32);
        if seen.iter().any(|(l, _)| *l == lambda) {
            continue;
        }
        let shifted = m.sub(&SparseMatrix::identity(size).scale(&lambda));
        let mult = size - smith_normal_form(&shifted, Track::NONE).rank();
        total += mult;
        seen.push((lambda, mult));
    }
    seen.retain(|e| e.1 > 0);
    (seen, total == size)
}

/// `dim e^{(n)} HH_n` against the rank of `H_n` of the layer `F_n / F_{n-1}`, per weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerComparison {
    pub degree: usize,
    pub weight: u32,
    pub hodge_dim: usize,
    pub layer_rank: usize,
}

impl LayerComparison {
    pub fn agrees(&self) -> bool {
        self.hodge_dim == self.layer_rank
    }
}

/// Compares the top Hodge component of `HH_n` with the degree-`n` homology of the `n`-th layer
/// of the ideal-factor filtration, for every `n ≤ degree_bound` and weight with either side nonzero.
pub fn compare_with_layers(algebra: &AugAlgebra, degree_bound: usize, max_weight: u32, budget: &Budget) -> Result<Vec<LayerComparison>> {
    let records = hodge_components(algebra, degree_bound, max_weight, budget)?;
    let chains = HochschildChains::new(algebra, degree_bound, max_weight, budget)?;
    let mut out = Vec::new();
    for n in 0..=degree_bound {
        let layer = chains.loday.weight_layer(n as u32);
        for w in 0..=max_weight {
            let (block, _) = layer.weight_block(w);
            let layer_rank = betti_numbers(&block.padded(0, degree_bound as i64 + 1), n as i64, n as i64, Coefficients::Rationals)?[0];
            let hodge_dim = records.iter().find(|r| r.degree == n && r.component == n && r.weight == w).map_or(0, |r| r.dim);
            if hodge_dim > 0 || layer_rank > 0 {
                out.push(LayerComparison { degree: n, weight: w, hodge_dim, layer_rank });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Coefficients {
        Coefficients::Rationals
    }

    fn dims(records: &[HodgeComponentRecord], n: usize, i: usize) -> Vec<(u32, usize)> {
        records.iter().filter(|r| r.degree == n && r.component == i && r.dim > 0).map(|r| (r.weight, r.dim)).collect()
    }

    #[test]
    fn idempotents_are_chain_maps() {
        for r in [AugAlgebra::truncated_polynomial(q(), 3).unwrap(), AugAlgebra::polynomial(q(), 2, 3).unwrap()] {
            let chains = HochschildChains::new(&r, 3, 3, &Budget::default()).unwrap();
            assert!(chains.idempotents_commute_with_differential(4).unwrap());
        }
    }

    #[test]
    fn polynomial_ring_is_concentrated_in_the_top_component() {
        let r = AugAlgebra::polynomial(q(), 1, 4).unwrap();
        let records = hodge_components(&r, 3, 4, &Budget::default()).unwrap();
        assert_eq!(dims(&records, 1, 1), (1..=4).map(|w| (w, 1)).collect::<Vec<_>>());
        assert!(records.iter().filter(|r| r.degree >= 2).all(|r| r.dim == 0));
        let r = AugAlgebra::polynomial(q(), 2, 3).unwrap();
        let records = hodge_components(&r, 2, 3, &Budget::default()).unwrap();
        assert!(dims(&records, 2, 1).is_empty());
        assert_eq!(dims(&records, 2, 2), [(2, 1), (3, 2)]);
    }

    #[test]
    fn ground_field_has_nothing_in_positive_degree() {
        let records = hodge_components(&AugAlgebra::ground(q()), 3, 2, &Budget::default()).unwrap();
        assert!(records.iter().all(|r| (r.degree == 0) == (r.dim > 0)));
    }

    #[test]
    fn components_add_up_to_hochschild_homology() {
        let r = AugAlgebra::truncated_polynomial(q(), 2).unwrap();
        let records = hodge_components(&r, 3, 4, &Budget::default()).unwrap();
        let total: Vec<usize> = (0..=3).map(|n| records.iter().filter(|r| r.degree == n).map(|r| r.dim).sum()).collect();
        assert_eq!(total, [2, 1, 1, 1]);
        // HH_3 of the dual numbers sits in weight 3, on the symmetric tensor 1⊗x⊗x⊗x
        assert_eq!(dims(&records, 3, 2), [(3, 1)]);
    }

    #[test]
    fn adams_operations_act_by_powers() {
        let r = AugAlgebra::polynomial(q(), 1, 3).unwrap();
        for block in adams_matrix(&r, 1, 3, 2, &Budget::default()).unwrap().iter().filter(|b| b.degree == 1) {
            assert_eq!(block.matrix, SparseMatrix::identity(1).scale(&Integer::from(2)));
        }
        let r = AugAlgebra::polynomial(q(), 2, 3).unwrap();
        let records = hodge_components(&r, 2, 3, &Budget::default()).unwrap();
        for block in adams_matrix(&r, 2, 3, 2, &Budget::default()).unwrap() {
            assert!(block.diagonalizable);
            for (lambda, mult) in &block.eigenvalues {
                let i = (0..=block.degree).find(|&i| Integer::from(2u64.pow(i as u32)) == *lambda).unwrap();
                let dim = records.iter().find(|x| x.degree == block.degree && x.weight == block.weight && x.component == i).unwrap().dim;
                assert_eq!(*mult, dim);
            }
        }
        let identity = adams_matrix(&r, 2, 3, 1, &Budget::default()).unwrap();
        assert!(identity.iter().all(|b| b.matrix == SparseMatrix::identity(b.matrix.nrows())));
    }

    #[test]
    fn rejects_other_rings() {
        let r = AugAlgebra::polynomial(Coefficients::Integers, 1, 2).unwrap();
        assert!(hodge_components(&r, 2, 2, &Budget::default()).is_err());
    }

    #[test]
    fn one_is_the_only_degree_zero_eigenvalue() {
        let r = AugAlgebra::truncated_polynomial(q(), 3).unwrap();
        let blocks = adams_matrix(&r, 0, 2, 3, &Budget::default()).unwrap();
        assert!(blocks.iter().all(|b| b.eigenvalues == [(Integer::one(), b.matrix.nrows())]));
    }
}
