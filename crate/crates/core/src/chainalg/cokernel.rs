//! Finitely presented modules as cokernels of integer matrices.

use alloc::vec::Vec;
use core::fmt;

use super::homology::{rank_mod_p, Coefficients};
use super::matrix::{Integer, SparseMatrix};
use super::snf::invariant_factors;

/// `k^free_rank ⊕ ⊕ k/(t)`, normalized by Smith form; torsion only over `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    pub coefficients: Coefficients,
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

impl ModulePresentation {
    pub fn free(coefficients: Coefficients, rank: usize) -> Self {
        ModulePresentation { coefficients, free_rank: rank, torsion: Vec::new() }
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.coefficients, self.free_rank)?;
        for t in &self.torsion {
            write!(f, " + {}/{}", self.coefficients, t)?;
        }
        Ok(())
    }
}

/// The cokernel of `relations: k^cols → k^rows` (rows index generators).
pub fn cokernel(relations: &SparseMatrix, k: Coefficients) -> ModulePresentation {
    let n = relations.nrows();
    match k {
        Coefficients::Integers => {
            let d = invariant_factors(relations);
            let torsion = d.iter().filter(|x| *x != &Integer::from(1)).cloned().collect();
            ModulePresentation { coefficients: k, free_rank: n - d.len(), torsion }
        }
        Coefficients::Rationals => ModulePresentation::free(k, n - invariant_factors(relations).len()),
        Coefficients::Prime(p) => ModulePresentation::free(k, n - rank_mod_p(relations, p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cokernel_of_times_two() {
        let m = SparseMatrix::from_dense(&[vec![2], vec![0]]);
        let z = cokernel(&m, Coefficients::Integers);
        assert_eq!((z.free_rank, z.torsion.clone()), (1, alloc::vec![Integer::from(2)]));
        assert_eq!(cokernel(&m, Coefficients::Rationals).free_rank, 1);
        assert_eq!(cokernel(&m, Coefficients::Prime(2)).free_rank, 2);
    }
}
