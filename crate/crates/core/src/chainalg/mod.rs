//! Exact homological linear algebra over `Z`, `Q` and `F_p`.

pub mod cokernel;
pub mod complex;
pub mod holim;
pub mod homology;
pub mod matrix;
pub mod snf;

pub use cokernel::{cokernel, ModulePresentation};
pub use complex::{fiber_map, mapping_fiber, ChainComplex, ChainMap, MappingFiber};
pub use holim::{cone_to_holim, holim_map, poset_holim, restrict_holim, FinitePoset, HomotopyLimit, PosetDiagram};
pub use homology::{
    betti_numbers, homology, homology_all, induced_map, induced_map_with, is_unimodular, rank_mod_p, Coefficients, HomologyBasis, HomologyRecord,
};
pub use matrix::{axpy, sparse_from_entries, Integer, SparseMatrix, SparseVec};
pub use snf::{integral_left_inverse, invariant_factors, smith_normal_form, SmithForm, Track};
