//! Eulerian idempotents in `Q[Σ_q]` and the rational Hodge decomposition of Hochschild homology.

pub mod hodge;
pub mod symmetric;

pub use hodge::{
    adams_matrix, compare_with_layers, hodge_components, power_eigenvalues, AdamsBlock, HochschildChains, HodgeComponentRecord, LayerComparison,
};
pub use symmetric::{adams_element, eulerian_idempotents, eulerian_idempotents_in, is_complete_orthogonal_family, SymElement, SymmetricGroup};
