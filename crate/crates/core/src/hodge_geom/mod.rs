//! The space side of the filtration: truncated powers of a pointed simplicial
//! set as homotopy limits over bounded subsets, their layers, and the
//! symmetric group and Adams actions on layer homology.

pub mod checks;
pub mod layer;
pub mod truncated;

pub use layer::{adams_layer_map, hodge_layer, symmetric_action, LayerComplex, LayerOperator};
pub use truncated::{truncated_power, TruncatedPower};
