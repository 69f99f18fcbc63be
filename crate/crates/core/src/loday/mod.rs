//! The Loday construction of an augmented commutative algebra over a simplicial set,
//! with module coefficients, the augmentation-ideal filtration and the shuffle product.

pub mod algebra;
pub mod complex;
pub mod shuffle;

pub use algebra::{algebra_corpus, expand_tensor, AlgModule, AugAlgebra, Combination};
pub use complex::{betti_by_degree, betti_table, loday_complex, loday_with_coefficients, LodayComplex};
pub use shuffle::{FiltrationCheck, ShuffleProduct};
