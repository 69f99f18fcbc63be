//! Finite categories, set- and module-valued functors, ends, coends and Kan extensions.

pub mod category;
pub mod checks;
pub mod corpus;
pub mod ends;
pub mod functor;

pub use category::{CatFunctor, FinCat, TwistedArrow};
pub use checks::{
    end_matches_nat, kan_coend_matches, projection_preserves_colimit, run_suite, source_projection, target_projection, unit_coend_matches_colimit,
    SuiteReport, SuiteScope, Tally,
};
pub use corpus::small_categories;
pub use ends::{
    coend_bifunctor, colimit, end_bifunctor, for_each_end, for_each_nat, left_kan, left_kan_sets, nat_to_end, nat_transformations, set_colimit,
    KanExtension, Transformation,
};
pub use functor::{FunctorTable, ModuleBifunctor, ModuleFunctor, SetBifunctor, SetFunctor};
