//! Finite simplicial sets, their products, and the constructions built on them.

pub mod models;
pub mod nerve;
pub mod product;
pub mod set;
pub mod simplex;
pub mod twisted;

pub use models::{degree_map, standard_circle, standard_simplex, standard_sphere, DegreeModel};
pub use nerve::Nerve;
pub use product::{alpha_subcomplex, product, AlphaSubcomplex, ProductSet};
pub use set::{reflect, SimplicialMap, SimplicialSet};
pub use simplex::SimplexRef;
pub use twisted::{hom_projection, twisted, twisted_nerve_iso, HomProjection, Twisted};
