//! Exact chain-level models of the Hodge filtration on Loday constructions.
//!
//! Everything here is pure and allocation-only: finite categories and their
//! (co)ends, finite simplicial sets stored by nondegenerate generators, sparse
//! integer chain complexes with Smith normal form homology, the Loday complex
//! of an augmented algebra with its weight filtration, the space-side
//! truncated powers and their layers, and Eulerian idempotents.
//!
//! IO, file formats and the command line live in the `hodgehh` crate.

#![no_std]

extern crate alloc;

pub mod budget;
pub mod chainalg;
pub mod error;
pub mod eulerian;
pub mod fincat;
pub mod hodge_geom;
pub mod loday;
pub mod simplicial;

pub use error::{Error, Result};
