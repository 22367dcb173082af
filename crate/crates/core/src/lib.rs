//! Exact finite-dimensional machinery for the discrete crossed-product
//! decomposition of an almost periodic weight: spectral gradings, the
//! generalized-matrix crossed product with its scaled trace, the `S_γ`
//! partial-action calculus, finite-group crossed products with duality, and
//! finite induced actions.

pub mod algebra;
pub mod crossed;
pub mod demo;
pub mod error;
pub mod groups;
pub mod induced;
pub mod model;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
