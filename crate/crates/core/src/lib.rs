//! Exact computer algebra for pseudodifferential Lax hierarchies, finite
//! W-algebras and central elements of enveloping algebras.

pub mod classicalw;
pub mod emit;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod ncalg;
pub mod poly;
pub mod psido;
pub mod quantumw;
pub mod scalar;
pub mod sl2kit;
pub mod yangcheck;

pub use error::{Error, Result};
pub use scalar::Scalar;
