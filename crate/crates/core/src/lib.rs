//! Semifield-generic idempotent linear algebra at desk scale.
//!
//! The building blocks are a totally ordered idempotent semifield
//! ([`semifield`]), free semimodules K^n with matrices as sup-preserving
//! maps and residuation ([`semimodule`]), constructive max-plus spectral
//! theory ([`spectral`]), and finite topological function lattices with
//! meet-closed subspaces ([`function_space`]). Seeded law suites live in
//! [`laws`] and the JSON file formats in [`io`].

pub mod error;
pub mod function_space;
pub mod io;
pub mod laws;
pub mod semifield;
pub mod semimodule;
pub mod spectral;

pub use error::Error;
pub use semifield::{ClosedSemifield, MaxTimes, RMax, Semifield};
pub use semimodule::{DualFunctional, Matrix, Vector};
