//! Integral octonions, the exceptional Jordan algebra, Freudenthal spaces and the
//! Fourier coefficients of quaternionic modular forms built from them.

pub mod archimedean;
pub mod cli;
pub mod coefficients;
pub mod composition;
pub mod embeddings;
pub mod enumeration;
pub mod error;
pub mod freudenthal;
pub mod integral;
pub mod jordan;
pub mod lattice;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
