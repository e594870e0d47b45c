//! Pure k-families, their simplicial Laplacian spectra, and checks of
//! Brouwer-type partial-sum bounds.

pub mod canon;
pub mod checkers;
pub mod combin;
pub mod error;
pub mod exec;
pub mod family;
pub mod generators;
pub mod io;
pub mod ops;
pub mod search;
pub mod spectra;
pub mod structure;

pub use error::{Error, Result};
pub use exec::Execution;
pub use family::{ConjugatePartition, DegreeSequence, FVector, Facet, KFamily};
pub use spectra::{spectrum, Spectrum};
