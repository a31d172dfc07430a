//! Exact computations for A-homology and Federer spectral sequences of
//! finite CW-complexes.
//!
//! Spaces enter only through their reduced cellular chain complexes
//! ([`chains::ChainComplex`]); homotopy groups enter as caller-supplied
//! tables ([`federer::HomotopyTable`]). All arithmetic is exact.

pub mod abelian;
pub mod ahomology;
pub mod chains;
pub mod cli;
pub mod corpus;
mod error;
pub mod federer;
pub mod spaces;

pub use abelian::{FgAbGroup, IntMatrix, PrimeSet};
pub use chains::ChainComplex;
pub use error::{Error, Result};
