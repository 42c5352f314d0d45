//! Dual equivalence and shifted dual equivalence on permutations and
//! tableaux, with exact Schur and Schur-P expansions of quasisymmetric
//! generating functions.

pub mod cli;
pub mod engine;
pub mod error;
pub mod involution;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod qsym;
pub mod stats;
pub mod tableau;

pub use error::{Error, Result};
