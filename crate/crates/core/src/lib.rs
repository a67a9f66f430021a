//! Exact homology, regulators and modular-symbol arithmetic for Bianchi
//! groups and tetrahedral-type groups.

pub mod arith;
pub mod cli;
pub mod equivariant;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod quadfield;
pub mod subgroups;
pub mod symbols;

pub use error::{Error, Result};
