//! Exact sparse and dense linear algebra over ℤ and ℚ.

pub mod dense;
pub(crate) mod elim;
pub mod lattice;
pub mod modl;
pub mod snf;
pub mod sparse;

pub use lattice::{gram_log_volume, project_orthogonal, saturated_kernel, LatticeVolume};
pub use modl::rank_mod_l;
pub use snf::{snf, SnfResult};
pub use sparse::SparseZMatrix;
