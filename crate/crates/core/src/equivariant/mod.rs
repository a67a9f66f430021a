//! Γ-equivariant cochain complexes with coefficients in ℝ[H\Γ]: weighted inner
//! products, Laplacians, harmonic volumes and regulators.

pub mod cochain;
pub mod complex;
pub mod cover;
pub mod fixtures;
pub mod hodge;

pub use cochain::{assemble, CochainLevel, OrbitBasis};
pub use complex::{CellOrbit, Incidence, OrbitCellComplex};
pub use cover::{dual_two_cycle, gt_upper_bound, torsion_of_cover, CoverHomology, DualCycle};
pub use hodge::{
    betti, euler_characteristic, harmonic_lattice, is_positive_semidefinite, is_self_adjoint,
    laplacian, laplacian_nullity, regulators, RegulatorReport, TetraRow, REGULATOR_CONVENTION,
};
