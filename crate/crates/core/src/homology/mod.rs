//! Homology pipelines and growth/spectrum reports.

pub mod growth;
pub mod h1;
pub mod scan;

pub use growth::{
    growth_report, small_eigenvalue_sum, GrowthRecord, GrowthReport, SpectrumCheck, Threshold,
    GROWTH_TARGET,
};
pub use h1::{
    bianchi_h1, cuspidal_dim, h1_integral, h1_modl_upper_bound, H1Options, H1Report, DEFAULT_PRIMES,
};
pub use scan::{level_scan, ScanOptions, ScanResult};
