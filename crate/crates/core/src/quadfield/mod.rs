//! Arithmetic of the ring of integers of `ℚ(√−d)` for `d ∈ {1, 2, 3, 7, 11}`.

pub mod elem;
pub mod ideal;
pub mod matrix;
pub mod projline;
pub mod residue;
pub mod search;

pub use elem::{Field, QuadElem, SUPPORTED};
pub use ideal::{euler_phi, ideals_up_to, primes_up_to, splitting_type, QfIdeal, Splitting};
pub use projline::{Mat2, ProjLine, ProjLinePoint};
pub use search::{
    find_prime_in_class, find_principal_prime, find_principal_prime_among, PrimeConstraints,
};
