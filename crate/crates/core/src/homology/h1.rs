//! First homology of finite-index subgroups: integral, mod-ℓ and cuspidal.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::modl::{rank_rows, ModRing};
use crate::linalg::snf::{snf_reduced, unit_reduce, UnitReduced};
use crate::linalg::{rank_mod_l, snf, SparseZMatrix};
use crate::quadfield::{Field, QfIdeal};
use crate::subgroups::schreier::abelianized_rs_rows;
use crate::subgroups::{
    bianchi_presentation, cusp_count, gamma0_action, rotation_free_cusps, GroupKind, Presentation,
};

/// The six primes between 50 and 100 used for the mod-ℓ bound.
pub const DEFAULT_PRIMES: [u64; 6] = [53, 59, 61, 67, 71, 73];

/// How the cuspidal dimension is extracted from `b1`.
pub const CUSPIDAL_CONVENTION: &str = "b1 - rotation-free cusps";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub b1: usize,
    pub torsion: Vec<BigInt>,
}

/// Betti number and torsion of the cokernel of a relation matrix.
pub fn h1_integral(relmat: &SparseZMatrix) -> Result<H1> {
    let r = snf(relmat)?;
    Ok(H1 {
        b1: relmat.cols() - r.rank,
        torsion: r.torsion(),
    })
}

fn big_rows(rows: &[Vec<(usize, i64)>]) -> Vec<Vec<(usize, BigInt)>> {
    rows.iter()
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect()
}

/// `min_ℓ (cols − rank_ℓ)`, an upper bound for `b1`.
pub fn h1_modl_upper_bound(relmat: &SparseZMatrix, primes: &[u64]) -> Result<usize> {
    if primes.is_empty() {
        return Err(Error::Parse("prime list is empty".into()));
    }
    let mut best = usize::MAX;
    for &l in primes {
        best = best.min(relmat.cols() - rank_mod_l(relmat, l)?);
    }
    Ok(best)
}

fn modl_bound_reduced(red: &UnitReduced, primes: &[u64]) -> Result<usize> {
    if primes.is_empty() {
        return Err(Error::Parse("prime list is empty".into()));
    }
    let mut best = usize::MAX;
    for &l in primes {
        if !crate::arith::is_prime(l as u128) {
            return Err(Error::NotPrime(l.to_string()));
        }
        let ring = ModRing { p: l };
        let reduced = red
            .rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, ring.reduce(v))).collect())
            .collect();
        let rank = red.units + rank_rows(&ring, red.ncols, reduced);
        best = best.min(red.ncols - rank);
    }
    Ok(best)
}

/// `max(b1 − eisenstein, 0)`.
pub fn cuspidal_dim(b1: usize, eisenstein: usize) -> usize {
    b1.saturating_sub(eisenstein)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H1Report {
    pub level: String,
    pub hnf: [String; 4],
    pub norm: String,
    pub d: u32,
    pub kind: String,
    pub index: usize,
    pub b1: usize,
    pub torsion_divisors: Vec<String>,
    pub cusps: usize,
    pub eisenstein: usize,
    pub cuspidal_dim: usize,
    /// Set when `b1` fell short of the Eisenstein count.
    pub cuspidal_clamped: bool,
    pub modl_upper_bound: usize,
    pub primes: Vec<u64>,
    pub convention: String,
    pub seconds: f64,
}

/// Options for a single-level computation.
#[derive(Clone, Debug)]
pub struct H1Options {
    pub primes: Vec<u64>,
    /// Compute `b1` and torsion over ℤ; otherwise `b1` is the mod-ℓ bound.
    pub integral: bool,
}

impl Default for H1Options {
    fn default() -> Self {
        H1Options {
            primes: DEFAULT_PRIMES.to_vec(),
            integral: true,
        }
    }
}

/// End-to-end pipeline for `Γ₀(𝔫)` inside the chosen Bianchi group.
pub fn bianchi_h1(pres: &Presentation, level: &QfIdeal, opts: &H1Options) -> Result<H1Report> {
    let start = Instant::now();
    let action = gamma0_action(pres, level)?;
    let (ncols, rows) = abelianized_rs_rows(pres, &action)?;
    log::debug!(
        "{}: {} x {} relations after {:.2?}",
        level.label(),
        rows.len(),
        ncols,
        start.elapsed()
    );
    let red = unit_reduce(ncols, big_rows(&rows));
    drop(rows);
    log::debug!(
        "{}: {} unit pivots, {} rows left after {:.2?}",
        level.label(),
        red.units,
        red.rows.len(),
        start.elapsed()
    );
    let modl = modl_bound_reduced(&red, &opts.primes)?;
    log::debug!(
        "{}: mod-l ranks after {:.2?}",
        level.label(),
        start.elapsed()
    );
    let h1 = if opts.integral {
        let r = snf_reduced(red);
        log::debug!(
            "{}: integral SNF after {:.2?}",
            level.label(),
            start.elapsed()
        );
        H1 {
            b1: ncols - r.rank,
            torsion: r.torsion(),
        }
    } else {
        H1 {
            b1: modl,
            torsion: vec![],
        }
    };
    let cusps = cusp_count(&action, &pres.parabolic);
    let eisenstein = rotation_free_cusps(&action, pres);
    Ok(H1Report {
        level: level.label(),
        hnf: level.hnf_tuple(),
        norm: level.norm().to_string(),
        d: pres.field.map_or(0, |f| f.d()),
        kind: pres.kind.map_or_else(String::new, |k| k.to_string()),
        index: action.degree(),
        b1: h1.b1,
        torsion_divisors: h1.torsion.iter().map(|t| t.to_string()).collect(),
        cusps,
        eisenstein,
        cuspidal_dim: cuspidal_dim(h1.b1, eisenstein),
        cuspidal_clamped: h1.b1 < eisenstein,
        modl_upper_bound: modl,
        primes: opts.primes.clone(),
        convention: if opts.integral {
            CUSPIDAL_CONVENTION.into()
        } else {
            format!("{CUSPIDAL_CONVENTION}; b1 from mod-l bound")
        },
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Convenience wrapper taking the field and group kind.
pub fn bianchi_h1_for(
    d: u32,
    kind: GroupKind,
    level: &crate::quadfield::QuadElem,
    opts: &H1Options,
) -> Result<H1Report> {
    let pres = bianchi_presentation(d, kind)?;
    let level = QfIdeal::principal(Field::new(d)?, level)?;
    bianchi_h1(&pres, &level, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_examples() {
        let free = SparseZMatrix::zeros(0, 3);
        assert_eq!(
            h1_integral(&free).unwrap(),
            H1 {
                b1: 3,
                torsion: vec![]
            }
        );
        let six = SparseZMatrix::from_dense_i64(&[vec![6]]);
        assert_eq!(
            h1_integral(&six).unwrap(),
            H1 {
                b1: 0,
                torsion: vec![BigInt::from(6)]
            }
        );
        let d = SparseZMatrix::from_dense_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(h1_integral(&d).unwrap().torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn modl_examples() {
        let six = SparseZMatrix::from_dense_i64(&[vec![6]]);
        assert_eq!(h1_modl_upper_bound(&six, &DEFAULT_PRIMES).unwrap(), 0);
        assert_eq!(
            h1_modl_upper_bound(&SparseZMatrix::zeros(0, 2), &DEFAULT_PRIMES).unwrap(),
            2
        );
        let m = SparseZMatrix::from_dense_i64(&[vec![59, 0], vec![0, 0]]);
        assert_eq!(h1_modl_upper_bound(&m, &[59]).unwrap(), 2);
        assert_eq!(h1_modl_upper_bound(&m, &DEFAULT_PRIMES).unwrap(), 1);
        assert!(h1_modl_upper_bound(&m, &[55]).is_err());
    }

    #[test]
    fn cuspidal_arithmetic() {
        assert_eq!(cuspidal_dim(5, 3), 2);
        assert_eq!(cuspidal_dim(3, 3), 0);
        assert_eq!(cuspidal_dim(1, 3), 0);
    }
}
