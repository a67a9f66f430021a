//! Combinatorial Laplacians, harmonic lattices and regulators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cochain::CochainLevel;
use crate::error::{Error, Result};
use crate::linalg::dense::{self, QMat, QVec};
use crate::linalg::lattice::{gram_matrix, lattice_basis, to_rational};
use crate::linalg::{gram_log_volume, saturated_kernel, snf, SparseZMatrix};

pub const REGULATOR_CONVENTION: &str =
    "r~ = covolume of the saturated integral harmonic lattice; r = covolume of the projected integral cocycle lattice";

fn level(levels: &[CochainLevel], i: usize) -> Result<&CochainLevel> {
    levels.get(i).ok_or(Error::DegreeOutOfRange(i))
}

fn rank(m: &SparseZMatrix) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    Ok(snf(m)?.rank)
}

/// `bᵢ = dim ker δᵢ − rank δᵢ₋₁`, from exact ranks.
pub fn betti(levels: &[CochainLevel], i: usize) -> Result<usize> {
    let l = level(levels, i)?;
    let below = if i == 0 {
        0
    } else {
        rank(&levels[i - 1].delta)?
    };
    Ok(l.dim() - rank(&l.delta)? - below)
}

/// `Δᵢ = δᵢ†δᵢ + δᵢ₋₁δᵢ₋₁†` with `δ† = G⁻¹δᵀG`.
pub fn laplacian(levels: &[CochainLevel], i: usize) -> Result<QMat> {
    let l = level(levels, i)?;
    let n = l.dim();
    let mut out = dense::zeros(n, n);
    if let Some(up) = levels.get(i + 1) {
        let d = l.delta.to_dense();
        for (r, row) in d.iter().enumerate() {
            let w = &up.gram[r];
            for (a, x) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let f = x * w / &l.gram[a];
                for (b, y) in row.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out[a][b] += &f * y;
                }
            }
        }
    }
    if i > 0 {
        let down = &levels[i - 1];
        let d = down.delta.to_dense();
        for c in 0..down.dim() {
            let w = down.gram[c].recip();
            for a in (0..n).filter(|&a| !d[a][c].is_zero()) {
                let f = &d[a][c] * &w;
                for b in (0..n).filter(|&b| !d[b][c].is_zero()) {
                    out[a][b] += &f * &d[b][c] * &l.gram[b];
                }
            }
        }
    }
    Ok(out)
}

/// Saturated basis of `ker Δᵢ ∩ ℤⁿ`, as the common kernel of `δᵢ` and `δᵢ₋₁ᵀGᵢ`.
pub fn harmonic_lattice(levels: &[CochainLevel], i: usize) -> Result<Vec<Vec<BigInt>>> {
    let l = level(levels, i)?;
    let n = l.dim();
    let mut trip: Vec<(usize, usize, BigRational)> = Vec::new();
    let up_rows = l.delta.rows();
    for (r, c, v) in l.delta.iter() {
        trip.push((r, c, v.clone()));
    }
    let mut rows = up_rows;
    if i > 0 {
        let down = &levels[i - 1].delta;
        for (r, c, v) in down.iter() {
            trip.push((up_rows + c, r, v * &l.gram[r]));
        }
        rows += down.cols();
    }
    let stacked = SparseZMatrix::from_triplets(rows, n, trip)?;
    Ok(saturated_kernel(&stacked))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegulatorReport {
    pub degree: usize,
    pub betti: usize,
    pub log_r_tilde: f64,
    pub log_r: f64,
    /// Exact Gram determinants, as reduced fractions.
    pub gram_det_tilde: String,
    pub gram_det: String,
    pub trivial: bool,
    pub convention: &'static str,
}

impl RegulatorReport {
    /// `log r̃ ≥ log r ≥ −log r̃` up to `tol`.
    pub fn inequality_holds(&self, tol: f64) -> bool {
        self.log_r_tilde + tol >= self.log_r && self.log_r + tol >= -self.log_r_tilde
    }
}

/// `log r̃ᵢ` and `log rᵢ`.
pub fn regulators(levels: &[CochainLevel], i: usize) -> Result<RegulatorReport> {
    let b = betti(levels, i)?;
    let l = &levels[i];
    let mut report = RegulatorReport {
        degree: i,
        betti: b,
        log_r_tilde: 0.0,
        log_r: 0.0,
        gram_det_tilde: "1".into(),
        gram_det: "1".into(),
        trivial: b == 0,
        convention: REGULATOR_CONVENTION,
    };
    if b == 0 {
        return Ok(report);
    }
    let harmonic: Vec<QVec> = harmonic_lattice(levels, i)?
        .iter()
        .map(|v| to_rational(v))
        .collect();
    if harmonic.len() != b {
        return Err(Error::Verification(format!(
            "harmonic lattice has rank {} but b{i} = {b}",
            harmonic.len()
        )));
    }
    let g = l.gram_matrix();
    let tilde = gram_log_volume(&harmonic, &g)?;

    // Projections of integral cocycles, in coordinates of the harmonic basis.
    let gram_h = gram_matrix(&harmonic, &g);
    let gram_h_inv = dense::inverse(&gram_h)?;
    let hg: Vec<QVec> = harmonic
        .iter()
        .map(|h| h.iter().zip(&l.gram).map(|(x, w)| x * w).collect())
        .collect();
    let coords: Vec<QVec> = saturated_kernel(&l.delta)
        .iter()
        .map(|z| {
            let z = to_rational(z);
            let pairings: QVec = hg.iter().map(|row| dense::dot(row, &z)).collect();
            dense::mat_vec(&gram_h_inv, &pairings)
        })
        .collect();
    let projected = lattice_basis(&coords, b);
    let vol = gram_log_volume(&projected, &gram_h)?;

    report.log_r_tilde = tilde.log_volume;
    report.log_r = vol.log_volume;
    report.gram_det_tilde = tilde.gram_det.to_string();
    report.gram_det = vol.gram_det.to_string();
    Ok(report)
}

/// One row in the layout of the tetrahedral regulator tables.
#[derive(Clone, Debug, Serialize)]
pub struct TetraRow {
    pub index: usize,
    pub rank: usize,
    pub log_r1: f64,
    pub log_r1_per_index: f64,
    pub log_r2: f64,
    pub log_r2_per_index: f64,
}

impl TetraRow {
    pub fn from_reports(index: usize, r1: &RegulatorReport, r2: &RegulatorReport) -> Self {
        let k = index as f64;
        TetraRow {
            index,
            rank: r1.betti,
            log_r1: r1.log_r_tilde,
            log_r1_per_index: r1.log_r_tilde / k,
            log_r2: r2.log_r_tilde,
            log_r2_per_index: r2.log_r_tilde / k,
        }
    }

    pub fn header() -> &'static str {
        "index rank log_r1 log_r1/index log_r2 log_r2/index"
    }

    pub fn render(&self) -> String {
        format!(
            "{} {} {:.7} {:.11} {:.7} {:.11}",
            self.index,
            self.rank,
            self.log_r1,
            self.log_r1_per_index,
            self.log_r2,
            self.log_r2_per_index
        )
    }
}

/// `G·Δ` is symmetric: the Laplacian is self-adjoint for the weighted product.
pub fn is_self_adjoint(levels: &[CochainLevel], i: usize, lap: &QMat) -> bool {
    let g = &levels[i].gram;
    let n = lap.len();
    (0..n).all(|a| (a..n).all(|b| &g[a] * &lap[a][b] == &g[b] * &lap[b][a]))
}

/// `G·Δ` scaled to an integer matrix.
fn integral_form(levels: &[CochainLevel], i: usize, lap: &QMat) -> Vec<Vec<BigInt>> {
    let g = &levels[i].gram;
    let m: QMat = lap
        .iter()
        .enumerate()
        .map(|(a, row)| row.iter().map(|x| &g[a] * x).collect())
        .collect();
    dense::integralize(&m).0
}

/// Positive semidefiniteness of `G·Δ`, by fraction-free elimination with
/// diagonal pivots: every pivot is a principal minor and must be positive,
/// and nothing may survive once the diagonal is exhausted.
pub fn is_positive_semidefinite(levels: &[CochainLevel], i: usize, lap: &QMat) -> bool {
    let mut m = integral_form(levels, i, lap);
    let n = m.len();
    let mut alive = vec![true; n];
    let mut prev = BigInt::one();
    while let Some(p) = (0..n).find(|&k| alive[k] && !m[k][k].is_zero()) {
        if m[p][p].is_negative() {
            return false;
        }
        alive[p] = false;
        let piv = m[p][p].clone();
        let prow = m[p].clone();
        for r in (0..n).filter(|&r| alive[r]) {
            let f = m[r][p].clone();
            for c in (0..n).filter(|&c| alive[c]) {
                m[r][c] = (&piv * &m[r][c] - &f * &prow[c]) / &prev;
            }
        }
        prev = piv;
    }
    (0..n)
        .filter(|&r| alive[r])
        .all(|r| (0..n).filter(|&c| alive[c]).all(|c| m[r][c].is_zero()))
}

/// `dim ker Δᵢ`, from the exact rank of the integral form.
pub fn laplacian_nullity(levels: &[CochainLevel], i: usize, lap: &QMat) -> Result<usize> {
    let m = integral_form(levels, i, lap);
    let n = m.len();
    let trip = m.iter().enumerate().flat_map(|(r, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(c, x)| (r, c, x.clone()))
    });
    Ok(n - rank(&SparseZMatrix::from_triplets(n, n, trip)?)?)
}

/// `Σ (−1)ⁱ dim Cⁱ`.
pub fn euler_characteristic(levels: &[CochainLevel]) -> i64 {
    levels
        .iter()
        .map(|l| if l.degree % 2 == 0 { 1 } else { -1 } * l.dim() as i64)
        .sum()
}
