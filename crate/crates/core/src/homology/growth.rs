//! Torsion-growth ratios and small-eigenvalue sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1/(6π)`, the limiting ratio of `log |H₁|_tors` to volume.
pub const GROWTH_TARGET: f64 = 1.0 / (6.0 * std::f64::consts::PI);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRecord {
    pub volume: f64,
    pub log_torsion: f64,
    pub betti: usize,
}

impl GrowthRecord {
    /// Volume of a cover of the given index over a base of volume `vol0`.
    pub fn from_index(index: usize, vol0: f64, log_torsion: f64, betti: usize) -> Self {
        GrowthRecord {
            volume: index as f64 * vol0,
            log_torsion,
            betti,
        }
    }

    pub fn ratio(&self) -> f64 {
        self.log_torsion / self.volume
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub volume: f64,
    pub log_torsion: f64,
    pub betti: usize,
    pub ratio: f64,
    pub deviation: f64,
    /// `b₁·log V / V`, which should tend to zero.
    pub betti_smallness: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub target: f64,
    pub rows: Vec<GrowthRow>,
    pub volumes_increasing: bool,
}

pub fn growth_report(records: &[GrowthRecord]) -> Result<GrowthReport> {
    let mut rows = Vec::with_capacity(records.len());
    for r in records {
        if !(r.volume > 0.0) || !r.volume.is_finite() || !r.log_torsion.is_finite() {
            return Err(Error::Parse(format!(
                "record with volume {} is not usable",
                r.volume
            )));
        }
        let ratio = r.ratio();
        rows.push(GrowthRow {
            volume: r.volume,
            log_torsion: r.log_torsion,
            betti: r.betti,
            ratio,
            deviation: (ratio - GROWTH_TARGET).abs(),
            betti_smallness: r.betti as f64 * r.volume.ln() / r.volume,
        });
    }
    let volumes_increasing = records.windows(2).all(|w| w[0].volume < w[1].volume);
    Ok(GrowthReport {
        target: GROWTH_TARGET,
        rows,
        volumes_increasing,
    })
}

/// Eigenvalue threshold: a fixed `c`, or `V^{−δ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    Strong(f64),
    Weak(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCheck {
    pub eigenvalues: Vec<f64>,
    pub volume: f64,
    pub threshold: Threshold,
}

/// `(1/V)·Σ_{0<λ≤θ} |log λ|`.
pub fn small_eigenvalue_sum(spec: &SpectrumCheck) -> Result<f64> {
    if let Some(l) = spec.eigenvalues.iter().find(|l| **l < 0.0 || l.is_nan()) {
        return Err(Error::NegativeEigenvalue(l.to_string()));
    }
    if !(spec.volume > 0.0) {
        return Err(Error::Parse("volume must be positive".into()));
    }
    let theta = match spec.threshold {
        Threshold::Strong(c) => c,
        Threshold::Weak(delta) => spec.volume.powf(-delta),
    };
    let sum: f64 = spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0 && l <= theta)
        .map(|l| l.ln().abs())
        .sum();
    Ok(sum / spec.volume)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_has_zero_deviation() {
        let recs: Vec<_> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&v| GrowthRecord {
                volume: v,
                log_torsion: v * GROWTH_TARGET,
                betti: 0,
            })
            .collect();
        let r = growth_report(&recs).unwrap();
        assert!(r.rows.iter().all(|row| row.deviation < 1e-15));
        assert!(r.volumes_increasing);
    }

    #[test]
    fn zero_torsion() {
        let r = growth_report(&[GrowthRecord {
            volume: 5.0,
            log_torsion: 0.0,
            betti: 1,
        }])
        .unwrap();
        assert_eq!(r.rows[0].ratio, 0.0);
        assert_eq!(r.rows[0].deviation, GROWTH_TARGET);
    }

    #[test]
    fn spectrum_sums() {
        let s = SpectrumCheck {
            eigenvalues: vec![0.5],
            volume: 10.0,
            threshold: Threshold::Strong(1.0),
        };
        assert!((small_eigenvalue_sum(&s).unwrap() - 2f64.ln() / 10.0).abs() < 1e-15);
        let s = SpectrumCheck {
            eigenvalues: vec![],
            volume: 10.0,
            threshold: Threshold::Strong(1.0),
        };
        assert_eq!(small_eigenvalue_sum(&s).unwrap(), 0.0);
        let s = SpectrumCheck {
            eigenvalues: vec![0.0, 0.25, 0.5],
            volume: 2.0,
            threshold: Threshold::Strong(0.5),
        };
        assert!((small_eigenvalue_sum(&s).unwrap() - (4f64.ln() + 2f64.ln()) / 2.0).abs() < 1e-15);
        let s = SpectrumCheck {
            eigenvalues: vec![-0.1],
            volume: 2.0,
            threshold: Threshold::Strong(0.5),
        };
        assert!(small_eigenvalue_sum(&s).is_err());
    }

    #[test]
    fn weak_threshold() {
        // V = 100, δ = 1/2 gives θ = 0.1.
        let s = SpectrumCheck {
            eigenvalues: vec![0.05, 0.2],
            volume: 100.0,
            threshold: Threshold::Weak(0.5),
        };
        assert!((small_eigenvalue_sum(&s).unwrap() - 20f64.ln() / 100.0).abs() < 1e-15);
    }
}
