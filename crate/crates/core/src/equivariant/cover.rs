//! Integral homology of genuine covers and dual-cell 2-cycles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::cochain::{assemble, CochainLevel};
use super::complex::OrbitCellComplex;
use crate::error::{Error, Result};
use crate::linalg::snf;
use crate::subgroups::CosetAction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverHomology {
    pub b1: usize,
    pub torsion: Vec<BigInt>,
}

/// `H₁` of the cover `H\T`; the chain complex is the transpose of the
/// cochain complex. Requires a free action.
pub fn torsion_of_cover(complex: &OrbitCellComplex, action: &CosetAction) -> Result<CoverHomology> {
    if let Some(c) = complex.cells.iter().find(|c| c.stabilizer_order != 1) {
        return Err(Error::OrbifoldTorsion(c.id.clone()));
    }
    let levels = assemble(complex, action)?;
    homology_one(&levels)
}

pub(crate) fn homology_one(levels: &[CochainLevel]) -> Result<CoverHomology> {
    let Some(l1) = levels.get(1) else {
        return Ok(CoverHomology {
            b1: 0,
            torsion: Vec::new(),
        });
    };
    let rank0 = snf(&levels[0].delta)?.rank;
    let s = snf(&l1.delta)?;
    Ok(CoverHomology {
        b1: l1.dim() - rank0 - s.rank,
        torsion: s.torsion(),
    })
}

/// `Z = Σₑ ω(e) e*` on the dual 2-cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCycle {
    pub coefficients: Vec<String>,
    pub target: &'static str,
    pub closed: bool,
    #[serde(skip)]
    values: Vec<BigRational>,
}

impl DualCycle {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub fn dual_two_cycle(levels: &[CochainLevel], omega: &[BigRational]) -> Result<DualCycle> {
    let l1 = levels.get(1).ok_or(Error::DegreeOutOfRange(1))?;
    if omega.len() != l1.dim() {
        return Err(Error::Shape(format!(
            "1-cochain has {} entries, expected {}",
            omega.len(),
            l1.dim()
        )));
    }
    let mut image = vec![BigRational::zero(); l1.delta.rows()];
    for (r, c, v) in l1.delta.iter() {
        image[r] += v * &omega[c];
    }
    Ok(DualCycle {
        coefficients: omega.iter().map(|x| x.to_string()).collect(),
        target: "dual 2-cells",
        closed: image.iter().all(|x| x.is_zero()),
        values: omega.to_vec(),
    })
}

/// `cells_per_dual · Σₑ |ω(e)|`, bounding the Gromov–Thurston norm of `[Z]`
/// in a triangulation with at most `cells_per_dual` triangles per dual cell.
pub fn gt_upper_bound(cycle: &DualCycle, cells_per_dual: u64) -> Result<f64> {
    if !cycle.closed {
        return Err(Error::NotClosed);
    }
    let total: BigRational = cycle.values.iter().map(|x| x.abs()).sum();
    Ok(cells_per_dual as f64 * total.to_f64().unwrap_or(f64::INFINITY))
}
