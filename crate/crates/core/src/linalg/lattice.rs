//! Integral lattices inside ℚⁿ: saturated kernels, Hermite bases, Gram
//! covolumes and orthogonal projection under a rational metric.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::{self, QMat, QVec};
use super::sparse::SparseZMatrix;
use crate::error::{Error, Result};

/// Covolume of a lattice under a Gram metric.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeVolume {
    pub log_volume: f64,
    pub rank: usize,
    pub gram_det: BigRational,
}

impl LatticeVolume {
    pub fn trivial() -> Self {
        LatticeVolume {
            log_volume: 0.0,
            rank: 0,
            gram_det: BigRational::one(),
        }
    }
}

/// Row Hermite normal form of the lattice spanned by `gens`; zero rows dropped.
pub fn row_hnf(mut gens: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    gens.retain(|r| r.iter().any(|x| !x.is_zero()));
    for c in 0..ncols {
        let mut active: Vec<Vec<BigInt>> = Vec::new();
        let mut rest = Vec::new();
        for r in gens.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
            } else {
                active.push(r);
            }
        }
        while active.len() > 1 {
            let k = (0..active.len())
                .min_by_key(|&i| active[i][c].abs())
                .unwrap();
            let pivot = active.swap_remove(k);
            let mut next = Vec::new();
            for mut r in active.drain(..) {
                let qt = r[c].div_floor(&pivot[c]);
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &qt * y;
                }
                if r[c].is_zero() {
                    if r.iter().any(|x| !x.is_zero()) {
                        rest.push(r);
                    }
                } else {
                    next.push(r);
                }
            }
            next.push(pivot);
            active = next;
        }
        if let Some(mut p) = active.pop() {
            if p[c].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
            }
            for prev in out.iter_mut() {
                let qt = prev[c].div_floor(&p[c]);
                if !qt.is_zero() {
                    for (x, y) in prev.iter_mut().zip(&p) {
                        *x -= &qt * y;
                    }
                }
            }
            out.push(p);
        }
        gens = rest;
    }
    out
}

/// Integral kernel basis from unimodular column reduction: with `A·U = [H | 0]`
/// the trailing columns of `U` span `ker A ∩ ℤⁿ`.
pub fn integer_kernel(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // Column-major storage of [A; U].
    let mut cols: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut v = vec![BigInt::zero(); m + ncols];
            v[m + j] = BigInt::one();
            v
        })
        .collect();
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row {
            cols[*j][i] += x;
        }
    }
    let mut k = 0;
    for i in 0..m {
        if k == ncols {
            break;
        }
        loop {
            let nz: Vec<usize> = (k..ncols).filter(|&j| !cols[j][i].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| cols[j][i].abs()).unwrap();
            cols.swap(k, p);
            if nz.len() == 1 {
                k += 1;
                break;
            }
            let pivot = cols[k].clone();
            for j in (k + 1)..ncols {
                if cols[j][i].is_zero() {
                    continue;
                }
                let qt = cols[j][i].div_floor(&pivot[i]);
                for (x, y) in cols[j].iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &qt * y;
                    }
                }
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = cols[k..].iter().map(|c| c[m..].to_vec()).collect();
    row_hnf(basis, ncols)
}

/// Basis of `ker(A) ∩ ℤⁿ`, saturated, in Hermite normal form.
pub fn saturated_kernel(a: &SparseZMatrix) -> Vec<Vec<BigInt>> {
    integer_kernel(&a.row_scaled_integer_rows(), a.cols())
}

/// Basis of the lattice generated by rational vectors.
pub fn lattice_basis(gens: &[QVec], ncols: usize) -> Vec<QVec> {
    let mut den = BigInt::one();
    for v in gens {
        for x in v {
            den = den.lcm(x.denom());
        }
    }
    let dq = BigRational::from_integer(den.clone());
    let ints: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    row_hnf(ints, ncols)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::new(x, den.clone()))
                .collect()
        })
        .collect()
}

pub fn to_rational(v: &[BigInt]) -> QVec {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// `Bᵀ G B` for basis vectors stored as rows of `b`.
pub fn gram_matrix(b: &[QVec], g: &QMat) -> QMat {
    let gb: Vec<QVec> = b.iter().map(|v| dense::mat_vec(g, v)).collect();
    b.iter()
        .map(|u| gb.iter().map(|w| dense::dot(u, w)).collect())
        .collect()
}

/// Covolume of the lattice with basis `b` under the metric `g`.
pub fn gram_log_volume(b: &[QVec], g: &QMat) -> Result<LatticeVolume> {
    if b.is_empty() {
        return Ok(LatticeVolume::trivial());
    }
    let n = g.len();
    if b.iter().any(|v| v.len() != n) {
        return Err(Error::Shape(format!("basis vectors must have length {n}")));
    }
    let rank = dense::rank(&b.to_vec(), n);
    if rank < b.len() {
        return Err(Error::RankDeficient {
            rank,
            expected: b.len(),
        });
    }
    let gram = gram_matrix(b, g);
    if !dense::is_positive_definite(&gram) {
        return Err(Error::NotPositiveDefinite);
    }
    let gram_det = dense::det(&gram);
    Ok(LatticeVolume {
        log_volume: 0.5 * dense::ln_rational(&gram_det),
        rank,
        gram_det,
    })
}

/// `G`-orthogonal projection of `v` onto the span of `s`.
pub fn project_orthogonal(v: &[BigRational], s: &[QVec], g: &QMat) -> Result<QVec> {
    let n = v.len();
    if s.is_empty() {
        return Ok(vec![BigRational::zero(); n]);
    }
    let gram = gram_matrix(s, g);
    let gv = dense::mat_vec(g, v);
    let rhs: QVec = s.iter().map(|u| dense::dot(u, &gv)).collect();
    let coeffs = dense::solve(&gram, &rhs).map_err(|e| match e {
        Error::RankDeficient { .. } => Error::RankDeficient {
            rank: dense::rank(&s.to_vec(), n),
            expected: s.len(),
        },
        other => other,
    })?;
    let mut out = vec![BigRational::zero(); n];
    for (c, u) in coeffs.iter().zip(s) {
        for (o, x) in out.iter_mut().zip(u) {
            *o += c * x;
        }
    }
    Ok(out)
}
