//! Dense exact rational matrices: reduced row echelon form, kernels, solves
//! and fraction-free determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type QMat = Vec<Vec<BigRational>>;
pub type QVec = Vec<BigRational>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![BigRational::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn transpose(a: &QMat, ncols: usize) -> QMat {
    let mut t = zeros(ncols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

pub fn mat_mul(a: &QMat, b: &QMat, bcols: usize) -> QMat {
    let mut out = zeros(a.len(), bcols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &QMat, v: &[BigRational]) -> QVec {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMat, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &QMat, ncols: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, ncols).len()
}

/// Basis of the rational kernel, one vector per free column.
pub fn kernel(a: &QMat, ncols: usize) -> Vec<QVec> {
    let mut m = a.clone();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[f] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][f].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve(a: &QMat, b: &[BigRational]) -> Result<QVec> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            expected: n,
        });
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(a: &QMat) -> Result<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            expected: n,
        });
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Bareiss elimination on an integer matrix. Returns the determinant and the
/// leading principal minors (used as a positive-definiteness test).
pub fn bareiss(mut m: Vec<Vec<BigInt>>) -> (BigInt, Vec<BigInt>) {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                minors.extend(std::iter::repeat_n(BigInt::zero(), n - k));
                return (BigInt::zero(), minors);
            };
            m.swap(k, p);
            sign = -sign;
            // A swap breaks the leading-minor reading from here on.
            minors.push(BigInt::zero());
        } else {
            minors.push(&sign * &m[k][k]);
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        &sign * &m[n - 1][n - 1]
    };
    (det, minors)
}

/// Clears denominators of a rational square matrix: returns `(M, L)` with
/// `a = M / L` and `M` integral.
pub fn integralize(a: &QMat) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut l = BigInt::one();
    for row in a {
        for v in row {
            l = l.lcm(v.denom());
        }
    }
    let lq = BigRational::from_integer(l.clone());
    let m = a
        .iter()
        .map(|row| row.iter().map(|v| (v * &lq).to_integer()).collect())
        .collect();
    (m, l)
}

/// Exact determinant of a rational square matrix via Bareiss.
pub fn det(a: &QMat) -> BigRational {
    let n = a.len();
    let (m, l) = integralize(a);
    let (d, _) = bareiss(m);
    BigRational::new(d, num_traits::pow(l, n))
}

/// Positive-definiteness of a symmetric rational matrix through its leading
/// principal minors (Sylvester's criterion).
pub fn is_positive_definite(a: &QMat) -> bool {
    let (m, _) = integralize(a);
    let n = m.len();
    // Bareiss without pivoting yields the leading minors directly when none vanish.
    let (_, minors) = bareiss(m);
    minors.len() == n && minors.iter().all(|x| x.is_positive())
}

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(x).unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> QMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_minors() {
        let a = qm(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&a), q(5));
        assert!(is_positive_definite(&a));
        assert!(!is_positive_definite(&qm(&[&[1, 2], &[2, 1]])));
        assert!(!is_positive_definite(&qm(&[&[0, 1], &[1, 0]])));
        assert_eq!(det(&qm(&[&[0, 1], &[1, 0]])), q(-1));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&qm(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(dot(&[q(1), q(2), q(3)], &v).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
    }

    #[test]
    fn log_of_huge_integer() {
        let x = num_traits::pow(BigInt::from(3), 2000);
        assert!((ln_bigint(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
