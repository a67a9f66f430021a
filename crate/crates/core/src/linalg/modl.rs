//! Rank over the prime field 𝔽_ℓ.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::elim::{Ring, Workspace};
use super::sparse::SparseZMatrix;
use crate::arith;
use crate::error::{Error, Result};

pub(crate) struct ModRing {
    pub p: u64,
}

impl ModRing {
    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().unwrap()
    }

    pub fn inv(&self, a: u64) -> u64 {
        arith::pow_mod(a as u128, (self.p - 2) as u128, self.p as u128) as u64
    }
}

impl Ring for ModRing {
    type Elem = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, q: &u64, b: &u64) -> u64 {
        let p = self.p as u128;
        let qb = (*q as u128 * *b as u128) % p;
        ((*a as u128 + p - qb) % p) as u64
    }
    fn neg_mul(&self, q: &u64, b: &u64) -> u64 {
        let p = self.p as u128;
        ((p - (*q as u128 * *b as u128) % p) % p) as u64
    }
}

/// Rank of an integral matrix modulo the prime `ell`. Rational entries are
/// accepted when their denominators are prime to `ell`.
pub fn rank_mod_l(a: &SparseZMatrix, ell: u64) -> Result<usize> {
    if !arith::is_prime(ell as u128) {
        return Err(Error::NotPrime(ell.to_string()));
    }
    let ring = ModRing { p: ell };
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); a.rows()];
    for (r, c, v) in a.iter() {
        let den = ring.reduce(v.denom());
        if den == 0 {
            return Err(Error::NonIntegral { row: r, col: c });
        }
        let num = ring.reduce(v.numer());
        let x = ((num as u128 * ring.inv(den) as u128) % ell as u128) as u64;
        rows[r].push((c, x));
    }
    Ok(rank_rows(&ring, a.cols(), rows))
}

pub(crate) fn rank_rows(ring: &ModRing, ncols: usize, rows: Vec<Vec<(usize, u64)>>) -> usize {
    let mut ws = Workspace::new(ring, ncols, rows, true);
    let mut rank = 0;
    while let Some(c) = ws.next_col() {
        let candidates = ws.rows_in_col(c);
        let Some(&r) = candidates.iter().min_by_key(|&&r| (ws.rows[r].len(), r)) else {
            ws.park(c);
            continue;
        };
        let inv = ring.inv(*ws.entry(r, c).unwrap());
        for other in candidates {
            if other == r {
                continue;
            }
            let v = *ws.entry(other, c).unwrap();
            let q = ((v as u128 * inv as u128) % ring.p as u128) as u64;
            ws.row_sub_mul(other, r, &q);
        }
        ws.kill_row(r);
        ws.kill_col(c);
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(rank_mod_l(&SparseZMatrix::identity(5), 53).unwrap(), 5);
    }

    #[test]
    fn entry_vanishing_mod_ell() {
        let m = SparseZMatrix::from_dense_i64(&[vec![61, 0], vec![0, 1]]);
        assert_eq!(rank_mod_l(&m, 61).unwrap(), 1);
        assert_eq!(rank_mod_l(&m, 53).unwrap(), 2);
    }

    #[test]
    fn dependent_rows() {
        let m = SparseZMatrix::from_dense_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank_mod_l(&m, 53).unwrap(), 1);
    }

    #[test]
    fn composite_rejected() {
        assert!(rank_mod_l(&SparseZMatrix::identity(2), 57).is_err());
    }
}
