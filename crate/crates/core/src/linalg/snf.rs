//! Smith normal form over the integers.
//!
//! Two phases: unit pivots are eliminated first, columns taken in order of
//! increasing fill; the unit-free remainder is then reduced with
//! smallest-magnitude pivots and Euclidean row/column steps. The resulting
//! diagonal is normalized into a divisibility chain.

use std::cell::Cell;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashSet;

use super::elim::{Ring, Workspace};
use super::sparse::SparseZMatrix;
use crate::error::Result;

/// Invariant factors `d₁ | d₂ | … | d_r` and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Divisors greater than one (the torsion part of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub(crate) struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &BigInt, q: &BigInt, b: &BigInt) -> BigInt {
        a - q * b
    }
    fn neg_mul(&self, q: &BigInt, b: &BigInt) -> BigInt {
        -(q * b)
    }
}

/// Machine-integer ring that records overflow instead of wrapping.
struct SmallRing {
    overflow: Cell<bool>,
}

impl Ring for SmallRing {
    type Elem = i128;
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &i128, q: &i128, b: &i128) -> i128 {
        match q.checked_mul(*b).and_then(|x| a.checked_sub(x)) {
            Some(v) if v.unsigned_abs() < 1 << 100 => v,
            _ => {
                self.overflow.set(true);
                1
            }
        }
    }
    fn neg_mul(&self, q: &i128, b: &i128) -> i128 {
        self.sub_mul(&0, q, b)
    }
}

/// A matrix after all unit pivots have been eliminated.
pub(crate) struct UnitReduced {
    pub units: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, BigInt)>>,
}

trait UnitPivot: Ring<Elem: Hash + Eq> {
    fn is_pm_one(&self, a: &Self::Elem) -> bool;
    fn unit_quot(&self, v: &Self::Elem, p: &Self::Elem) -> Self::Elem;
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

impl UnitPivot for IntRing {
    fn is_pm_one(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn unit_quot(&self, v: &BigInt, p: &BigInt) -> BigInt {
        v * p
    }
    fn is_negative(&self, a: &BigInt) -> bool {
        a.is_negative()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

impl UnitPivot for SmallRing {
    fn is_pm_one(&self, a: &i128) -> bool {
        *a == 1 || *a == -1
    }
    fn unit_quot(&self, v: &i128, p: &i128) -> i128 {
        v * p
    }
    fn is_negative(&self, a: &i128) -> bool {
        *a < 0
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
}

/// Drops live rows equal to an earlier row up to sign; the row lattice is
/// unchanged. Returns the number of entries kept.
fn dedup_rows<R: UnitPivot>(ws: &mut Workspace<'_, R>) -> usize {
    let mut seen = FxHashSet::default();
    let mut kept = 0;
    let live: Vec<usize> = ws.live_rows().collect();
    for r in live {
        let row = &ws.rows[r];
        let len = row.len();
        let key: Vec<(usize, R::Elem)> = if ws.ring.is_negative(&row[0].1) {
            row.iter().map(|(c, v)| (*c, ws.ring.neg(v))).collect()
        } else {
            row.clone()
        };
        if seen.insert(key) {
            kept += len;
        } else {
            ws.kill_row(r);
        }
    }
    kept
}

fn eliminate_units<R: UnitPivot>(
    ws: &mut Workspace<'_, R>,
    abort: impl Fn() -> bool,
) -> Option<usize> {
    let mut units = 0;
    // Fill-in late in the elimination produces many repeated rows. A dedup
    // pass costs about as much as the live entries, so one is run whenever
    // the row work since the last pass exceeds eight times that.
    let mut entries = dedup_rows(ws);
    let mut work = 0;
    while let Some(c) = ws.next_col() {
        if work > 8 * entries {
            entries = dedup_rows(ws);
            work = 0;
        }
        let candidates = ws.rows_in_col(c);
        let pivot_row = candidates
            .iter()
            .copied()
            .filter(|&r| ws.entry(r, c).is_some_and(|v| ws.ring.is_pm_one(v)))
            .min_by_key(|&r| (ws.rows[r].len(), r));
        let Some(r) = pivot_row else {
            ws.park(c);
            continue;
        };
        let p = ws.entry(r, c).cloned().unwrap();
        for other in candidates {
            if other == r {
                continue;
            }
            let v = ws.entry(other, c).cloned().unwrap();
            let q = ws.ring.unit_quot(&v, &p);
            work += ws.rows[other].len() + ws.rows[r].len();
            ws.row_sub_mul(other, r, &q);
        }
        if abort() {
            return None;
        }
        ws.kill_row(r);
        ws.kill_col(c);
        units += 1;
    }
    dedup_rows(ws);
    Some(units)
}

/// Eliminates every unit pivot; the remaining rows live on the surviving columns.
pub(crate) fn unit_reduce(ncols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> UnitReduced {
    let small: Option<Vec<Vec<(usize, i128)>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, v)| {
                    v.to_i128()
                        .filter(|x| x.unsigned_abs() < 1 << 100)
                        .map(|x| (*c, x))
                })
                .collect()
        })
        .collect();
    if let Some(small) = small {
        let ring = SmallRing {
            overflow: Cell::new(false),
        };
        let mut ws = Workspace::new(&ring, ncols, small, true);
        if let Some(units) = eliminate_units(&mut ws, || ring.overflow.get()) {
            let rows = ws
                .live_rows()
                .map(|r| {
                    ws.rows[r]
                        .iter()
                        .map(|(c, v)| (*c, BigInt::from(*v)))
                        .collect()
                })
                .collect();
            return UnitReduced { units, ncols, rows };
        }
    }
    let ring = IntRing;
    let mut ws = Workspace::new(&ring, ncols, rows, true);
    let units = eliminate_units(&mut ws, || false).unwrap();
    let live: Vec<usize> = ws.live_rows().collect();
    let rows = live
        .into_iter()
        .map(|r| std::mem::take(&mut ws.rows[r]))
        .collect();
    UnitReduced { units, ncols, rows }
}

/// Smith normal form of an integral matrix.
pub fn snf(a: &SparseZMatrix) -> Result<SnfResult> {
    let rows = a.integer_rows()?;
    Ok(snf_rows(a.cols(), rows))
}

pub(crate) fn snf_rows(ncols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> SnfResult {
    snf_reduced(unit_reduce(ncols, rows))
}

pub(crate) fn snf_reduced(red: UnitReduced) -> SnfResult {
    let ring = IntRing;
    let units = red.units;
    let mut ws = Workspace::new(&ring, red.ncols, red.rows, false);

    // General Euclidean reduction on what is left.
    let mut diag: Vec<BigInt> = Vec::new();
    loop {
        let Some((mut r, mut c)) = smallest_entry(&ws) else {
            break;
        };
        loop {
            let p = ws.entry(r, c).cloned().unwrap();
            // Clear column c by row operations.
            let mut best: Option<(BigInt, usize)> = None;
            for other in ws.rows_in_col(c) {
                if other == r {
                    continue;
                }
                let v = ws.entry(other, c).cloned().unwrap();
                let q = v.div_floor(&p);
                ws.row_sub_mul(other, r, &q);
                if let Some(rem) = ws.entry(other, c) {
                    let m = rem.abs();
                    if best.as_ref().is_none_or(|(b, _)| m < *b) {
                        best = Some((m, other));
                    }
                }
            }
            if let Some((_, nr)) = best {
                r = nr;
                continue;
            }
            // Column c now only meets row r: column operations touch row r alone.
            let mut best: Option<(BigInt, usize)> = None;
            let row: Vec<(usize, BigInt)> = ws.rows[r].clone();
            for (oc, v) in row {
                if oc == c {
                    continue;
                }
                let rem = v.mod_floor(&p);
                ws.set_entry(r, oc, rem.clone());
                if !rem.is_zero() {
                    let m = rem.abs();
                    if best.as_ref().is_none_or(|(b, _)| m < *b) {
                        best = Some((m, oc));
                    }
                }
            }
            if let Some((_, nc)) = best {
                c = nc;
                continue;
            }
            diag.push(p.abs());
            ws.kill_row(r);
            ws.kill_col(c);
            break;
        }
    }

    let rank = units + diag.len();
    let mut divisors = vec![BigInt::one(); units];
    divisors.extend(normalize_chain(diag));
    SnfResult { divisors, rank }
}

fn smallest_entry<R: Ring<Elem = BigInt>>(ws: &Workspace<'_, R>) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for r in ws.live_rows() {
        let rl = ws.rows[r].len();
        for (c, v) in &ws.rows[r] {
            if !ws.col_alive[*c] {
                continue;
            }
            let m = v.abs();
            let cost = (rl - 1) * ws.col_count[*c].saturating_sub(1);
            let better = match &best {
                None => true,
                Some((bm, bcost, _, _)) => m < *bm || (m == *bm && cost < *bcost),
            };
            if better {
                best = Some((m, cost, r, *c));
            }
        }
    }
    best.map(|(_, _, r, c)| (r, c))
}

/// Turns a list of positive diagonal entries into invariant factors.
pub(crate) fn normalize_chain(d: Vec<BigInt>) -> Vec<BigInt> {
    let total = d.len();
    let mut d: Vec<BigInt> = d.into_iter().filter(|x| !x.is_one()).collect();
    let n = d.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort();
    let mut out = vec![BigInt::one(); total - n];
    out.extend(d);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn divs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_unit_divisors() {
        let r = snf(&SparseZMatrix::identity(3)).unwrap();
        assert_eq!(r.divisors, divs(&[1, 1, 1]));
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn two_by_two_example() {
        // [[2,4],[6,8]]: gcd of entries 2, determinant -8, so (2, 4).
        let r = snf(&SparseZMatrix::from_dense_i64(&[vec![2, 4], vec![6, 8]])).unwrap();
        assert_eq!(r.divisors, divs(&[2, 4]));
    }

    #[test]
    fn zero_matrix() {
        let r = snf(&SparseZMatrix::zeros(2, 2)).unwrap();
        assert!(r.divisors.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rejects_fractions() {
        let m =
            SparseZMatrix::from_triplets(1, 1, vec![(0, 0, BigRational::new(1.into(), 2.into()))])
                .unwrap();
        assert!(snf(&m).is_err());
    }

    #[test]
    fn chain_normalization() {
        assert_eq!(normalize_chain(divs(&[6, 4])), divs(&[2, 12]));
        assert_eq!(normalize_chain(divs(&[2, 3])), divs(&[1, 6]));
        assert_eq!(normalize_chain(divs(&[1, 5, 1])), divs(&[1, 1, 5]));
    }

    #[test]
    fn diagonal_two_three_is_one_six() {
        let r = snf(&SparseZMatrix::from_dense_i64(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(r.divisors, divs(&[1, 6]));
        assert_eq!(r.torsion(), divs(&[6]));
    }
}
