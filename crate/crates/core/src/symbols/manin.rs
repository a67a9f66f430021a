//! Continued-fraction decomposition of `⟨α, β⟩` into unimodular symbols.

use std::collections::BTreeMap;

use super::P1Point;
use crate::error::Result;
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::{Field, QuadElem};

/// Matrices `gᵢ ∈ SL₂(𝒪)` whose symbols `⟨gᵢ·0, gᵢ·∞⟩` chain from `α` to `β`.
///
/// `γ ∈ SL₂(𝒪)` moves `α` to `∞`; the convergents of `γβ`, computed by
/// nearest-integer division, give the chain from `∞` to `γβ`, which `γ⁻¹`
/// carries back.
pub fn manin_decompose(f: Field, alpha: &P1Point, beta: &P1Point) -> Result<Vec<Mat2>> {
    if alpha == beta {
        return Ok(Vec::new());
    }
    let (a, b) = (&alpha.x, &alpha.y);
    let (gg, s, t) = f.xgcd(a, b);
    let gi = f
        .unit_inverse(&gg)
        .expect("endpoint coordinates are coprime");
    let gamma: Mat2 = [[f.mul(&s, &gi), f.mul(&t, &gi)], [-b, a.clone()]];
    let gamma_inv = matrix::adj(&gamma);
    let c = beta.apply(f, &gamma)?;

    let mut out = Vec::new();
    let (mut p1, mut p2) = (QuadElem::one(), QuadElem::zero());
    let (mut q1, mut q2) = (QuadElem::zero(), QuadElem::one());
    let (mut r0, mut r1) = (c.x, c.y);
    while !r1.is_zero() {
        let (k, rem) = f.div_rem(&r0, &r1);
        let p = &f.mul(&k, &p1) + &p2;
        let q = &f.mul(&k, &q1) + &q2;
        let h = [[p.clone(), p1.clone()], [q.clone(), q1.clone()]];
        out.push(unimodular(f, matrix::mul(f, &gamma_inv, &h)));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
        r0 = std::mem::replace(&mut r1, rem);
    }
    Ok(out)
}

/// Rescales the first column by a unit so the determinant is 1.
fn unimodular(f: Field, mut g: Mat2) -> Mat2 {
    let u = f
        .unit_inverse(&matrix::det(f, &g))
        .expect("convergent matrices are invertible");
    for row in g.iter_mut() {
        row[0] = f.mul(&u, &row[0]);
    }
    g
}

/// `Σ (gᵢ·∞ − gᵢ·0)` as a formal sum of points.
pub fn boundary_sum(f: Field, gs: &[Mat2]) -> Result<BTreeMap<P1Point, i64>> {
    let mut sum = BTreeMap::new();
    for g in gs {
        *sum.entry(P1Point::infinity().apply(f, g)?).or_insert(0) += 1;
        *sum.entry(P1Point::zero().apply(f, g)?).or_insert(0) -= 1;
    }
    sum.retain(|_, c| *c != 0);
    Ok(sum)
}
