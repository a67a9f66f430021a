//! 2×2 matrices over `𝒪`.

use super::elem::{Field, QuadElem};

/// Rows first: `[[a, b], [c, d]]`.
pub type Mat2 = [[QuadElem; 2]; 2];

pub fn identity() -> Mat2 {
    [
        [QuadElem::one(), QuadElem::zero()],
        [QuadElem::zero(), QuadElem::one()],
    ]
}

pub fn from_i64(m: [[(i64, i64); 2]; 2]) -> Mat2 {
    m.map(|row| row.map(|(a, b)| QuadElem::new(a, b)))
}

pub fn mul(f: Field, x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &f.mul(&x[i][0], &y[0][j]) + &f.mul(&x[i][1], &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn det(f: Field, m: &Mat2) -> QuadElem {
    &f.mul(&m[0][0], &m[1][1]) - &f.mul(&m[0][1], &m[1][0])
}

/// Adjugate: `m · adj(m) = det(m)·I`.
pub fn adj(m: &Mat2) -> Mat2 {
    [[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]
}

/// Inverse of a matrix whose determinant is a unit.
pub fn inv(f: Field, m: &Mat2) -> Option<Mat2> {
    let di = f.unit_inverse(&det(f, m))?;
    Some(adj(m).map(|row| row.map(|x| f.mul(&di, &x))))
}

pub fn scale(f: Field, k: &QuadElem, m: &Mat2) -> Mat2 {
    m.clone().map(|row| row.map(|x| f.mul(k, &x)))
}

/// `m = λ·I` for some unit `λ` (identity in `PGL₂`).
pub fn is_scalar_unit(f: Field, m: &Mat2) -> bool {
    m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1] && f.is_unit(&m[0][0])
}

pub fn is_identity(m: &Mat2) -> bool {
    *m == identity()
}

pub fn to_strings(m: &Mat2) -> [[String; 2]; 2] {
    m.clone().map(|row| row.map(|x| x.to_string()))
}
