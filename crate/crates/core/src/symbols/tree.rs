//! Distances in the Bruhat–Tits tree of `PGL₂(F_v)`.
//!
//! Vertices are homothety classes `[M·𝒪_v²]`; the standard vertex is `M = 1`.
//! The geodesic between two ends `α, β` is the apartment
//! `{[m·diag(π^t, 1)] : t ∈ ℤ}` where `m = [α̂ β̂]`.

use super::ModularSymbol;
use crate::error::{Error, Result};
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::residue::ResidueRing;
use crate::quadfield::{Field, QfIdeal, QuadElem};

/// `v(x)`, with `None` standing for `+∞`.
pub(crate) fn val(v: &QfIdeal, x: &QuadElem) -> Option<u32> {
    v.valuation(x)
}

fn min_val(v: &QfIdeal, xs: [&QuadElem; 2]) -> u32 {
    xs.iter()
        .filter_map(|x| val(v, x))
        .min()
        .expect("zero vector")
}

fn degenerate(sym: &ModularSymbol, v: &QfIdeal) -> Result<QuadElem> {
    let d = sym.alpha.cross(sym.field, &sym.beta);
    if d.is_zero() {
        return Err(Error::DegenerateSymbol(v.label()));
    }
    Ok(d)
}

/// `A = adj(g)·m`; the vertex `[g]` seen from the geodesic's frame.
fn frame(sym: &ModularSymbol) -> Mat2 {
    matrix::mul(sym.field, &matrix::adj(&sym.g), &sym.endpoint_matrix())
}

/// Distance from `[g]` to the apartment vertex `[m·diag(π^t, 1)]`.
pub fn apartment_distance(sym: &ModularSymbol, v: &QfIdeal, t: i64) -> Result<i64> {
    degenerate(sym, v)?;
    let a = frame(sym);
    let (dv, c1, c2) = profile(sym.field, v, &a);
    Ok(dv + t - 2 * (t + c1).min(c2))
}

fn profile(f: Field, v: &QfIdeal, a: &Mat2) -> (i64, i64, i64) {
    let dv = val(v, &matrix::det(f, a)).unwrap() as i64;
    let c1 = min_val(v, [&a[0][0], &a[1][0]]) as i64;
    let c2 = min_val(v, [&a[0][1], &a[1][1]]) as i64;
    (dv, c1, c2)
}

/// `n_v`: distance from `[g·𝒪_v²]` to the geodesic `(α, β)`.
///
/// The apartment distance `D(t) = v(det A) + t − 2·min(t + v(A₁), v(A₂))` is
/// piecewise linear with slopes `−1` and `+1`, so its minimum sits at
/// `t = v(A₂) − v(A₁)`.
pub fn tree_valuation(sym: &ModularSymbol, v: &QfIdeal) -> Result<u32> {
    degenerate(sym, v)?;
    let (dv, c1, c2) = profile(sym.field, v, &frame(sym));
    Ok((dv - c1 - c2) as u32)
}

/// A neighbour of the standard vertex, named by the residue of the ends
/// reached through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Ends `(x : 1)` with `x ≡ r (mod 𝔭)`.
    Finite(QuadElem),
    /// Ends reducing to `(1 : 0)`.
    Infinity,
}

impl Direction {
    /// A matrix `N` with `[N·𝒪_v²]` the neighbour in this direction.
    pub fn matrix(&self, pi: &QuadElem) -> Mat2 {
        match self {
            Direction::Finite(r) => [[r.clone(), pi.clone()], [QuadElem::one(), QuadElem::zero()]],
            Direction::Infinity => [
                [QuadElem::one(), QuadElem::zero()],
                [QuadElem::zero(), pi.clone()],
            ],
        }
    }

    /// All `q + 1` directions.
    pub fn all(v: &QfIdeal) -> Vec<Direction> {
        let ring = ResidueRing::new(v);
        let mut out: Vec<Direction> = (0..ring.size())
            .map(|i| Direction::Finite(ring.to_elem(ring.from_index(i))))
            .collect();
        out.push(Direction::Infinity);
        out
    }
}

/// Valuation against the segment from the standard vertex towards `dir`:
/// the larger distance of its two translates `g·ℓ_v` to the geodesic.
pub fn refined_valuation(sym: &ModularSymbol, v: &QfIdeal, dir: &Direction) -> Result<u32> {
    let n0 = tree_valuation(sym, v)?;
    let moved = ModularSymbol {
        g: matrix::mul(sym.field, &sym.g, &dir.matrix(v.generator())),
        ..sym.clone()
    };
    Ok(n0.max(tree_valuation(&moved, v)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfsOutcome {
    Distance(u32),
    /// No geodesic vertex within the search radius.
    Beyond,
    /// The vertex budget ran out first.
    Budget,
}

/// Brute-force distance: walks the spheres around `[g]` outward and stops at
/// the first vertex lying on the apartment of `(α, β)`. A vertex `[M]` lies
/// there iff `X = m⁻¹M` factors as `diag(π^i, π^j)·GL₂(𝒪_v)`, i.e.
/// `v(det X) = v(X₁) + v(X₂)` for its rows.
pub fn bfs_valuation(
    sym: &ModularSymbol,
    v: &QfIdeal,
    radius: u32,
    budget: usize,
) -> Result<BfsOutcome> {
    let f = sym.field;
    let det_m = degenerate(sym, v)?;
    let b = matrix::mul(f, &matrix::adj(&sym.endpoint_matrix()), &sym.g);
    // det X = det m · det g · det N
    let base = val(v, &det_m).unwrap() as i64 + val(v, &matrix::det(f, &sym.g)).unwrap() as i64;
    let pi = v.generator().clone();
    let ring = ResidueRing::new(v);
    let digits: Vec<QuadElem> = (0..ring.size())
        .map(|i| ring.to_elem(ring.from_index(i)))
        .collect();
    let q = digits.len();
    let mut pows = vec![QuadElem::one()];
    for _ in 0..radius {
        let last = pows.last().unwrap().clone();
        pows.push(f.mul(&last, &pi));
    }
    let on_geodesic = |n: &Mat2, k: u32| {
        let x = matrix::mul(f, &b, n);
        let r1 = min_val(v, [&x[0][0], &x[0][1]]) as i64;
        let r2 = min_val(v, [&x[1][0], &x[1][1]]) as i64;
        base + k as i64 == r1 + r2
    };
    let expand = |ds: &[usize], from: usize| {
        let mut x = QuadElem::zero();
        for (i, &d) in ds.iter().enumerate() {
            x = &x + &f.mul(&digits[d], &pows[from + i]);
        }
        x
    };
    let mut seen = 0usize;
    if on_geodesic(&matrix::identity(), 0) {
        return Ok(BfsOutcome::Distance(0));
    }
    for k in 1..=radius {
        let ku = k as usize;
        // [[1, 0], [x, π^k]] for x mod π^k, then [[π^k, y], [0, 1]] for y ∈ π𝒪 mod π^k.
        for (len, from, lower) in [(ku, 0, true), (ku - 1, 1, false)] {
            let mut ds = vec![0usize; len];
            loop {
                seen += 1;
                if seen > budget {
                    return Ok(BfsOutcome::Budget);
                }
                let x = expand(&ds, from);
                let n = if lower {
                    [[QuadElem::one(), QuadElem::zero()], [x, pows[ku].clone()]]
                } else {
                    [[pows[ku].clone(), x], [QuadElem::zero(), QuadElem::one()]]
                };
                if on_geodesic(&n, k) {
                    return Ok(BfsOutcome::Distance(k));
                }
                let mut i = 0;
                while i < len {
                    ds[i] += 1;
                    if ds[i] < q {
                        break;
                    }
                    ds[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
    }
    Ok(BfsOutcome::Beyond)
}
