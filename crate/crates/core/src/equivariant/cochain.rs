//! Equivariant cochains with coefficients in ℤ[H\Γ].
//!
//! A cochain is determined by its values `f(σ̃)` on orbit representatives,
//! which lie in the fixed lattice of the stabilizer Γ(σ). That lattice has
//! the (signed) orbit indicators as a basis. `Γ` acts on the coset basis by
//! `g·e_x = e_{x g⁻¹}`, so `(g·v)[y] = v[y g]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::complex::{OrbitCellComplex, ParsedCell};
use crate::error::{Error, Result};
use crate::linalg::dense::QMat;
use crate::linalg::SparseZMatrix;
use crate::subgroups::{CosetAction, Word};

/// Basis of the fixed lattice for one cell orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitBasis {
    pub cell: String,
    pub stabilizer_order: u64,
    /// Position of the first basis vector in the level.
    pub offset: usize,
    /// Signed coset supports; the first entry of each has sign `+1`.
    pub vectors: Vec<Vec<(usize, i32)>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CochainLevel {
    pub degree: usize,
    pub orbits: Vec<OrbitBasis>,
    /// Diagonal of the Gram matrix: `|support| / |Γ(σ)|`.
    pub gram: Vec<BigRational>,
    /// `δ_i : C^i → C^{i+1}`, of shape `dim C^{i+1} × dim C^i`.
    pub delta: SparseZMatrix,
}

impl CochainLevel {
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram_matrix(&self) -> QMat {
        let n = self.dim();
        let mut g = vec![vec![BigRational::zero(); n]; n];
        for (i, x) in self.gram.iter().enumerate() {
            g[i][i] = x.clone();
        }
        g
    }

    /// Orbit owning the basis vector at `pos`.
    pub fn orbit_at(&self, pos: usize) -> &OrbitBasis {
        let k = self.orbits.partition_point(|o| o.offset <= pos);
        &self.orbits[k - 1]
    }
}

fn perm_order(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// Orbits of the stabilizer on cosets with signs; an orbit reached with both
/// signs carries no invariant and is dropped.
fn fixed_basis(cell: &ParsedCell, action: &CosetAction) -> Result<Vec<Vec<(usize, i32)>>> {
    let n = action.degree();
    let images: Vec<(Vec<usize>, Vec<usize>, i32)> = cell
        .stabilizers
        .iter()
        .map(|s| {
            let fwd: Vec<usize> = (0..n).map(|x| action.act(x, &s.word)).collect();
            let mut inv = vec![0; n];
            for (x, &y) in fwd.iter().enumerate() {
                inv[y] = x;
            }
            (fwd, inv, if s.reversing { -1 } else { 1 })
        })
        .collect();
    for ((fwd, _, _), s) in images.iter().zip(&cell.stabilizers) {
        let ord = perm_order(fwd);
        if !cell.stabilizer_order.is_multiple_of(ord) {
            return Err(Error::Schema(format!(
                "cell '{}': stabilizer word {} acts with order {ord}, not dividing {}",
                cell.id, s.word, cell.stabilizer_order
            )));
        }
    }
    let mut sign = vec![0i32; n];
    let mut out = Vec::new();
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut orbit = vec![start];
        let mut consistent = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            i += 1;
            for (fwd, inv, eps) in &images {
                // f[y·s] = ε f[y] and f[y·s⁻¹] = ε f[y].
                for z in [fwd[y], inv[y]] {
                    let want = eps * sign[y];
                    if sign[z] == 0 {
                        sign[z] = want;
                        orbit.push(z);
                    } else if sign[z] != want {
                        consistent = false;
                    }
                }
            }
        }
        if !cell.stabilizer_order.is_multiple_of(orbit.len() as u64) {
            return Err(Error::Schema(format!(
                "cell '{}': stabilizer orbit of size {} does not divide {}",
                cell.id,
                orbit.len(),
                cell.stabilizer_order
            )));
        }
        if consistent {
            orbit.sort_unstable();
            let s0 = sign[orbit[0]];
            out.push(orbit.into_iter().map(|x| (x, sign[x] * s0)).collect());
        }
    }
    Ok(out)
}

/// Builds the cochain complex `C^0 → … → C^dim` and checks `δ∘δ = 0`.
pub fn assemble(complex: &OrbitCellComplex, action: &CosetAction) -> Result<Vec<CochainLevel>> {
    let cells = complex.parse()?;
    let action = action.aligned_to(&complex.generators)?;

    let mut bases: Vec<Vec<OrbitBasis>> = Vec::new();
    for level in &cells {
        let mut offset = 0;
        let mut orbs = Vec::new();
        for c in level {
            let vectors = fixed_basis(c, &action)?;
            let len = vectors.len();
            orbs.push(OrbitBasis {
                cell: c.id.clone(),
                stabilizer_order: c.stabilizer_order,
                offset,
                vectors,
            });
            offset += len;
        }
        bases.push(orbs);
    }

    let dims: Vec<usize> = bases
        .iter()
        .map(|b| b.iter().map(|o| o.vectors.len()).sum())
        .collect();
    let mut deltas = Vec::new();
    for i in 0..cells.len() {
        if i + 1 == cells.len() {
            deltas.push(SparseZMatrix::zeros(0, dims[i]));
            continue;
        }
        deltas.push(coboundary(
            &cells[i + 1],
            &bases[i + 1],
            &bases[i],
            dims[i + 1],
            dims[i],
            &action,
        )?);
    }

    for i in 0..deltas.len().saturating_sub(1) {
        let comp = deltas[i + 1].mul(&deltas[i])?;
        let first = comp.iter().next().map(|(r, c, _)| (r, c));
        if let Some((r, c)) = first {
            let to = orbit_name(&bases[i + 2], r);
            let from = orbit_name(&bases[i], c);
            return Err(Error::MalformedComplex { from, to });
        }
    }

    Ok(bases
        .into_iter()
        .zip(deltas)
        .enumerate()
        .map(|(degree, (orbits, delta))| {
            let gram = orbits
                .iter()
                .flat_map(|o| {
                    o.vectors.iter().map(move |v| {
                        BigRational::new(BigInt::from(v.len()), BigInt::from(o.stabilizer_order))
                    })
                })
                .collect();
            CochainLevel {
                degree,
                orbits,
                gram,
                delta,
            }
        })
        .collect())
}

fn orbit_name(orbits: &[OrbitBasis], pos: usize) -> String {
    let k = orbits.partition_point(|o| o.offset <= pos);
    orbits[k - 1].cell.clone()
}

/// `(δf)(σ̃) = Σ sign · g·f(τ̃)` over the boundary incidences of `σ̃`.
fn coboundary(
    upper: &[ParsedCell],
    upper_basis: &[OrbitBasis],
    lower_basis: &[OrbitBasis],
    rows: usize,
    cols: usize,
    action: &CosetAction,
) -> Result<SparseZMatrix> {
    let n = action.degree();
    let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
    for (cell, ub) in upper.iter().zip(upper_basis) {
        // Which basis vector, with which sign, each coset belongs to.
        let mut label: Vec<Option<(usize, i32)>> = vec![None; n];
        for (k, v) in ub.vectors.iter().enumerate() {
            for &(x, s) in v {
                label[x] = Some((k, s));
            }
        }
        // Column image vectors, accumulated over incidences.
        let mut images: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
        for (face, sign, g) in &cell.boundary {
            let ginv: Word = g.inverse();
            let lb = &lower_basis[*face];
            for (k, v) in lb.vectors.iter().enumerate() {
                let img = images.entry(lb.offset + k).or_default();
                for &(x, s) in v {
                    *img.entry(action.act(x, &ginv)).or_insert(0) += (sign * s) as i64;
                }
            }
        }
        for (col, img) in images {
            let mut coeff: BTreeMap<usize, (i64, usize)> = BTreeMap::new();
            let mut bad = false;
            for (y, val) in img.into_iter().filter(|(_, v)| *v != 0) {
                match label[y] {
                    None => bad = true,
                    Some((k, s)) => {
                        let c = val * s as i64;
                        let e = coeff.entry(k).or_insert((c, 0));
                        if e.0 != c {
                            bad = true;
                        }
                        e.1 += 1;
                    }
                }
            }
            bad |= coeff
                .iter()
                .any(|(k, (_, hits))| *hits != ub.vectors[*k].len());
            if bad {
                let from = orbit_name(lower_basis, col);
                return Err(Error::Schema(format!(
                    "coboundary from '{from}' to '{}' is not invariant under the stabilizer of '{}'",
                    cell.id, cell.id
                )));
            }
            for (k, (c, _)) in coeff {
                triplets.push((ub.offset + k, col, BigInt::from(c)));
            }
        }
    }
    SparseZMatrix::from_triplets(rows, cols, triplets)
}
