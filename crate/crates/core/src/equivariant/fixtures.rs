//! Generators for the shipped complexes.

use super::complex::{CellOrbit, Incidence, OrbitCellComplex};

fn cell(
    id: &str,
    dim: usize,
    order: u64,
    stabilizers: &[&str],
    boundary: Vec<Incidence>,
) -> CellOrbit {
    CellOrbit {
        id: id.into(),
        dim,
        stabilizer_order: order,
        stabilizers: stabilizers.iter().map(|s| s.to_string()).collect(),
        boundary,
    }
}

fn inc(c: &str, sign: i32) -> Incidence {
    Incidence::new(c, sign, "1")
}

fn gens(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Circle subdivided into `k` vertices and `k` edges, trivial group.
pub fn circle(k: usize) -> OrbitCellComplex {
    let mut cells: Vec<CellOrbit> = (0..k)
        .map(|j| cell(&format!("v{j}"), 0, 1, &[], vec![]))
        .collect();
    for j in 0..k {
        let b = vec![
            inc(&format!("v{}", (j + 1) % k), 1),
            inc(&format!("v{j}"), -1),
        ];
        cells.push(cell(&format!("e{j}"), 1, 1, &[], b));
    }
    OrbitCellComplex {
        dim: 1,
        generators: vec![],
        cells,
    }
}

/// The real line under `ℤ = ⟨t⟩`: one vertex orbit, one edge orbit, `∂e = t·v − v`.
pub fn line_mod_translation() -> OrbitCellComplex {
    OrbitCellComplex {
        dim: 1,
        generators: gens(&["t"]),
        cells: vec![
            cell("v", 0, 1, &[], vec![]),
            cell(
                "e",
                1,
                1,
                &[],
                vec![Incidence::new("v", 1, "t"), inc("v", -1)],
            ),
        ],
    }
}

/// The real line under the infinite dihedral group `⟨r, s⟩` with
/// `r: x ↦ −x`, `s: x ↦ 1 − x`; the vertices 0 and ½ have stabilizers of order 2.
pub fn dihedral_line() -> OrbitCellComplex {
    OrbitCellComplex {
        dim: 1,
        generators: gens(&["r", "s"]),
        cells: vec![
            cell("v0", 0, 2, &["r"], vec![]),
            cell("v1", 0, 2, &["s"], vec![]),
            cell("e", 1, 1, &[], vec![inc("v1", 1), inc("v0", -1)]),
        ],
    }
}

fn closed_surface(id: &str, letters: &[&str]) -> OrbitCellComplex {
    let mut cells = vec![cell("v", 0, 1, &[], vec![])];
    for l in letters {
        cells.push(cell(l, 1, 1, &[], vec![inc("v", 1), inc("v", -1)]));
    }
    // Word a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹ …
    let mut b = Vec::new();
    for pair in letters.chunks(2) {
        b.extend([
            inc(pair[0], 1),
            inc(pair[1], 1),
            inc(pair[0], -1),
            inc(pair[1], -1),
        ]);
    }
    cells.push(cell(id, 2, 1, &[], b));
    OrbitCellComplex {
        dim: 2,
        generators: vec![],
        cells,
    }
}

pub fn torus() -> OrbitCellComplex {
    closed_surface("f", &["a", "b"])
}

pub fn genus_two() -> OrbitCellComplex {
    closed_surface("f", &["a", "b", "c", "d"])
}

/// Cube with opposite faces identified: one cell of each type per coordinate subset.
pub fn three_torus() -> OrbitCellComplex {
    let mut cells = vec![cell("v", 0, 1, &[], vec![])];
    for e in ["x", "y", "z"] {
        cells.push(cell(e, 1, 1, &[], vec![inc("v", 1), inc("v", -1)]));
    }
    for (f, a, b) in [("xy", "x", "y"), ("xz", "x", "z"), ("yz", "y", "z")] {
        cells.push(cell(
            f,
            2,
            1,
            &[],
            vec![inc(a, 1), inc(b, 1), inc(a, -1), inc(b, -1)],
        ));
    }
    let mut b = Vec::new();
    for f in ["xy", "xz", "yz"] {
        b.extend([inc(f, 1), inc(f, -1)]);
    }
    cells.push(cell("c", 3, 1, &[], b));
    OrbitCellComplex {
        dim: 3,
        generators: vec![],
        cells,
    }
}

pub fn sphere3() -> OrbitCellComplex {
    OrbitCellComplex {
        dim: 3,
        generators: vec![],
        cells: vec![cell("v", 0, 1, &[], vec![]), cell("c", 3, 1, &[], vec![])],
    }
}

/// `L(p, 1)` with one cell per dimension and `∂₂ = p`.
pub fn lens(p: usize) -> OrbitCellComplex {
    OrbitCellComplex {
        dim: 3,
        generators: vec![],
        cells: vec![
            cell("e0", 0, 1, &[], vec![]),
            cell("e1", 1, 1, &[], vec![inc("e0", 1), inc("e0", -1)]),
            cell("e2", 2, 1, &[], vec![inc("e1", 1); p]),
            cell("e3", 3, 1, &[], vec![inc("e2", 1), inc("e2", -1)]),
        ],
    }
}

/// Coxeter matrix of the compact tetrahedron with cyclic diagram (3,4,3,4).
pub const T6: [[u32; 4]; 4] = [[1, 3, 2, 4], [3, 1, 4, 2], [2, 4, 1, 3], [4, 2, 3, 1]];
/// Coxeter matrix of the compact tetrahedron with cyclic diagram (3,5,3,4).
pub const T8: [[u32; 4]; 4] = [[1, 3, 2, 4], [3, 1, 5, 2], [2, 5, 1, 3], [4, 2, 3, 1]];

const TETRA_GENERATORS: [&str; 3] = ["a", "b", "c"];

/// `sᵢsⱼ` in the generators `a = s₁s₄`, `b = s₂s₄`, `c = s₃s₄` (1-based indices).
fn rotation_word(i: usize, j: usize) -> String {
    let letter = |k: usize, inv: bool| {
        let l = TETRA_GENERATORS[k - 1];
        if inv {
            l.to_uppercase()
        } else {
            l.to_string()
        }
    };
    match (i, j) {
        (4, 4) => "1".into(),
        (i, 4) => letter(i, false),
        (4, j) => letter(j, true),
        (i, j) => format!("{}{}", letter(i, false), letter(j, true)),
    }
}

/// Relators `(sᵢsⱼ)^{mᵢⱼ}` of the orientation-preserving subgroup.
pub fn tetrahedral_relators(m: &[[u32; 4]; 4]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            out.push(rotation_word(i, j).repeat(m[i - 1][j - 1] as usize));
        }
    }
    out
}

pub fn tetrahedral_generators() -> Vec<String> {
    gens(&TETRA_GENERATORS)
}

/// Order of the rotation subgroup of the spherical triangle group `(p, q, r)`.
fn rotation_order(p: u32, q: u32, r: u32) -> u64 {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    2 * p * q * r / (q * r + p * r + p * q - p * q * r)
}

/// The tetrahedron `Δ` and its mirror image `Δ*` across the face opposite
/// vertex 4, as an orbit complex for the orientation-preserving reflection
/// subgroup. Simplices are named by their vertex sets.
pub fn tetrahedral(m: &[[u32; 4]; 4]) -> OrbitCellComplex {
    let name = |s: &[usize]| s.iter().map(|k| k.to_string()).collect::<String>();
    let complement = |s: &[usize]| (1..=4).filter(|k| !s.contains(k)).collect::<Vec<_>>();
    let mut cells = Vec::new();
    // Simplicial boundary of the ordered simplex `s`: Σ (−1)^j s∖s_j.
    let faces = |s: &[usize]| -> Vec<Incidence> {
        (0..s.len())
            .map(|j| {
                let f: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &x)| x)
                    .collect();
                inc(&format!("s{}", name(&f)), if j % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    };
    for k in 1..=4 {
        let j = complement(&[k]);
        let order = rotation_order(
            m[j[0] - 1][j[1] - 1],
            m[j[0] - 1][j[2] - 1],
            m[j[1] - 1][j[2] - 1],
        );
        let stab: Vec<String> = vec![rotation_word(j[0], j[1]), rotation_word(j[1], j[2])];
        let stab: Vec<&str> = stab.iter().map(String::as_str).collect();
        cells.push(cell(&format!("s{k}"), 0, order, &stab, vec![]));
    }
    for a in 1..=4 {
        for b in (a + 1)..=4 {
            let j = complement(&[a, b]);
            let w = rotation_word(j[0], j[1]);
            cells.push(cell(
                &format!("s{a}{b}"),
                1,
                m[j[0] - 1][j[1] - 1] as u64,
                &[&w],
                faces(&[a, b]),
            ));
        }
    }
    for k in 1..=4 {
        let s = complement(&[k]);
        cells.push(cell(&format!("s{}", name(&s)), 2, 1, &[], faces(&s)));
    }
    cells.push(cell("s1234", 3, 1, &[], faces(&[1, 2, 3, 4])));
    // s₄·Fᵢ = (s₄sᵢ)·Fᵢ since sᵢ fixes Fᵢ pointwise.
    let star = faces(&[1, 2, 3, 4])
        .into_iter()
        .map(|f| {
            let missing = complement(
                &f.cell[1..]
                    .chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect::<Vec<_>>(),
            );
            Incidence::new(&f.cell, f.sign, &rotation_word(4, missing[0]))
        })
        .collect();
    cells.push(cell("s1234*", 3, 1, &[], star));
    OrbitCellComplex {
        dim: 3,
        generators: tetrahedral_generators(),
        cells,
    }
}

/// Every shipped fixture with its file stem.
pub fn corpus() -> Vec<(String, OrbitCellComplex)> {
    let mut out: Vec<(String, OrbitCellComplex)> = (1..=64)
        .map(|k| (format!("circle-{k}"), circle(k)))
        .collect();
    out.push(("torus".into(), torus()));
    out.push(("three-torus".into(), three_torus()));
    out.push(("sphere3".into(), sphere3()));
    for p in 1..=12 {
        out.push((format!("lens-{p}-1"), lens(p)));
    }
    out.push(("genus-2".into(), genus_two()));
    out.push(("line-z".into(), line_mod_translation()));
    out.push(("dihedral-line".into(), dihedral_line()));
    out.push(("tetra-t6".into(), tetrahedral(&T6)));
    out.push(("tetra-t8".into(), tetrahedral(&T8)));
    out
}
