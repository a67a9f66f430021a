//! Regenerates `fixtures/complexes/*.json` and the sample tetrahedral actions.

use std::fs;
use std::path::Path;

use torsion_core::equivariant::{self, fixtures};
use torsion_core::subgroups::{low_index_actions, Word};

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dir = root.join("complexes");
    fs::create_dir_all(&dir)?;
    for (name, cx) in fixtures::corpus() {
        fs::write(dir.join(format!("{name}.json")), cx.to_json() + "\n")?;
    }
    let actions = root.join("actions");
    fs::create_dir_all(&actions)?;
    for (name, m) in [("t6", fixtures::T6), ("t8", fixtures::T8)] {
        let g = fixtures::tetrahedral_generators();
        let rels: Vec<Word> = fixtures::tetrahedral_relators(&m)
            .iter()
            .map(|r| Word::parse(r, &g).unwrap())
            .collect();
        let cx = fixtures::tetrahedral(&m);
        // Only actions with nonzero first Betti number; the tables skip the rest.
        let mut seen = Vec::new();
        for a in low_index_actions(&g, &rels, 12, 1000) {
            let levels = equivariant::assemble(&cx, &a).unwrap();
            let r = equivariant::regulators(&levels, 1).unwrap();
            if r.betti == 0 || seen.contains(&(a.degree(), r.gram_det_tilde.clone())) {
                continue;
            }
            seen.push((a.degree(), r.gram_det_tilde.clone()));
            let k = seen.iter().filter(|s| s.0 == a.degree()).count();
            fs::write(
                actions.join(format!("{name}-index{}-{k}.json", a.degree())),
                a.to_json() + "\n",
            )?;
        }
    }
    Ok(())
}
