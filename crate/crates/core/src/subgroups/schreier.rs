//! Schreier graphs, Schreier generators, cusps and the abelianized
//! Reidemeister–Schreier relation matrix.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::action::CosetAction;
use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};
use crate::linalg::SparseZMatrix;

/// BFS spanning tree of the Schreier graph and the resulting generators.
#[derive(Clone, Debug)]
pub struct SchreierData {
    /// Transversal word from the base point to each coset.
    pub transversal: Vec<Word>,
    /// `tree[i][g]`: whether the positively oriented edge `i --g--> i·g` is a tree edge.
    pub tree: Vec<Vec<bool>>,
    /// Non-tree edges `(coset, generator)`, in column order.
    pub edges: Vec<(usize, usize)>,
    /// Column of each non-tree edge, `usize::MAX` on tree edges.
    pub column: Vec<Vec<usize>>,
    /// Schreier generator words `t_i · g · t_{i·g}⁻¹`.
    pub generators: Vec<Word>,
}

impl SchreierData {
    pub fn generator_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_word_length(&self) -> usize {
        self.generators.iter().map(Word::len).max().unwrap_or(0)
    }
}

pub fn schreier(action: &CosetAction) -> Result<SchreierData> {
    action.require_transitive()?;
    let n = action.degree();
    let k = action.perms.len();
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; k]; n];
    transversal[action.base] = Some(Word::empty());
    let mut q = VecDeque::from([action.base]);
    while let Some(i) = q.pop_front() {
        for g in 0..k {
            for inverse in [false, true] {
                let j = if inverse {
                    action.inverses[g][i]
                } else {
                    action.perms[g][i]
                };
                if transversal[j].is_none() {
                    let w = transversal[i]
                        .as_ref()
                        .unwrap()
                        .concat(&Word::letter(g, inverse));
                    transversal[j] = Some(w);
                    if inverse {
                        tree[j][g] = true;
                    } else {
                        tree[i][g] = true;
                    }
                    q.push_back(j);
                }
            }
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(Option::unwrap).collect();
    let mut edges = Vec::new();
    let mut column = vec![vec![usize::MAX; k]; n];
    let mut generators = Vec::new();
    for i in 0..n {
        for g in 0..k {
            if tree[i][g] {
                continue;
            }
            column[i][g] = edges.len();
            edges.push((i, g));
            let j = action.perms[g][i];
            let w = Word(
                transversal[i]
                    .0
                    .iter()
                    .copied()
                    .chain(std::iter::once(g as i32 + 1))
                    .chain(transversal[j].inverse().0)
                    .collect(),
            );
            generators.push(w);
        }
    }
    Ok(SchreierData {
        transversal,
        tree,
        edges,
        column,
        generators,
    })
}

/// Orbits of the subgroup generated by `words` on the coset space, as a
/// representative-per-point labelling.
pub fn orbits(action: &CosetAction, words: &[Word]) -> Vec<usize> {
    let n = action.degree();
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for w in words {
                for j in [action.act(i, w), action.act(i, &w.inverse())] {
                    if label[j] == usize::MAX {
                        label[j] = s;
                        stack.push(j);
                    }
                }
            }
        }
    }
    label
}

fn count_labels(label: &[usize]) -> usize {
    label.iter().enumerate().filter(|(i, &l)| *i == l).count()
}

/// Number of orbits of `⟨parabolic⟩` on the coset space.
pub fn cusp_count(action: &CosetAction, parabolic: &[Word]) -> usize {
    count_labels(&orbits(action, parabolic))
}

/// Cusps whose stabilizer in the subgroup contains no rotation: those orbit
/// representatives `x` with `x·rʲ` outside the translation orbit of `x` for
/// `0 < j < k`.
pub fn rotation_free_cusps(action: &CosetAction, pres: &Presentation) -> usize {
    let cusp_label = orbits(action, &pres.parabolic);
    let Some((rot, k)) = &pres.rotation else {
        return count_labels(&cusp_label);
    };
    let lattice_label = orbits(action, &pres.translations);
    cusp_label
        .iter()
        .enumerate()
        .filter(|(i, &l)| *i == l)
        .filter(|(x, _)| {
            let mut y = *x;
            (1..*k).all(|_| {
                y = action.act(y, rot);
                lattice_label[y] != lattice_label[*x]
            })
        })
        .count()
}

/// Relation matrix rows as `(column, value)` lists and the column count.
pub fn abelianized_rs_rows(
    pres: &Presentation,
    action: &CosetAction,
) -> Result<(usize, Vec<Vec<(usize, i64)>>)> {
    let action = action.aligned_to(&pres.generators)?;
    let sd = schreier(&action)?;
    let n = action.degree();
    let mut rows = Vec::with_capacity(pres.relators.len() * n);
    let mut acc: Vec<i64> = vec![0; sd.edges.len()];
    let mut touched: Vec<usize> = Vec::new();
    for (ri, r) in pres.relators.iter().enumerate() {
        for i in 0..n {
            let mut c = i;
            for &l in &r.0 {
                let g = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    let col = sd.column[c][g];
                    if col != usize::MAX {
                        acc[col] += 1;
                        touched.push(col);
                    }
                    c = action.perms[g][c];
                } else {
                    c = action.inverses[g][c];
                    let col = sd.column[c][g];
                    if col != usize::MAX {
                        acc[col] -= 1;
                        touched.push(col);
                    }
                }
            }
            if c != i {
                return Err(Error::RelatorFails { index: ri });
            }
            touched.sort_unstable();
            touched.dedup();
            let row: Vec<(usize, i64)> = touched
                .iter()
                .filter(|&&col| acc[col] != 0)
                .map(|&col| (col, acc[col]))
                .collect();
            for &col in &touched {
                acc[col] = 0;
            }
            touched.clear();
            rows.push(row);
        }
    }
    Ok((sd.edges.len(), rows))
}

/// Integer relation matrix whose cokernel is the abelianization of the
/// subgroup: one row per relator per coset, one column per Schreier generator.
pub fn abelianized_rs(pres: &Presentation, action: &CosetAction) -> Result<SparseZMatrix> {
    let (ncols, rows) = abelianized_rs_rows(pres, action)?;
    let triplets = rows.into_iter().enumerate().flat_map(|(r, row)| {
        row.into_iter()
            .map(move |(c, v)| (r, c, BigRational::from_integer(BigInt::from(v))))
    });
    SparseZMatrix::from_triplets(pres.relators.len() * action.degree(), ncols, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf;

    #[test]
    fn index_one_keeps_generators() {
        let p = Presentation::new(&["x", "y"], &[]).unwrap();
        let sd = schreier(&CosetAction::trivial(&p.generators)).unwrap();
        assert_eq!(sd.generator_count(), 2);
        assert!(sd.generators.iter().all(|w| w.len() == 1));
    }

    #[test]
    fn free_group_index_three() {
        let a = CosetAction::new(
            vec!["x".into(), "y".into()],
            vec![vec![1, 2, 0], vec![0, 2, 1]],
            0,
        )
        .unwrap();
        let sd = schreier(&a).unwrap();
        assert_eq!(sd.generator_count(), 4);
        assert!(sd.max_word_length() <= 7);
    }

    #[test]
    fn cyclic_six() {
        let p = Presentation::new(&["x"], &["xxxxxx"]).unwrap();
        let m = abelianized_rs(&p, &CosetAction::trivial(&p.generators)).unwrap();
        assert_eq!(snf(&m).unwrap().torsion(), vec![BigInt::from(6)]);
    }

    #[test]
    fn free_group_index_two() {
        let p = Presentation::new(&["x", "y"], &[]).unwrap();
        let a = CosetAction::new(p.generators.clone(), vec![vec![1, 0], vec![0, 1]], 0).unwrap();
        let m = abelianized_rs(&p, &a).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 3));
    }

    #[test]
    fn klein_bottle_group() {
        let p = Presentation::new(&["x", "y"], &["xxyy"]).unwrap();
        let m = abelianized_rs(&p, &CosetAction::trivial(&p.generators)).unwrap();
        let r = snf(&m).unwrap();
        assert_eq!(m.cols() - r.rank, 1);
        assert_eq!(r.torsion(), vec![BigInt::from(2)]);
    }

    #[test]
    fn empty_parabolic_set_counts_points() {
        let a = CosetAction::new(vec!["x".into()], vec![vec![1, 2, 0]], 0).unwrap();
        assert_eq!(cusp_count(&a, &[]), 3);
    }
}
