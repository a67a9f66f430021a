//! Transitive permutation actions of small degree for a finitely presented
//! group, by backtracking over partial coset tables with relator scanning.
//! Results are deduplicated up to conjugacy.

use std::collections::HashSet;

use super::action::CosetAction;
use super::word::Word;

type Table = Vec<Vec<Option<usize>>>;

fn col(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    2 * g + usize::from(letter < 0)
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

struct Search<'a> {
    ngens: usize,
    relators: &'a [Vec<usize>],
    max_degree: usize,
    limit: usize,
    seen: HashSet<Vec<usize>>,
    found: Vec<Vec<Vec<usize>>>,
}

impl Search<'_> {
    fn define(t: &mut Table, c: usize, k: usize, d: usize) -> bool {
        match (t[c][k], t[d][inv_col(k)]) {
            (None, None) => {
                t[c][k] = Some(d);
                t[d][inv_col(k)] = Some(c);
                true
            }
            (Some(x), Some(y)) => x == d && y == c,
            _ => false,
        }
    }

    /// Scans every relator from every coset, filling forced entries.
    fn propagate(&self, t: &mut Table) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.len() {
                for r in self.relators {
                    let mut f = c;
                    let mut i = 0;
                    while i < r.len() {
                        match t[f][r[i]] {
                            Some(x) => f = x,
                            None => break,
                        }
                        i += 1;
                    }
                    let mut b = c;
                    let mut j = r.len();
                    while j > i {
                        match t[b][inv_col(r[j - 1])] {
                            Some(x) => b = x,
                            None => break,
                        }
                        j -= 1;
                    }
                    if i == j {
                        if f != b {
                            return false;
                        }
                    } else if j == i + 1 {
                        if !Self::define(t, f, r[i], b) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn canonical(&self, t: &Table) -> Vec<usize> {
        let n = t.len();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..n {
            let mut label = vec![usize::MAX; n];
            let mut order = vec![start];
            label[start] = 0;
            let mut i = 0;
            while i < order.len() {
                let c = order[i];
                i += 1;
                for k in 0..2 * self.ngens {
                    let d = t[c][k].unwrap();
                    if label[d] == usize::MAX {
                        label[d] = order.len();
                        order.push(d);
                    }
                }
            }
            let code: Vec<usize> = order
                .iter()
                .flat_map(|&c| {
                    (0..2 * self.ngens)
                        .map(|k| label[t[c][k].unwrap()])
                        .collect::<Vec<_>>()
                })
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }

    fn run(&mut self, t: Table) {
        if self.found.len() >= self.limit {
            return;
        }
        let mut t = t;
        if !self.propagate(&mut t) {
            return;
        }
        let Some((c, k)) = (0..t.len())
            .flat_map(|c| (0..2 * self.ngens).map(move |k| (c, k)))
            .find(|&(c, k)| t[c][k].is_none())
        else {
            let code = self.canonical(&t);
            if self.seen.insert(code) {
                self.found.push(
                    (0..self.ngens)
                        .map(|g| t.iter().map(|row| row[2 * g].unwrap()).collect())
                        .collect(),
                );
            }
            return;
        };
        for d in 0..t.len() {
            if t[d][inv_col(k)].is_none() {
                let mut u = t.clone();
                Self::define(&mut u, c, k, d);
                self.run(u);
            }
        }
        if t.len() < self.max_degree {
            let mut u = t;
            u.push(vec![None; 2 * self.ngens]);
            let d = u.len() - 1;
            Self::define(&mut u, c, k, d);
            self.run(u);
        }
    }
}

/// Transitive actions of degree at most `max_degree`, one per conjugacy
/// class of subgroups, at most `limit` of them; the base point is 0.
pub fn low_index_actions(
    generators: &[String],
    relators: &[Word],
    max_degree: usize,
    limit: usize,
) -> Vec<CosetAction> {
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.0.iter().map(|&l| col(l)).collect())
        .collect();
    let mut s = Search {
        ngens: generators.len(),
        relators: &rels,
        max_degree: max_degree.max(1),
        limit,
        seen: HashSet::new(),
        found: Vec::new(),
    };
    s.run(vec![vec![None; 2 * generators.len()]]);
    let mut out: Vec<CosetAction> = s
        .found
        .into_iter()
        .map(|perms| CosetAction::new(generators.to_vec(), perms, 0).unwrap())
        .collect();
    out.sort_by_key(|a| a.degree());
    out
}
