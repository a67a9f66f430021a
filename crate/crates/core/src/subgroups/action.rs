//! Transitive permutation actions on coset spaces.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};
use crate::quadfield::{ProjLine, QfIdeal};

/// Right action of each generator on `{0, …, degree−1}`; the subgroup is the
/// stabilizer of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    pub generators: Vec<String>,
    pub perms: Vec<Vec<usize>>,
    pub inverses: Vec<Vec<usize>>,
    pub base: usize,
}

#[derive(Serialize, Deserialize)]
struct ActionJson {
    degree: usize,
    perms: BTreeMap<String, Vec<usize>>,
    #[serde(default = "one")]
    base: usize,
}

fn one() -> usize {
    1
}

impl CosetAction {
    pub fn new(generators: Vec<String>, perms: Vec<Vec<usize>>, base: usize) -> Result<Self> {
        if generators.len() != perms.len() {
            return Err(Error::Shape("one permutation per generator".into()));
        }
        let degree = perms.first().map_or(1, |p| p.len());
        if base >= degree.max(1) {
            return Err(Error::InvalidPermutation(format!(
                "base point {base} out of range"
            )));
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (g, p) in generators.iter().zip(&perms) {
            if p.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "'{g}' has length {} not {degree}",
                    p.len()
                )));
            }
            let mut inv = vec![usize::MAX; degree];
            for (i, &j) in p.iter().enumerate() {
                if j >= degree || inv[j] != usize::MAX {
                    return Err(Error::InvalidPermutation(format!(
                        "'{g}' is not a bijection"
                    )));
                }
                inv[j] = i;
            }
            inverses.push(inv);
        }
        Ok(CosetAction {
            generators,
            perms,
            inverses,
            base,
        })
    }

    /// The action of a group on the single coset of itself.
    pub fn trivial(generators: &[String]) -> Self {
        Self::new(generators.to_vec(), vec![vec![0]; generators.len()], 0).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(1, |p| p.len())
    }

    pub fn act(&self, point: usize, w: &Word) -> usize {
        w.act(point, &self.perms, &self.inverses)
    }

    /// Points reachable from the base point.
    pub fn orbit_of_base(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        seen[self.base] = true;
        let mut q = VecDeque::from([self.base]);
        let mut count = 1;
        while let Some(i) = q.pop_front() {
            for (p, ip) in self.perms.iter().zip(&self.inverses) {
                for j in [p[i], ip[i]] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        q.push_back(j);
                    }
                }
            }
        }
        count
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_of_base() == self.degree()
    }

    pub fn require_transitive(&self) -> Result<()> {
        let reached = self.orbit_of_base();
        if reached == self.degree() {
            Ok(())
        } else {
            Err(Error::Intransitive {
                reached,
                degree: self.degree(),
            })
        }
    }

    /// Reorders the permutations to match the given generator names.
    pub fn aligned_to(&self, generators: &[String]) -> Result<Self> {
        let mut perms = Vec::with_capacity(generators.len());
        for g in generators {
            let i = self
                .generators
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| Error::Schema(format!("action lacks generator '{g}'")))?;
            perms.push(self.perms[i].clone());
        }
        if let Some(extra) = self.generators.iter().find(|h| !generators.contains(h)) {
            return Err(Error::Schema(format!(
                "action has unknown generator '{extra}'"
            )));
        }
        Self::new(generators.to_vec(), perms, self.base)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ActionJson = serde_json::from_str(text)?;
        let mut generators = Vec::new();
        let mut perms = Vec::new();
        for (g, p) in j.perms {
            if p.len() != j.degree {
                return Err(Error::Schema(format!(
                    "perms.{g}: expected {} entries, found {}",
                    j.degree,
                    p.len()
                )));
            }
            if p.iter().any(|&x| x == 0 || x > j.degree) {
                return Err(Error::Schema(format!(
                    "perms.{g}: images must lie in 1..={}",
                    j.degree
                )));
            }
            generators.push(g);
            perms.push(p.into_iter().map(|x| x - 1).collect());
        }
        super::word::validate_generator_names(&generators)?;
        if j.base == 0 || j.base > j.degree {
            return Err(Error::Schema("base must lie in 1..=degree".into()));
        }
        Self::new(generators, perms, j.base - 1)
    }

    pub fn to_json(&self) -> String {
        let j = ActionJson {
            degree: self.degree(),
            perms: self
                .generators
                .iter()
                .zip(&self.perms)
                .map(|(g, p)| (g.clone(), p.iter().map(|x| x + 1).collect()))
                .collect(),
            base: self.base + 1,
        };
        serde_json::to_string(&j).unwrap()
    }

    /// Conjugates by a relabelling `σ` of points: `i ↦ σ(i)`.
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let n = self.degree();
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut q = vec![0; n];
                for i in 0..n {
                    q[sigma[i]] = sigma[p[i]];
                }
                q
            })
            .collect();
        Self::new(self.generators.clone(), perms, sigma[self.base]).unwrap()
    }
}

/// Action of the generators on `P¹(𝒪/𝔫)`; the base point `(0 : 1)` has
/// stabilizer `Γ₀(𝔫)`.
pub fn gamma0_action(pres: &Presentation, level: &QfIdeal) -> Result<CosetAction> {
    let mats = pres
        .matrices
        .as_ref()
        .ok_or_else(|| Error::Schema("presentation has no matrix images".into()))?;
    let line = ProjLine::new(level);
    let perms = mats
        .iter()
        .map(|m| line.action(m))
        .collect::<Result<Vec<_>>>()?;
    CosetAction::new(pres.generators.clone(), perms, line.base_index())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let a = CosetAction::new(
            vec!["x".into(), "y".into()],
            vec![vec![1, 2, 0], vec![0, 2, 1]],
            0,
        )
        .unwrap();
        assert_eq!(CosetAction::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(CosetAction::new(vec!["x".into()], vec![vec![0, 0]], 0).is_err());
        assert!(CosetAction::from_json(r#"{"degree": 2, "perms": {"x": [1, 3]}}"#).is_err());
    }

    #[test]
    fn transitivity() {
        let a = CosetAction::new(vec!["x".into()], vec![vec![1, 0, 2]], 0).unwrap();
        assert!(matches!(
            a.require_transitive(),
            Err(Error::Intransitive {
                reached: 2,
                degree: 3
            })
        ));
    }
}
