//! Free-group words over single-letter generators; uppercase means inverse.

use std::fmt;

use crate::error::{Error, Result};

/// Letters are `±(index + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(gen: usize, inverse: bool) -> Self {
        let l = gen as i32 + 1;
        Word(vec![if inverse { -l } else { l }])
    }

    /// Parses a string such as `atAT` against the generator names; `1` or the
    /// empty string is the identity.
    pub fn parse(s: &str, gens: &[String]) -> Result<Self> {
        let mut out = Vec::new();
        if s == "1" {
            return Ok(Word(out));
        }
        for ch in s.chars() {
            let lower = ch.to_ascii_lowercase().to_string();
            let idx = gens
                .iter()
                .position(|g| *g == lower)
                .ok_or_else(|| Error::UnknownGenerator(ch.to_string()))?;
            let l = idx as i32 + 1;
            out.push(if ch.is_ascii_uppercase() { -l } else { l });
        }
        Ok(Word(out).reduced())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut w = Word::empty();
        for _ in 0..k {
            w = w.concat(self);
        }
        w
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn render(&self, gens: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&l| {
                let g = &gens[(l.unsigned_abs() - 1) as usize];
                if l < 0 {
                    g.to_uppercase()
                } else {
                    g.clone()
                }
            })
            .collect()
    }

    /// Applies the word to a point under a right action given by permutations
    /// and their inverses.
    pub fn act(&self, point: usize, perms: &[Vec<usize>], inverses: &[Vec<usize>]) -> usize {
        self.0.iter().fold(point, |c, &l| {
            let g = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                perms[g][c]
            } else {
                inverses[g][c]
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Checks that generator names are single lowercase ASCII letters, distinct.
pub fn validate_generator_names(gens: &[String]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        let ok = g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase());
        if !ok {
            return Err(Error::Schema(format!(
                "generator name '{g}' must be one lowercase letter"
            )));
        }
        if gens[..i].contains(g) {
            return Err(Error::Schema(format!("duplicate generator '{g}'")));
        }
    }
    Ok(())
}
