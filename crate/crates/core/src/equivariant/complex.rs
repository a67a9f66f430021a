//! Orbit cell complexes: one entry per Γ-orbit of cells, with the stabilizer
//! order, stabilizer words and group-labelled boundary incidences.
//!
//! A stabilizer word with a leading `-` reverses the orientation of its cell.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subgroups::word::{validate_generator_names, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCellComplex {
    pub dim: usize,
    pub generators: Vec<String>,
    pub cells: Vec<CellOrbit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOrbit {
    pub id: String,
    pub dim: usize,
    pub stabilizer_order: u64,
    #[serde(default)]
    pub stabilizers: Vec<String>,
    #[serde(default)]
    pub boundary: Vec<Incidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub cell: String,
    pub sign: i32,
    #[serde(default = "identity_word")]
    pub elt: String,
}

fn identity_word() -> String {
    "1".into()
}

/// Stabilizer element: the word and whether it reverses orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWord {
    pub word: Word,
    pub reversing: bool,
}

/// Parsed form used by assembly; cells are grouped by dimension.
#[derive(Clone, Debug)]
pub(crate) struct ParsedCell {
    pub id: String,
    pub stabilizer_order: u64,
    pub stabilizers: Vec<SignedWord>,
    /// `(index of the face within its dimension, sign, element)`
    pub boundary: Vec<(usize, i32, Word)>,
}

impl Incidence {
    pub fn new(cell: &str, sign: i32, elt: &str) -> Self {
        Incidence {
            cell: cell.into(),
            sign,
            elt: elt.into(),
        }
    }
}

impl OrbitCellComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: OrbitCellComplex = serde_json::from_str(text)?;
        c.parse()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &CellOrbit> {
        self.cells.iter().filter(move |c| c.dim == k)
    }

    /// Whether every stabilizer is trivial, i.e. Γ acts freely.
    pub fn is_free(&self) -> bool {
        self.cells.iter().all(|c| c.stabilizer_order == 1)
    }

    /// `Σ (−1)^dim / |Γ(σ)|` as a reduced fraction `(num, den)`.
    pub fn orbifold_euler_characteristic(&self) -> (i64, i64) {
        let den = self
            .cells
            .iter()
            .fold(1i64, |l, c| num_integer::lcm(l, c.stabilizer_order as i64));
        let num: i64 = self
            .cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 } * den / c.stabilizer_order as i64)
            .sum();
        let g = num_integer::gcd(num, den).max(1);
        (num / g, den / g)
    }

    pub(crate) fn parse(&self) -> Result<Vec<Vec<ParsedCell>>> {
        if self.dim > 3 {
            return Err(Error::Schema(format!(
                "dimension {} not supported (at most 3)",
                self.dim
            )));
        }
        validate_generator_names(&self.generators)?;
        let mut where_is: HashMap<&str, (usize, usize)> = HashMap::new();
        let mut counts = vec![0usize; self.dim + 1];
        for c in &self.cells {
            if c.dim > self.dim {
                return Err(Error::Schema(format!(
                    "cell '{}' has dimension {} above {}",
                    c.id, c.dim, self.dim
                )));
            }
            if c.stabilizer_order == 0 {
                return Err(Error::Schema(format!(
                    "cell '{}': stabilizer_order must be positive",
                    c.id
                )));
            }
            if where_is.insert(&c.id, (c.dim, counts[c.dim])).is_some() {
                return Err(Error::Schema(format!("duplicate cell id '{}'", c.id)));
            }
            counts[c.dim] += 1;
        }
        let mut out: Vec<Vec<ParsedCell>> = vec![Vec::new(); self.dim + 1];
        for c in &self.cells {
            let stabilizers = c
                .stabilizers
                .iter()
                .map(|s| {
                    let (reversing, body) = match s.strip_prefix('-') {
                        Some(rest) => (true, rest),
                        None => (false, s.as_str()),
                    };
                    Ok(SignedWord {
                        word: Word::parse(body, &self.generators)?,
                        reversing,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut boundary = Vec::with_capacity(c.boundary.len());
            for inc in &c.boundary {
                let &(fd, fi) = where_is.get(inc.cell.as_str()).ok_or_else(|| {
                    Error::Schema(format!("cell '{}': unknown face '{}'", c.id, inc.cell))
                })?;
                if fd + 1 != c.dim {
                    return Err(Error::Schema(format!(
                        "cell '{}' (dim {}) lists face '{}' of dim {}",
                        c.id, c.dim, inc.cell, fd
                    )));
                }
                if inc.sign != 1 && inc.sign != -1 {
                    return Err(Error::Schema(format!(
                        "cell '{}': sign must be 1 or -1",
                        c.id
                    )));
                }
                boundary.push((fi, inc.sign, Word::parse(&inc.elt, &self.generators)?));
            }
            out[c.dim].push(ParsedCell {
                id: c.id.clone(),
                stabilizer_order: c.stabilizer_order,
                stabilizers,
                boundary,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_faces_and_words() {
        let bad_face = r#"{"dim":1,"generators":[],"cells":[
            {"id":"v","dim":0,"stabilizer_order":1},
            {"id":"e","dim":1,"stabilizer_order":1,"boundary":[{"cell":"w","sign":1,"elt":"1"}]}]}"#;
        assert!(matches!(
            OrbitCellComplex::from_json(bad_face),
            Err(Error::Schema(_))
        ));
        let bad_word = r#"{"dim":1,"generators":["t"],"cells":[
            {"id":"v","dim":0,"stabilizer_order":1},
            {"id":"e","dim":1,"stabilizer_order":1,"boundary":[{"cell":"v","sign":1,"elt":"tq"}]}]}"#;
        assert!(matches!(
            OrbitCellComplex::from_json(bad_word),
            Err(Error::UnknownGenerator(_))
        ));
        let bad_sign = r#"{"dim":1,"generators":[],"cells":[
            {"id":"v","dim":0,"stabilizer_order":1},
            {"id":"e","dim":1,"stabilizer_order":1,"boundary":[{"cell":"v","sign":2}]}]}"#;
        assert!(OrbitCellComplex::from_json(bad_sign).is_err());
    }
}
