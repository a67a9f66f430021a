//! Embedded presentations of Bianchi groups, validated against matrix images.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::{Field, QuadElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Psl2,
    Sl2,
    Pgl2,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Psl2 => "psl2",
            GroupKind::Sl2 => "sl2",
            GroupKind::Pgl2 => "pgl2",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psl2" => Ok(GroupKind::Psl2),
            "sl2" => Ok(GroupKind::Sl2),
            "pgl2" => Ok(GroupKind::Pgl2),
            _ => Err(Error::Parse(format!("unknown group kind '{s}'"))),
        }
    }
}

/// Finite presentation, optionally with matrix images and cusp data.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub field: Option<Field>,
    pub kind: Option<GroupKind>,
    pub matrices: Option<Vec<Mat2>>,
    /// Generators of the stabilizer of ∞.
    pub parabolic: Vec<Word>,
    /// Generators of its translation part.
    pub translations: Vec<Word>,
    /// A rotation generating the stabilizer of ∞ modulo translations, with its order there.
    pub rotation: Option<(Word, u32)>,
}

impl Presentation {
    /// Abstract presentation from generator names and relator strings.
    pub fn new(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        super::word::validate_generator_names(&generators)?;
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &generators))
            .collect::<Result<_>>()?;
        Ok(Presentation {
            generators,
            relators,
            field: None,
            kind: None,
            matrices: None,
            parabolic: Vec::new(),
            translations: Vec::new(),
            rotation: None,
        })
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        Word::parse(s, &self.generators)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.generators)
    }

    /// Matrix image of a word.
    pub fn eval(&self, w: &Word) -> Option<Mat2> {
        let f = self.field?;
        let mats = self.matrices.as_ref()?;
        let mut m = matrix::identity();
        for &l in &w.0 {
            let g = &mats[(l.unsigned_abs() - 1) as usize];
            let g = if l > 0 { g.clone() } else { matrix::inv(f, g)? };
            m = matrix::mul(f, &m, &g);
        }
        Some(m)
    }

    /// Checks every relator against the matrix images: exact identity for
    /// `SL₂`, identity up to a unit scalar otherwise.
    pub fn validate(&self) -> Result<()> {
        let (Some(f), Some(_)) = (self.field, &self.matrices) else {
            return Ok(());
        };
        for (i, r) in self.relators.iter().enumerate() {
            let m = self.eval(r).ok_or(Error::RelatorFails { index: i })?;
            let ok = match self.kind {
                Some(GroupKind::Sl2) => matrix::is_identity(&m),
                _ => matrix::is_scalar_unit(f, &m),
            };
            if !ok {
                return Err(Error::RelatorFails { index: i });
            }
        }
        if let Some((r, k)) = &self.rotation {
            for j in 1..=*k {
                let m = self.eval(&r.pow(j)).unwrap();
                let translation = m[1][0].is_zero() && m[0][0] == m[1][1];
                if translation != (j == *k) {
                    return Err(Error::Verification(format!(
                        "rotation order {k} is wrong at power {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| self.render(r)).collect::<Vec<_>>(),
        });
        if let (Some(f), Some(k)) = (self.field, self.kind) {
            v["d"] = f.d().into();
            v["kind"] = k.to_string().into();
        }
        if let Some(ms) = &self.matrices {
            let block: serde_json::Map<String, serde_json::Value> = self
                .generators
                .iter()
                .zip(ms)
                .map(|(g, m)| (g.clone(), serde_json::json!(matrix::to_strings(m))))
                .collect();
            v["matrices"] = block.into();
        }
        v
    }
}

fn psl2_data(d: u32) -> (Vec<&'static str>, Vec<&'static str>) {
    match d {
        1 => (
            vec!["a", "t", "u", "l"],
            vec![
                "aa",
                "ll",
                "alal",
                "tltl",
                "ulul",
                "atatat",
                "ualualual",
                "tuTU",
            ],
        ),
        2 => (
            vec!["a", "t", "u"],
            vec!["aa", "atatat", "UauaUaua", "tuTU"],
        ),
        3 => (
            vec!["a", "t", "u", "l"],
            vec![
                "aa",
                "lll",
                "alal",
                "atatat",
                "uaLuaLuaL",
                "tuTU",
                "Ltlu",
                "LulTu",
            ],
        ),
        7 => (
            vec!["a", "t", "u"],
            vec!["aa", "atatat", "atUauatUau", "tuTU"],
        ),
        11 => (
            vec!["a", "t", "u"],
            vec!["aa", "atatat", "atUauatUauatUau", "tuTU"],
        ),
        _ => unreachable!(),
    }
}

fn base_matrix(f: Field, name: &str) -> Mat2 {
    let (one, zero) = ((1, 0), (0, 0));
    match name {
        "a" => matrix::from_i64([[zero, (-1, 0)], [one, zero]]),
        "t" => matrix::from_i64([[one, one], [zero, one]]),
        "u" => matrix::from_i64([[one, (0, 1)], [zero, one]]),
        "l" if f.d() == 1 => matrix::from_i64([[(0, -1), zero], [zero, (0, 1)]]),
        // ω and ω⁻¹ = 1 − ω
        "l" => matrix::from_i64([[(0, 1), zero], [zero, (1, -1)]]),
        "z" => matrix::from_i64([[(-1, 0), zero], [zero, (-1, 0)]]),
        // diag(ε, 1) with ε a non-square unit
        "m" if f.d() == 1 => matrix::from_i64([[(0, 1), zero], [zero, one]]),
        "m" => matrix::from_i64([[(-1, 0), zero], [zero, one]]),
        _ => unreachable!(),
    }
}

/// Embedded presentation of `PSL₂`, `SL₂` or `PGL₂` over `𝒪_d`.
pub fn bianchi_presentation(d: u32, kind: GroupKind) -> Result<Presentation> {
    let f = Field::new(d)?;
    if kind == GroupKind::Pgl2 && !matches!(d, 1 | 3) {
        return Err(Error::UnsupportedGroup {
            d,
            kind: kind.to_string(),
        });
    }
    let (gens, rels) = psl2_data(d);
    let mut p = Presentation::new(&gens, &rels)?;
    p.field = Some(f);
    p.kind = Some(GroupKind::Psl2);
    p.matrices = Some(gens.iter().map(|g| base_matrix(f, g)).collect());
    p.validate()?;
    let has_l = gens.contains(&"l");
    let psl_gens: Vec<String> = p.generators.clone();

    match kind {
        GroupKind::Psl2 => {}
        GroupKind::Sl2 => {
            let zi = p.generators.len();
            p.generators.push("z".into());
            p.matrices.as_mut().unwrap().push(base_matrix(f, "z"));
            let z = Word::letter(zi, false);
            let mut rels = Vec::new();
            for r in &p.relators {
                let m = p.eval(r).unwrap();
                rels.push(if matrix::is_identity(&m) {
                    r.clone()
                } else {
                    r.concat(&z)
                });
            }
            rels.push(z.concat(&z));
            for g in 0..zi {
                let x = Word::letter(g, false);
                rels.push(z.concat(&x).concat(&z.inverse()).concat(&x.inverse()));
            }
            p.relators = rels;
        }
        GroupKind::Pgl2 => {
            let mi = p.generators.len();
            let mm = base_matrix(f, "m");
            let m_inv = matrix::inv(f, &mm).unwrap();
            p.generators.push("m".into());
            p.matrices.as_mut().unwrap().push(mm.clone());
            let m = Word::letter(mi, false);
            let psl = p.clone();
            for (g, name) in psl_gens.iter().enumerate() {
                let conj = matrix::mul(f, &matrix::mul(f, &mm, &base_matrix(f, name)), &m_inv);
                let w = word_for_matrix(&psl, &conj)
                    .ok_or_else(|| Error::Verification(format!("no word for m{name}m^-1")))?;
                let x = Word::letter(g, false);
                p.relators
                    .push(m.concat(&x).concat(&m.inverse()).concat(&w.inverse()));
            }
            let sq = matrix::mul(f, &mm, &mm);
            let w = word_for_matrix(&psl, &sq)
                .ok_or_else(|| Error::Verification("no word for m^2".into()))?;
            p.relators.push(m.concat(&m).concat(&w.inverse()));
        }
    }
    p.kind = Some(kind);

    let mut parabolic = vec![p.word("t")?, p.word("u")?];
    let mut translations = parabolic.clone();
    if kind == GroupKind::Sl2 {
        parabolic.push(p.word("z")?);
        translations.push(p.word("z")?);
    }
    if has_l {
        parabolic.push(p.word("l")?);
    }
    p.rotation = match (kind, d) {
        (GroupKind::Pgl2, 1) => Some((p.word("m")?, 4)),
        (GroupKind::Pgl2, _) => Some((p.word("ml")?, 6)),
        (_, 1) => Some((p.word("l")?, 2)),
        (_, 3) => Some((p.word("l")?, 3)),
        _ => None,
    };
    if kind == GroupKind::Pgl2 {
        parabolic.push(p.word("m")?);
    }
    p.parabolic = parabolic;
    p.translations = translations;
    p.validate()?;
    Ok(p)
}

/// Word in `a, t, u, l` representing a matrix of `PSL₂(𝒪)` projectively,
/// found by the Euclidean algorithm on the first column.
pub fn word_for_matrix(p: &Presentation, target: &Mat2) -> Option<Word> {
    let f = p.field?;
    // Scale into SL₂.
    let det = matrix::det(f, target);
    let lambda = f
        .units()
        .into_iter()
        .find(|u| f.mul(&f.mul(u, u), &det) == QuadElem::one())?;
    let mut m = matrix::scale(f, &lambda, target);
    let ai = p.gen_index("a")?;
    let (ti, ui) = (p.gen_index("t")?, p.gen_index("u")?);
    let mut word = Word::empty();
    let translate = |k: &QuadElem| -> Word {
        let mut w = Word::empty();
        let power = |g: usize, e: &num_bigint::BigInt| {
            let n: i64 = num_traits::ToPrimitive::to_i64(e).unwrap();
            Word(vec![
                if n >= 0 {
                    g as i32 + 1
                } else {
                    -(g as i32 + 1)
                };
                n.unsigned_abs() as usize
            ])
        };
        w = w.concat(&power(ti, &k.a));
        w.concat(&power(ui, &k.b))
    };
    let a_inv = matrix::from_i64([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]]);
    let mut guard = 0;
    while !m[1][0].is_zero() {
        guard += 1;
        if guard > 10_000 {
            return None;
        }
        if m[0][0].is_zero() || f.norm(&m[0][0]) < f.norm(&m[1][0]) {
            word = word.concat(&Word::letter(ai, false));
            m = matrix::mul(f, &a_inv, &m);
            continue;
        }
        let (k, _) = f.div_rem(&m[0][0], &m[1][0]);
        word = word.concat(&translate(&k));
        let back = [[QuadElem::one(), -&k], [QuadElem::zero(), QuadElem::one()]];
        m = matrix::mul(f, &back, &m);
    }
    // m = diag(p, p⁻¹)·[[1, x], [0, 1]]
    let pu = m[0][0].clone();
    let x = f.mul(&m[0][1], &m[1][1]);
    if pu != QuadElem::one() && pu != QuadElem::int(-1) {
        let li = p.gen_index("l")?;
        let diag = [
            [pu.clone(), QuadElem::zero()],
            [QuadElem::zero(), m[1][1].clone()],
        ];
        let diag_inv = matrix::inv(f, &diag)?;
        let j = (1..6u32).find(|&j| {
            let power = p.eval(&Word::letter(li, false).pow(j)).unwrap();
            matrix::is_scalar_unit(f, &matrix::mul(f, &power, &diag_inv))
        })?;
        word = word.concat(&Word::letter(li, false).pow(j));
    }
    word = word.concat(&translate(&x));
    let check = matrix::mul(
        f,
        &p.eval(&word)?,
        &matrix::inv(f, &matrix::scale(f, &lambda, target))?,
    );
    matrix::is_scalar_unit(f, &check).then_some(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presentations_validate() {
        for d in crate::quadfield::SUPPORTED {
            for kind in [GroupKind::Psl2, GroupKind::Sl2] {
                bianchi_presentation(d, kind).unwrap();
            }
        }
        bianchi_presentation(1, GroupKind::Pgl2).unwrap();
        bianchi_presentation(3, GroupKind::Pgl2).unwrap();
        assert!(matches!(
            bianchi_presentation(7, GroupKind::Pgl2),
            Err(Error::UnsupportedGroup { .. })
        ));
    }

    #[test]
    fn words_for_random_matrices() {
        let p = bianchi_presentation(3, GroupKind::Psl2).unwrap();
        let w = p.word("atUlaTTuLa").unwrap();
        let m = p.eval(&w).unwrap();
        let found = word_for_matrix(&p, &m).unwrap();
        let f = p.field.unwrap();
        let back = p.eval(&found).unwrap();
        assert!(matrix::is_scalar_unit(
            f,
            &matrix::mul(f, &back, &matrix::inv(f, &m).unwrap())
        ));
    }
}
