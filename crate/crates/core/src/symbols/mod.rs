//! Modular symbols `⟨α, β; g⟩` over an imaginary quadratic field: tree
//! valuations, conductors, continued-fraction decomposition and the
//! denominator-avoiding split.

pub mod conductor;
pub mod manin;
pub mod split;
pub mod tree;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::{Field, QuadElem};

pub use conductor::{conductor, order_upper_bound, ConductorData, DEFAULT_MARGIN};
pub use manin::{boundary_sum, manin_decompose};
pub use split::{split, SplitOptions, SplitResult};
pub use tree::{bfs_valuation, refined_valuation, tree_valuation, BfsOutcome, Direction};

/// A point `(x : y)` of `P¹(F)` with `x, y ∈ 𝒪` coprime; `∞ = (1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    pub x: QuadElem,
    pub y: QuadElem,
}

impl P1Point {
    /// Reduces `(x : y)` to coprime coordinates with `y` a canonical associate.
    pub fn new(f: Field, x: QuadElem, y: QuadElem) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Parse("(0 : 0) is not a point".into()));
        }
        let g = f.gcd(&x, &y);
        let mut x = f.div_exact(&x, &g).unwrap();
        let mut y = f.div_exact(&y, &g).unwrap();
        if y.is_zero() {
            return Ok(Self::infinity());
        }
        let u = f.div_exact(&f.normalize(&y), &y).unwrap();
        x = f.mul(&u, &x);
        y = f.mul(&u, &y);
        Ok(P1Point { x, y })
    }

    pub fn infinity() -> Self {
        P1Point {
            x: QuadElem::one(),
            y: QuadElem::zero(),
        }
    }

    pub fn zero() -> Self {
        P1Point {
            x: QuadElem::zero(),
            y: QuadElem::one(),
        }
    }

    pub fn from_elem(x: &QuadElem) -> Self {
        P1Point {
            x: x.clone(),
            y: QuadElem::one(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Parses `inf`, `x` or `x/y` with element syntax on both sides.
    pub fn parse(f: Field, s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Self::infinity());
        }
        let (x, y) = parse_fraction(t)?;
        Self::new(f, x, y)
    }

    /// `g·(x : y)`.
    pub fn apply(&self, f: Field, g: &Mat2) -> Result<Self> {
        let x = &f.mul(&g[0][0], &self.x) + &f.mul(&g[0][1], &self.y);
        let y = &f.mul(&g[1][0], &self.x) + &f.mul(&g[1][1], &self.y);
        Self::new(f, x, y)
    }

    /// `det[self other]`; zero iff the points coincide.
    pub fn cross(&self, f: Field, other: &P1Point) -> QuadElem {
        &f.mul(&self.x, &other.y) - &f.mul(&other.x, &self.y)
    }
}

fn wrap(e: &QuadElem) -> String {
    let s = e.to_string();
    if s[1..].contains(['+', '-']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.y == QuadElem::one() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}/{}", wrap(&self.x), wrap(&self.y))
        }
    }
}

fn parse_fraction(s: &str) -> Result<(QuadElem, QuadElem)> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = QuadElem::parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok((QuadElem::parse(n)?, d))
        }
        None => Ok((QuadElem::parse(s)?, QuadElem::one())),
    }
}

/// `⟨α, β; g⟩`. The matrix is kept integral and primitive; scaling does not
/// change the vertex it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSymbol {
    pub field: Field,
    pub alpha: P1Point,
    pub beta: P1Point,
    pub g: Mat2,
    /// `−1` records that the symbol stands for `−⟨β, α; g⟩`.
    pub sign: i8,
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    alpha: String,
    beta: String,
    g: [[String; 2]; 2],
    #[serde(default = "plus", skip_serializing_if = "is_plus")]
    sign: i8,
}

fn plus() -> i8 {
    1
}

fn is_plus(s: &i8) -> bool {
    *s == 1
}

impl ModularSymbol {
    pub fn new(field: Field, alpha: P1Point, beta: P1Point, g: Mat2) -> Result<Self> {
        if matrix::det(field, &g).is_zero() {
            return Err(Error::Parse("symbol matrix is singular".into()));
        }
        if alpha == beta {
            return Err(Error::DegenerateSymbol("every place".into()));
        }
        Ok(ModularSymbol {
            field,
            alpha,
            beta,
            g: primitive(field, &g),
            sign: 1,
        })
    }

    /// `⟨0, ∞; g⟩`.
    pub fn standard(field: Field, g: Mat2) -> Result<Self> {
        Self::new(field, P1Point::zero(), P1Point::infinity(), g)
    }

    /// Same homology class with endpoints swapped.
    pub fn reversed(&self) -> Self {
        ModularSymbol {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// Columns lift `α` and `β`.
    pub fn endpoint_matrix(&self) -> Mat2 {
        [
            [self.alpha.x.clone(), self.beta.x.clone()],
            [self.alpha.y.clone(), self.beta.y.clone()],
        ]
    }

    pub fn from_json(field: Field, text: &str) -> Result<Self> {
        let j: SymbolJson = serde_json::from_str(text)?;
        let alpha = P1Point::parse(field, &j.alpha)?;
        let beta = P1Point::parse(field, &j.beta)?;
        // Matrix entries may be fractions; clear denominators row by row.
        let mut entries = Vec::with_capacity(4);
        for row in &j.g {
            for e in row {
                entries.push(parse_fraction(e)?);
            }
        }
        let mut den = QuadElem::one();
        for (_, d) in &entries {
            den = field.mul(&den, d);
        }
        let ent: Vec<QuadElem> = entries
            .iter()
            .map(|(n, d)| field.div_exact(&field.mul(n, &den), d).unwrap())
            .collect();
        let g = [
            [ent[0].clone(), ent[1].clone()],
            [ent[2].clone(), ent[3].clone()],
        ];
        if j.sign != 1 && j.sign != -1 {
            return Err(Error::Schema("sign must be 1 or -1".into()));
        }
        let mut s = Self::new(field, alpha, beta, g)?;
        s.sign = j.sign;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SymbolJson {
            alpha: self.alpha.to_string(),
            beta: self.beta.to_string(),
            g: matrix::to_strings(&self.g),
            sign: self.sign,
        })
        .unwrap()
    }
}

/// Divides out the gcd of the entries.
pub(crate) fn primitive(f: Field, g: &Mat2) -> Mat2 {
    let mut c = QuadElem::zero();
    for row in g {
        for e in row {
            c = f.gcd(&c, e);
        }
    }
    g.clone()
        .map(|row| row.map(|e| f.div_exact(&e, &c).unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_normalize() {
        let f = Field::new(1).unwrap();
        let p = P1Point::new(f, QuadElem::int(2), QuadElem::int(4)).unwrap();
        assert_eq!(p.to_string(), "1/2");
        let q = P1Point::new(f, QuadElem::int(-3), QuadElem::new(0, -6)).unwrap();
        assert_eq!(q, P1Point::parse(f, "1/(2*w)").unwrap());
        assert_eq!(
            P1Point::new(f, QuadElem::int(5), QuadElem::zero()).unwrap(),
            P1Point::infinity()
        );
        assert!(P1Point::new(f, QuadElem::zero(), QuadElem::zero()).is_err());
        let r = P1Point::parse(f, "(1+w)/3").unwrap();
        assert_eq!(P1Point::parse(f, &r.to_string()).unwrap(), r);
    }

    #[test]
    fn symbol_json_round_trip() {
        let f = Field::new(3).unwrap();
        let text = r#"{"alpha": "1/2", "beta": "inf", "g": [["1/2", "w"], ["0", "1"]]}"#;
        let s = ModularSymbol::from_json(f, text).unwrap();
        // Denominators are cleared: [[1, 2w], [0, 2]].
        assert_eq!(s.g[0][1], QuadElem::new(0, 2));
        assert_eq!(ModularSymbol::from_json(f, &s.to_json()).unwrap(), s);
        let r = s.reversed();
        assert_eq!(r.sign, -1);
        assert_eq!(ModularSymbol::from_json(f, &r.to_json()).unwrap(), r);
        let bad = r#"{"alpha": "2", "beta": "4/2", "g": [["1", "0"], ["0", "1"]]}"#;
        assert!(matches!(
            ModularSymbol::from_json(f, bad),
            Err(Error::DegenerateSymbol(_))
        ));
    }
}
