//! Elements `a + b·ω` of the ring of integers and the field context that
//! knows how to multiply them.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const SUPPORTED: [u32; 5] = [1, 2, 3, 7, 11];

/// `a + b·ω`, with `ω = √−d` for `d ≡ 1, 2 (mod 4)` and `ω = (1+√−d)/2` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadElem {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadElem {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        QuadElem {
            a: a.into(),
            b: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadElem {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Small coordinates, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }

    /// Exact division by a rational integer, if it divides both coordinates.
    pub fn div_int(&self, k: &BigInt) -> Option<Self> {
        if (&self.a % k).is_zero() && (&self.b % k).is_zero() {
            Some(QuadElem {
                a: &self.a / k,
                b: &self.b / k,
            })
        } else {
            None
        }
    }

    /// Parses `3`, `w`, `-w`, `2-3*w`, `(1+w)`, `5w`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad element '{s}'"));
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        while t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in t.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        let mut out = QuadElem::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            if let Some(coef) = body.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let k: BigInt = if coef.is_empty() {
                    BigInt::one()
                } else {
                    coef.parse().map_err(|_| bad())?
                };
                out.b += k * sign;
            } else {
                let k: BigInt = body.parse().map_err(|_| bad())?;
                out.a += k * sign;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b_term = |f: &mut fmt::Formatter<'_>, lead: bool| -> fmt::Result {
            let mag = self.b.abs();
            let sign = if self.b.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}w")
            } else {
                write!(f, "{sign}{mag}*w")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => b_term(f, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                b_term(f, false)
            }
        }
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        &self + &o
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        &self - &o
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

/// One of the five Euclidean imaginary quadratic fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    d: u32,
}

impl Field {
    pub fn new(d: u32) -> Result<Self> {
        if SUPPORTED.contains(&d) {
            Ok(Field { d })
        } else {
            Err(Error::UnsupportedField(d))
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    fn half_integral(&self) -> bool {
        self.d % 4 == 3
    }

    /// `ω² = w0 + w1·ω`.
    pub fn omega_sq(&self) -> (i64, i64) {
        if self.half_integral() {
            (-((1 + self.d as i64) / 4), 1)
        } else {
            (-(self.d as i64), 0)
        }
    }

    /// Field discriminant.
    pub fn discriminant(&self) -> i64 {
        if self.half_integral() {
            -(self.d as i64)
        } else {
            -4 * self.d as i64
        }
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let (w0, w1) = self.omega_sq();
        let bb = &x.b * &y.b;
        QuadElem {
            a: &x.a * &y.a + &bb * w0,
            b: &x.a * &y.b + &x.b * &y.a + &bb * w1,
        }
    }

    pub fn pow(&self, x: &QuadElem, mut e: u32) -> QuadElem {
        let mut r = QuadElem::one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn conj(&self, x: &QuadElem) -> QuadElem {
        if self.half_integral() {
            QuadElem {
                a: &x.a + &x.b,
                b: -&x.b,
            }
        } else {
            QuadElem {
                a: x.a.clone(),
                b: -&x.b,
            }
        }
    }

    pub fn norm(&self, x: &QuadElem) -> BigInt {
        if self.half_integral() {
            &x.a * &x.a + &x.a * &x.b + &x.b * &x.b * ((1 + self.d) / 4)
        } else {
            &x.a * &x.a + &x.b * &x.b * self.d
        }
    }

    pub fn trace(&self, x: &QuadElem) -> BigInt {
        if self.half_integral() {
            BigInt::from(2) * &x.a + &x.b
        } else {
            BigInt::from(2) * &x.a
        }
    }

    pub fn units(&self) -> Vec<QuadElem> {
        match self.d {
            1 => vec![
                QuadElem::new(1, 0),
                QuadElem::new(0, 1),
                QuadElem::new(-1, 0),
                QuadElem::new(0, -1),
            ],
            3 => vec![
                QuadElem::new(1, 0),
                QuadElem::new(0, 1),
                QuadElem::new(-1, 1),
                QuadElem::new(-1, 0),
                QuadElem::new(0, -1),
                QuadElem::new(1, -1),
            ],
            _ => vec![QuadElem::new(1, 0), QuadElem::new(-1, 0)],
        }
    }

    pub fn is_unit(&self, x: &QuadElem) -> bool {
        self.norm(x).is_one()
    }

    pub fn unit_inverse(&self, u: &QuadElem) -> Option<QuadElem> {
        self.is_unit(u).then(|| self.conj(u))
    }

    /// `x / y` when the quotient is integral.
    pub fn div_exact(&self, x: &QuadElem, y: &QuadElem) -> Option<QuadElem> {
        if y.is_zero() {
            return None;
        }
        let n = self.norm(y);
        self.mul(x, &self.conj(y)).div_int(&n)
    }

    pub fn divides(&self, y: &QuadElem, x: &QuadElem) -> bool {
        if y.is_zero() {
            return x.is_zero();
        }
        self.div_exact(x, y).is_some()
    }

    /// Nearest-integer quotient: `x = q·y + r` with `N(r) < N(y)`.
    pub fn div_rem(&self, x: &QuadElem, y: &QuadElem) -> (QuadElem, QuadElem) {
        assert!(!y.is_zero(), "division by zero");
        let n = self.norm(y);
        let num = self.mul(x, &self.conj(y));
        let q = if self.half_integral() {
            // Round the ω-coordinate first; the half it leaves behind shifts
            // the rational coordinate.
            let qb = round_div(&num.b, &n);
            let two = BigInt::from(2);
            // a/n + (b/n - qb)/2 = (2a + b - qb·n) / 2n
            let qa = round_div(&(&num.a * &two + &num.b - &qb * &n), &(&n * &two));
            QuadElem { a: qa, b: qb }
        } else {
            QuadElem {
                a: round_div(&num.a, &n),
                b: round_div(&num.b, &n),
            }
        };
        let r = x - &self.mul(&q, y);
        debug_assert!(self.norm(&r) < n);
        (q, r)
    }

    pub fn gcd(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let (mut a, mut b) = (x.clone(), y.clone());
        while !b.is_zero() {
            let (_, r) = self.div_rem(&a, &b);
            a = b;
            b = r;
        }
        self.normalize(&a)
    }

    /// `(g, s, t)` with `s·x + t·y = g`, `g` a gcd (not normalized).
    pub fn xgcd(&self, x: &QuadElem, y: &QuadElem) -> (QuadElem, QuadElem, QuadElem) {
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let (mut s0, mut s1) = (QuadElem::one(), QuadElem::zero());
        let (mut t0, mut t1) = (QuadElem::zero(), QuadElem::one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = &s0 - &self.mul(&q, &s1);
            let t = &t0 - &self.mul(&q, &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Canonical associate: the unit multiple maximizing
    /// `(a > 0 and b ≥ 0, −b, a)`.
    pub fn normalize(&self, x: &QuadElem) -> QuadElem {
        if x.is_zero() {
            return x.clone();
        }
        self.units()
            .iter()
            .map(|u| self.mul(u, x))
            .max_by(|p, q| {
                let key = |e: &QuadElem| {
                    (
                        e.a.is_positive() && !e.b.is_negative(),
                        -e.b.clone(),
                        e.a.clone(),
                    )
                };
                key(p).cmp(&key(q))
            })
            .unwrap()
    }

    /// Roots of the minimal polynomial of `ω` modulo a rational prime.
    pub fn omega_roots_mod(&self, p: u64) -> Vec<u64> {
        let (w0, w1) = self.omega_sq();
        // x² − w1·x − w0 ≡ 0
        let f = |x: i128| (x * x - w1 as i128 * x - w0 as i128).rem_euclid(p as i128);
        if p < 5000 {
            return (0..p).filter(|&x| f(x as i128) == 0).collect();
        }
        let disc = (w1 as i128 * w1 as i128 + 4 * w0 as i128).rem_euclid(p as i128) as u128;
        let Some(s) = crate::arith::sqrt_mod(disc, p as u128) else {
            return vec![];
        };
        let inv2 = (p as u128).div_ceil(2);
        let mut roots: Vec<u64> = [s, (p as u128 - s) % p as u128]
            .iter()
            .map(|&r| {
                (((w1.rem_euclid(p as i64) as u128 + r) % p as u128) * inv2 % p as u128) as u64
            })
            .collect();
        roots.sort();
        roots.dedup();
        roots
    }
}

/// `round(n / d)` for `d > 0`, halves rounded up.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * &two))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["3", "w", "-w", "2-3*w", "-1+w", "0"] {
            assert_eq!(QuadElem::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(QuadElem::parse("(1+w)").unwrap(), QuadElem::new(1, 1));
        assert_eq!(QuadElem::parse("5w").unwrap(), QuadElem::new(0, 5));
        assert!(QuadElem::parse("x").is_err());
    }

    #[test]
    fn norm_is_multiplicative() {
        for d in SUPPORTED {
            let f = Field::new(d).unwrap();
            for (x, y) in [((1, 2), (3, -1)), ((-4, 5), (2, 7)), ((0, 1), (0, 1))] {
                let x = QuadElem::new(x.0, x.1);
                let y = QuadElem::new(y.0, y.1);
                assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
                assert_eq!(f.mul(&x, &f.conj(&x)), QuadElem::int(f.norm(&x)));
            }
        }
    }

    #[test]
    fn euclidean_remainder_is_smaller() {
        for d in SUPPORTED {
            let f = Field::new(d).unwrap();
            for a in -6..6 {
                for b in -6..6 {
                    let x = QuadElem::new(a * 7 + 3, b * 5 - 2);
                    let y = QuadElem::new(a, b);
                    if y.is_zero() {
                        continue;
                    }
                    let (q, r) = f.div_rem(&x, &y);
                    assert!(f.norm(&r) < f.norm(&y), "d={d} x={x} y={y}");
                    assert_eq!(&f.mul(&q, &y) + &r, x);
                }
            }
        }
    }

    #[test]
    fn units_have_norm_one() {
        for d in SUPPORTED {
            let f = Field::new(d).unwrap();
            assert!(f.units().iter().all(|u| f.is_unit(u)));
        }
    }

    #[test]
    fn unsupported_field() {
        assert_eq!(Field::new(5), Err(Error::UnsupportedField(5)));
    }

    #[test]
    fn omega_roots() {
        let f = Field::new(3).unwrap();
        // x² − x + 1 mod 7 has roots 3 and 5.
        assert_eq!(f.omega_roots_mod(7), vec![3, 5]);
        assert!(f.omega_roots_mod(5).is_empty());
        let big = 1_000_000_007u64;
        for r in f.omega_roots_mod(big) {
            let r = r as u128;
            assert_eq!((r * r + big as u128 - r + 1) % big as u128, 0);
        }
    }
}
