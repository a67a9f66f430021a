//! Ideals in Hermite normal form, prime splitting and factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::{Field, QuadElem};
use crate::arith;
use crate::error::{Error, Result};

/// Nonzero ideal `ℤ·a + ℤ·(b + c·ω)` with `c | a`, `c | b`, `0 ≤ b < a`.
/// Every supported field has class number one, so a generator is always kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QfIdeal {
    field: Field,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    gen: QuadElem,
}

impl PartialOrd for QfIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QfIdeal {
    /// By norm, then by the Hermite coordinates.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.norm(), &self.a, &self.b, &self.c).cmp(&(other.norm(), &other.a, &other.b, &other.c))
    }
}

impl QfIdeal {
    pub fn principal(field: Field, x: &QuadElem) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let w = field.mul(x, &QuadElem::omega());
        let (a, b, c) = hnf_of(&[x.clone(), w]);
        Ok(QfIdeal {
            field,
            a,
            b,
            c,
            gen: field.normalize(x),
        })
    }

    pub fn unit(field: Field) -> Self {
        Self::principal(field, &QuadElem::one()).unwrap()
    }

    /// The ideal generated by several elements.
    pub fn generated_by(field: Field, gens: &[QuadElem]) -> Result<Self> {
        let g = gens
            .iter()
            .fold(QuadElem::zero(), |acc, x| field.gcd(&acc, x));
        Self::principal(field, &g)
    }

    /// Builds an ideal from Hermite coordinates, checking closure under `ω`.
    pub fn from_hnf(field: Field, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if !a.is_positive()
            || !c.is_positive()
            || !(&a % &c).is_zero()
            || !(&b % &c).is_zero()
            || b.is_negative()
            || b >= a
        {
            return Err(Error::Parse(format!(
                "({a}, {b}, {c}) is not in Hermite form"
            )));
        }
        if !hnf_is_ideal(field, &a, &b, &c) {
            return Err(Error::Parse(format!("({a}, {b}, {c}) is not an ideal")));
        }
        let gen = field.gcd(
            &QuadElem::int(a.clone()),
            &QuadElem::new(b.clone(), c.clone()),
        );
        Ok(QfIdeal {
            field,
            a,
            b,
            c,
            gen,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn norm_u64(&self) -> u64 {
        self.norm().to_u64().expect("norm exceeds u64")
    }

    pub fn generator(&self) -> &QuadElem {
        &self.gen
    }

    /// `(a, b, c)`.
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// Smallest positive rational integer in the ideal.
    pub fn min_integer(&self) -> &BigInt {
        &self.a
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        if !(&x.b % &self.c).is_zero() {
            return false;
        }
        let k = &x.b / &self.c;
        ((&x.a - k * &self.b) % &self.a).is_zero()
    }

    pub fn mul(&self, other: &QfIdeal) -> QfIdeal {
        Self::principal(self.field, &self.field.mul(&self.gen, &other.gen)).unwrap()
    }

    pub fn pow(&self, e: u32) -> QfIdeal {
        Self::principal(self.field, &self.field.pow(&self.gen, e)).unwrap()
    }

    pub fn add(&self, other: &QfIdeal) -> QfIdeal {
        Self::principal(self.field, &self.field.gcd(&self.gen, &other.gen)).unwrap()
    }

    /// `self ⊆ other`, i.e. `other | self`.
    pub fn divided_by(&self, other: &QfIdeal) -> bool {
        other.contains(&self.gen)
    }

    /// `self / other` when `other | self`.
    pub fn quotient(&self, other: &QfIdeal) -> Option<QfIdeal> {
        let q = self.field.div_exact(&self.gen, &other.gen)?;
        Self::principal(self.field, &q).ok()
    }

    pub fn is_coprime_to(&self, other: &QfIdeal) -> bool {
        self.add(other).is_unit()
    }

    pub fn conj(&self) -> QfIdeal {
        Self::principal(self.field, &self.field.conj(&self.gen)).unwrap()
    }

    /// Valuation of an element at this ideal, which must be prime.
    pub fn valuation(&self, x: &QuadElem) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut y = x.clone();
        while let Some(q) = self.field.div_exact(&y, &self.gen) {
            y = q;
            v += 1;
        }
        Some(v)
    }

    /// Prime ideal factorization, ordered by norm.
    pub fn factor(&self) -> Vec<(QfIdeal, u32)> {
        let n = self.norm().to_u128().expect("norm too large to factor");
        let mut out = Vec::new();
        for (p, _) in arith::factor(n) {
            for pr in primes_above(self.field, p as u64) {
                let v = pr.valuation(&self.gen).unwrap();
                if v > 0 {
                    out.push((pr, v));
                }
            }
        }
        out.sort();
        out
    }

    /// Serialization used in reports: `(generator)`.
    pub fn label(&self) -> String {
        format!("({})", self.gen)
    }

    /// `[a, 0, b, c]`: the rows `(a, 0)` and `(b, c)` of the Hermite basis.
    pub fn hnf_tuple(&self) -> [String; 4] {
        [
            self.a.to_string(),
            "0".into(),
            self.b.to_string(),
            self.c.to_string(),
        ]
    }
}

impl fmt::Display for QfIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Hermite coordinates of the ℤ-lattice spanned by elements.
fn hnf_of(gens: &[QuadElem]) -> (BigInt, BigInt, BigInt) {
    // Vectors as (b, a) so that the first Hermite row carries c.
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| vec![g.b.clone(), g.a.clone()])
        .collect();
    let h = crate::linalg::lattice::row_hnf(rows, 2);
    assert_eq!(h.len(), 2, "lattice of a nonzero ideal has rank two");
    let c = h[0][0].clone();
    let a = h[1][1].clone();
    let b = h[0][1].mod_floor(&a);
    (a, b, c)
}

fn hnf_is_ideal(field: Field, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    let (w0, w1) = field.omega_sq();
    // ω·a ∈ I
    if !((a / c) * b % a).is_zero() {
        return false;
    }
    // ω·(b + cω) = c·w0 + (b + c·w1)·ω ∈ I
    let y = b + c * w1;
    let k = &y / c;
    ((c * w0 - k * b) % a).is_zero()
}

/// Splitting behaviour of a rational prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split(QfIdeal, QfIdeal),
    Inert(QfIdeal),
    Ramified(QfIdeal),
}

impl Splitting {
    pub fn kind(&self) -> &'static str {
        match self {
            Splitting::Split(..) => "split",
            Splitting::Inert(_) => "inert",
            Splitting::Ramified(_) => "ramified",
        }
    }

    pub fn primes(&self) -> Vec<QfIdeal> {
        match self {
            Splitting::Split(p, q) => vec![p.clone(), q.clone()],
            Splitting::Inert(p) | Splitting::Ramified(p) => vec![p.clone()],
        }
    }
}

pub fn splitting_type(field: Field, p: u64) -> Result<Splitting> {
    if !arith::is_prime(p as u128) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let roots = field.omega_roots_mod(p);
    let pe = QuadElem::int(p);
    let prime_at = |r: u64| {
        QfIdeal::generated_by(field, &[pe.clone(), QuadElem::new(-(r as i64), 1)]).unwrap()
    };
    Ok(match roots.len() {
        0 => Splitting::Inert(QfIdeal::principal(field, &pe).unwrap()),
        1 => Splitting::Ramified(prime_at(roots[0])),
        _ => {
            let (x, y) = (prime_at(roots[0]), prime_at(roots[1]));
            if x <= y {
                Splitting::Split(x, y)
            } else {
                Splitting::Split(y, x)
            }
        }
    })
}

pub fn primes_above(field: Field, p: u64) -> Vec<QfIdeal> {
    splitting_type(field, p)
        .map(|s| s.primes())
        .unwrap_or_default()
}

/// `|(𝒪/𝔣)^×|`.
pub fn euler_phi(f: &QfIdeal) -> BigInt {
    let mut phi = BigInt::one();
    for (p, e) in f.factor() {
        let q = p.norm();
        phi *= num_traits::pow(q.clone(), (e - 1) as usize) * (q - 1);
    }
    phi
}

/// Every ideal of norm at most `max_norm`, ordered by norm then Hermite key.
pub fn ideals_up_to(field: Field, max_norm: u64) -> Vec<QfIdeal> {
    let (w0, w1) = field.omega_sq();
    let (w0, w1) = (w0 as i128, w1 as i128);
    let mut out = Vec::new();
    for n in 1..=max_norm {
        let mut c = 1u64;
        while c * c <= n {
            if n % (c * c) == 0 {
                let a = n / c;
                let m = (a / c) as i128;
                let (ab, cb) = (BigInt::from(a), BigInt::from(c));
                // With b = k·c the lattice is an ideal iff k² + w1·k ≡ w0 (mod a/c).
                for k in 0..(a / c) {
                    let ki = k as i128;
                    if (ki * ki + w1 * ki - w0).rem_euclid(m) == 0 {
                        let b = BigInt::from(k * c);
                        debug_assert!(hnf_is_ideal(field, &ab, &b, &cb));
                        out.push(QfIdeal::from_hnf(field, ab.clone(), b, cb.clone()).unwrap());
                    }
                }
            }
            c += 1;
        }
    }
    out.sort();
    out
}

/// Prime ideals of norm at most `bound`, ordered by norm then Hermite key.
pub fn primes_up_to(field: Field, bound: u64) -> Vec<QfIdeal> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if !arith::is_prime(p as u128) {
            continue;
        }
        for pr in primes_above(field, p) {
            if pr.norm() <= BigInt::from(bound) {
                out.push(pr);
            }
        }
    }
    out.sort();
    out
}

/// Brute-force multiplicative-group order of `𝒪/I`, for testing.
pub fn brute_force_unit_count(f: &QfIdeal) -> u64 {
    let (w0, w1) = f.field().omega_sq();
    let (a, b, c) = f.hnf();
    let (a, b, c) = (
        a.to_i64().unwrap(),
        b.to_i64().unwrap(),
        c.to_i64().unwrap(),
    );
    // x + yω ∈ [a, b + cω] iff c | y and a | x − (y/c)·b.
    let contains = |x: i64, y: i64| y % c == 0 && (x - (y / c) * b) % a == 0;
    let mut count = 0;
    for x in 0..a {
        for y in 0..c {
            let is_unit = (0..a).any(|s| {
                (0..c).any(|t| {
                    // (x + yω)(s + tω) with ω² = w0 + w1·ω
                    let re = x * s + y * t * w0;
                    let im = x * t + y * s + y * t * w1;
                    contains(re - 1, im)
                })
            });
            if is_unit {
                count += 1;
            }
        }
    }
    count
}

/// Multiplicative structure used by reports.
pub fn factorization_label(f: &QfIdeal) -> String {
    let parts: Vec<String> = f
        .factor()
        .into_iter()
        .map(|(p, e)| {
            if e == 1 {
                p.label()
            } else {
                format!("{}^{e}", p.label())
            }
        })
        .collect();
    if parts.is_empty() {
        "(1)".into()
    } else {
        parts.join("")
    }
}

/// Count of ideals of each norm, keyed by norm.
pub fn norm_histogram(ideals: &[QfIdeal]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for i in ideals {
        *h.entry(i.norm_u64()).or_insert(0) += 1;
    }
    h
}
