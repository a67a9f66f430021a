//! Conductor `𝔣 = ∏ 𝔮_v^{n_v}` of a symbol and its denominator `|(𝒪/𝔣)^×|`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::tree::tree_valuation;
use super::ModularSymbol;
use crate::arith;
use crate::error::{Error, Result};
use crate::quadfield::ideal::primes_above;
use crate::quadfield::matrix;
use crate::quadfield::{euler_phi, Field, QfIdeal, QuadElem};

/// Rational primes up to this bound are checked even when no datum of the
/// symbol is divisible by them.
pub const DEFAULT_MARGIN: u64 = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorData {
    pub ideal: QfIdeal,
    /// `(𝔮_v, n_v)` with `n_v ≥ 1`, ordered by norm.
    pub support: Vec<(QfIdeal, u32)>,
    pub denominator: BigInt,
}

#[derive(Serialize)]
struct SupportJson {
    prime: String,
    norm: String,
    n: u32,
}

#[derive(Serialize)]
struct ConductorJson {
    conductor: String,
    norm: String,
    hnf: [String; 4],
    support: Vec<SupportJson>,
    denominator: String,
}

impl ConductorData {
    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    /// Whether no prime of the support lies over a divisor of `m`.
    pub fn coprime_to(&self, m: u64) -> bool {
        self.support.iter().all(|(q, _)| {
            let p = arith::factor(q.norm_u64() as u128);
            p.keys().all(|&r| !m.is_multiple_of(r as u64))
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ConductorJson {
            conductor: self.ideal.label(),
            norm: self.ideal.norm().to_string(),
            hnf: self.ideal.hnf_tuple(),
            support: self
                .support
                .iter()
                .map(|(q, n)| SupportJson {
                    prime: q.label(),
                    norm: q.norm().to_string(),
                    n: *n,
                })
                .collect(),
            denominator: self.denominator.to_string(),
        })
        .unwrap()
    }
}

fn rational_primes_of(f: Field, x: &QuadElem, out: &mut BTreeSet<u64>) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let n = f.norm(x);
    let n = n.to_u128().ok_or_else(|| Error::TooLarge(n.to_string()))?;
    for p in arith::factor(n).into_keys() {
        out.insert(p as u64);
    }
    Ok(())
}

/// Primes where `n_v` may be positive: divisors of the endpoint coordinates,
/// the matrix entries, `det g` and `det[α̂ β̂]`.
pub fn candidate_primes(sym: &ModularSymbol) -> Result<BTreeSet<u64>> {
    let f = sym.field;
    let mut out = BTreeSet::new();
    for x in [&sym.alpha.x, &sym.alpha.y, &sym.beta.x, &sym.beta.y] {
        rational_primes_of(f, x, &mut out)?;
    }
    for row in &sym.g {
        for x in row {
            rational_primes_of(f, x, &mut out)?;
        }
    }
    rational_primes_of(f, &matrix::det(f, &sym.g), &mut out)?;
    rational_primes_of(f, &sym.alpha.cross(f, &sym.beta), &mut out)?;
    Ok(out)
}

/// Conductor over the candidate primes; primes up to `margin` outside the
/// candidate set are evaluated too and must give `n_v = 0`.
pub fn conductor(sym: &ModularSymbol, margin: u64) -> Result<ConductorData> {
    let f = sym.field;
    let candidates = candidate_primes(sym)?;
    let mut support = Vec::new();
    for &p in &candidates {
        for v in primes_above(f, p) {
            let n = tree_valuation(sym, &v)?;
            if n > 0 {
                support.push((v, n));
            }
        }
    }
    for p in (2..=margin).filter(|&p| arith::is_prime(p as u128) && !candidates.contains(&p)) {
        for v in primes_above(f, p) {
            let n = tree_valuation(sym, &v)?;
            if n != 0 {
                return Err(Error::Verification(format!(
                    "n_v = {n} at {} outside the candidate primes",
                    v.label()
                )));
            }
        }
    }
    support.sort();
    let mut ideal = QfIdeal::unit(f);
    let mut denominator = BigInt::one();
    for (q, n) in &support {
        ideal = ideal.mul(&q.pow(*n));
        let nq = q.norm();
        denominator *= num_traits::pow(nq.clone(), (*n - 1) as usize) * (nq - 1);
    }
    debug_assert_eq!(denominator, euler_phi(&ideal));
    Ok(ConductorData {
        ideal,
        support,
        denominator,
    })
}

/// `h_F·φ(𝔣)·N(𝔫)·φ(𝔫)` with `h_F = 1`.
pub fn order_upper_bound(conductor: &QfIdeal, level: &QfIdeal) -> BigInt {
    euler_phi(conductor) * level.norm() * euler_phi(level)
}

/// `v_p(n)` for a nonzero integer.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::ideal::brute_force_unit_count;
    use crate::symbols::P1Point;

    fn sym(f: Field, a: &str, b: &str) -> ModularSymbol {
        ModularSymbol::new(
            f,
            P1Point::parse(f, a).unwrap(),
            P1Point::parse(f, b).unwrap(),
            matrix::identity(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let f = Field::new(3).unwrap();
        let c = conductor(&sym(f, "0", "inf"), DEFAULT_MARGIN).unwrap();
        assert!(c.ideal.is_unit());
        assert_eq!(c.denominator, BigInt::one());
        let c = conductor(&sym(f, "0", "5"), DEFAULT_MARGIN).unwrap();
        assert_eq!(c.ideal, QfIdeal::principal(f, &QuadElem::int(5)).unwrap());
        assert_eq!(c.denominator, BigInt::from(24));
        assert_eq!(brute_force_unit_count(&c.ideal), 24);
        assert!(conductor(&sym(f, "0", "1"), DEFAULT_MARGIN)
            .unwrap()
            .ideal
            .is_unit());
        let j = c.to_json_value();
        assert_eq!(j["denominator"], "24");
        assert_eq!(j["support"][0]["n"], 1);
    }

    #[test]
    fn denominators_match_unit_counts() {
        let f = Field::new(1).unwrap();
        for b in ["2", "3", "4", "6", "(1+w)", "(2+w)", "9", "10", "(3+2*w)"] {
            let c = conductor(&sym(f, "0", b), DEFAULT_MARGIN).unwrap();
            assert_eq!(c.denominator, euler_phi(&c.ideal));
            if c.ideal.norm_u64() <= 200 {
                assert_eq!(
                    c.denominator,
                    BigInt::from(brute_force_unit_count(&c.ideal))
                );
            }
        }
    }

    #[test]
    fn order_bound_formula() {
        let f = Field::new(3).unwrap();
        let five = QfIdeal::principal(f, &QuadElem::int(5)).unwrap();
        let two = QfIdeal::principal(f, &QuadElem::int(2)).unwrap();
        // φ(5) = 24, N(2) = 4, φ(2) = 3.
        assert_eq!(order_upper_bound(&five, &two), BigInt::from(24 * 4 * 3));
        assert_eq!(p_adic_valuation(&BigInt::from(48), 2), 4);
    }
}
