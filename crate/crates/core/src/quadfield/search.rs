//! Deterministic searches for principal primes with side conditions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::elem::{Field, QuadElem};
use super::ideal::{primes_up_to, QfIdeal};
use crate::error::{Error, Result};

/// Side conditions for [`find_principal_prime`].
#[derive(Clone, Debug, Default)]
pub struct PrimeConstraints {
    /// `π ≡ λ (mod 𝔪)`.
    pub congruence: Option<(QuadElem, QfIdeal)>,
    /// `N(π) mod m` must avoid every listed residue.
    pub norm_mod: Option<(u64, Vec<u64>)>,
    /// Rational primes that must not divide `N(π)`.
    pub avoid: Vec<u64>,
    /// Prime ideals that `(π)` must differ from.
    pub avoid_ideals: Vec<QfIdeal>,
    /// Search limit on `N(π)`.
    pub norm_bound: u64,
}

/// Generator of the first prime ideal, in increasing norm, meeting every constraint.
/// Unit multiples are tried in the field's unit order to meet the congruence.
pub fn find_principal_prime(field: Field, c: &PrimeConstraints) -> Result<QuadElem> {
    find_principal_prime_among(field, &primes_up_to(field, c.norm_bound), c)
}

/// As [`find_principal_prime`], scanning a precomputed list of prime ideals
/// in increasing norm; entries above `c.norm_bound` are ignored.
pub fn find_principal_prime_among(
    field: Field,
    primes: &[QfIdeal],
    c: &PrimeConstraints,
) -> Result<QuadElem> {
    let mut examined = 0u64;
    for p in primes {
        if p.norm_u64() > c.norm_bound {
            break;
        }
        examined += 1;
        let n = p.norm();
        let nu = n.to_u64().unwrap();
        if c.avoid.iter().any(|&q| q > 1 && nu % q == 0) {
            continue;
        }
        if c.avoid_ideals.contains(p) {
            continue;
        }
        if let Some((m, forbidden)) = &c.norm_mod {
            if forbidden.contains(&(nu % m)) {
                continue;
            }
        }
        match &c.congruence {
            None => return Ok(p.generator().clone()),
            Some((lambda, modulus)) => {
                for u in field.units() {
                    let pi = field.mul(&u, p.generator());
                    if modulus.contains(&(&pi - lambda)) {
                        return Ok(pi);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted {
        norm_bound: c.norm_bound,
        examined,
    })
}

/// Whether `(x)` is a prime ideal.
pub fn generates_prime(field: Field, x: &QuadElem) -> bool {
    let Some(n) = field.norm(x).to_u128() else {
        return false;
    };
    if crate::arith::is_prime(n) {
        return true;
    }
    let r = (n as f64).sqrt().round() as u128;
    if r * r != n || !crate::arith::is_prime(r) {
        return false;
    }
    let p = QuadElem::int(BigInt::from(r));
    field.div_exact(x, &p).is_some_and(|u| field.is_unit(&u))
        && super::ideal::primes_above(field, r as u64).len() == 1
        && super::ideal::primes_above(field, r as u64)[0].norm() == BigInt::from(n)
}

/// Elements of `t + 𝔪` with norm at most `bound`, by increasing norm.
pub fn class_elements_up_to(
    field: Field,
    t: &QuadElem,
    modulus: &QfIdeal,
    bound: u64,
) -> Vec<QuadElem> {
    let (a, b, c) = modulus.hnf();
    let (a, b, c) = (
        a.to_i64().unwrap() as i128,
        b.to_i64().unwrap() as i128,
        c.to_i64().unwrap() as i128,
    );
    let (ta, tb) = (t.a.to_i128().unwrap(), t.b.to_i128().unwrap());
    let d = field.d() as i128;
    let half = field.omega_sq().1 != 0;
    let bound = bound as i128;
    // N(u + vω) = u² + d·v² or (u + v/2)² + (d/4)·v².
    let vmax = if half {
        ((4 * bound / d) as f64).sqrt() as i128 + 1
    } else {
        ((bound / d) as f64).sqrt() as i128 + 1
    };
    let mut out = Vec::new();
    let ylo = (-vmax - tb).div_euclid(c) - 1;
    let yhi = (vmax - tb).div_euclid(c) + 1;
    for y in ylo..=yhi {
        let v = tb + y * c;
        let rest = if half {
            4 * bound - d * v * v
        } else {
            bound - d * v * v
        };
        if rest < 0 {
            continue;
        }
        let r = (rest as f64).sqrt() as i128 + 2;
        // u ranges over an interval of half-width ~r (or r/2) around −v/2 or 0.
        let centre = if half { -v / 2 } else { 0 };
        let u0 = ta + y * b;
        let xlo = (centre - r - u0).div_euclid(a) - 1;
        let xhi = (centre + r - u0).div_euclid(a) + 1;
        for x in xlo..=xhi {
            let u = u0 + x * a;
            let n = if half {
                u * u + u * v + (1 + d) / 4 * v * v
            } else {
                u * u + d * v * v
            };
            if n <= bound {
                out.push((n, QuadElem::new(BigInt::from(u), BigInt::from(v))));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, e)| e).collect()
}

/// First element of `t + 𝔪`, in increasing norm, generating a prime ideal
/// that meets the norm and avoidance constraints of `c` (its congruence field
/// is ignored). The window doubles from `start` up to `c.norm_bound`; at most
/// `budget` class elements are examined.
pub fn find_prime_in_class(
    field: Field,
    t: &QuadElem,
    modulus: &QfIdeal,
    c: &PrimeConstraints,
    start: u64,
    budget: u64,
) -> Result<QuadElem> {
    let mut lo = 0u64;
    let mut hi = start.clamp(16, c.norm_bound.max(16));
    let mut examined = 0u64;
    loop {
        for e in class_elements_up_to(field, t, modulus, hi) {
            let n = field.norm(&e).to_u64().unwrap();
            if n <= lo {
                continue;
            }
            examined += 1;
            if examined > budget {
                return Err(Error::SearchExhausted {
                    norm_bound: hi,
                    examined: budget,
                });
            }
            if c.avoid.iter().any(|&q| q > 1 && n.is_multiple_of(q)) {
                continue;
            }
            if let Some((m, forbidden)) = &c.norm_mod {
                if forbidden.contains(&(n % m)) {
                    continue;
                }
            }
            if !generates_prime(field, &e) {
                continue;
            }
            if c.avoid_ideals.iter().any(|q| q.contains(&e)) {
                continue;
            }
            return Ok(e);
        }
        if hi >= c.norm_bound {
            return Err(Error::SearchExhausted {
                norm_bound: c.norm_bound,
                examined,
            });
        }
        lo = hi;
        hi = (hi * 2).min(c.norm_bound);
    }
}

/// Whether `N(π) ≢ 1 (mod p^k)`.
pub fn norm_not_one_mod(norm: &BigInt, p: u64, k: u32) -> bool {
    let m = BigInt::from(p.pow(k));
    norm.mod_floor(&m) != BigInt::from(1).mod_floor(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_search_finds_smallest_prime() {
        let f = Field::new(3).unwrap();
        let c = PrimeConstraints {
            norm_bound: 100,
            ..Default::default()
        };
        let pi = find_principal_prime(f, &c).unwrap();
        assert_eq!(f.norm(&pi), BigInt::from(3));
    }

    #[test]
    fn forbidden_norm_residue() {
        let f = Field::new(3).unwrap();
        let c = PrimeConstraints {
            norm_mod: Some((7, vec![1, 3])),
            norm_bound: 1000,
            ..Default::default()
        };
        let pi = find_principal_prime(f, &c).unwrap();
        // Norms in order: 3, 4, 7, ... ; 3 is forbidden, 4 ≡ 4 is allowed.
        assert_eq!(f.norm(&pi), BigInt::from(4));
    }

    #[test]
    fn impossible_constraints_exhaust_budget() {
        let f = Field::new(3).unwrap();
        let c = PrimeConstraints {
            norm_mod: Some((3, vec![0, 1, 2])),
            norm_bound: 200,
            ..Default::default()
        };
        assert!(matches!(
            find_principal_prime(f, &c),
            Err(Error::SearchExhausted {
                norm_bound: 200,
                ..
            })
        ));
    }

    #[test]
    fn congruence_is_met() {
        let f = Field::new(1).unwrap();
        let m = QfIdeal::principal(f, &QuadElem::int(5)).unwrap();
        let lambda = QuadElem::new(2, 1);
        let c = PrimeConstraints {
            congruence: Some((lambda.clone(), m.clone())),
            norm_bound: 10_000,
            ..Default::default()
        };
        let pi = find_principal_prime(f, &c).unwrap();
        assert!(m.contains(&(&pi - &lambda)));
    }

    #[test]
    fn class_enumeration_matches_brute_force() {
        for d in [1, 2, 3, 7] {
            let f = Field::new(d).unwrap();
            let m = QfIdeal::principal(f, &QuadElem::new(2, 1)).unwrap();
            let t = QuadElem::new(1, 1);
            let got = class_elements_up_to(f, &t, &m, 60);
            let mut want = Vec::new();
            for a in -20i64..=20 {
                for b in -20i64..=20 {
                    let e = QuadElem::new(a, b);
                    if f.norm(&e) <= BigInt::from(60) && m.contains(&(&e - &t)) {
                        want.push(e);
                    }
                }
            }
            assert_eq!(got.len(), want.len(), "d = {d}");
            assert!(got.windows(2).all(|w| f.norm(&w[0]) <= f.norm(&w[1])));
            assert!(got.iter().all(|e| want.contains(e)));
        }
    }

    #[test]
    fn prime_generators() {
        let f = Field::new(1).unwrap();
        assert!(generates_prime(f, &QuadElem::new(1, 1)));
        assert!(generates_prime(f, &QuadElem::int(3)));
        assert!(generates_prime(f, &QuadElem::new(0, -7)));
        assert!(!generates_prime(f, &QuadElem::int(5)));
        assert!(!generates_prime(f, &QuadElem::int(2)));
        let m = QfIdeal::principal(f, &QuadElem::int(5)).unwrap();
        let c = PrimeConstraints {
            norm_bound: 10_000,
            ..Default::default()
        };
        let p = find_prime_in_class(f, &QuadElem::new(2, 1), &m, &c, 16, 1000).unwrap();
        assert!(m.contains(&(&p - &QuadElem::new(2, 1))));
        assert!(generates_prime(f, &p));
    }
}
