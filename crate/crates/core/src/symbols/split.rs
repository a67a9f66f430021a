//! Splitting `⟨0, ∞; g⟩ = ⟨0, x; g⟩ + ⟨x, ∞; g⟩` so that both pieces have
//! conductor prime to `Mp` and denominator (nearly) prime to `p`.
//!
//! At each place `v` where `g` is not integral-unimodular the point `x` must
//! land in a disc `π^{n_v}β_v(1 + π^{m_v}𝒪_v)` of ends seen from `[g]` away
//! from the geodesic `(0, ∞)`. Write `x = a₁b₁/(a₂b₂)`: the `aᵢ` fix the
//! valuations, and a congruence on `b₁/b₂` modulo `𝔫₀ = ∏ 𝔮_v^{m_v}` fixes the
//! unit part. The `bᵢ` are good primes: prime to `Mp` with norm `≢ 1 mod p^{A_p}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use super::conductor::{conductor, p_adic_valuation, ConductorData, DEFAULT_MARGIN};
use super::tree::{val, Direction};
use super::{ModularSymbol, P1Point};
use crate::arith;
use crate::error::{Error, Result};
use crate::quadfield::ideal::primes_above;
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::residue::{LocalRing, Res, ResidueRing};
use crate::quadfield::{
    find_prime_in_class, primes_up_to, Field, PrimeConstraints, QfIdeal, QuadElem,
};

#[derive(Clone, Debug)]
pub struct SplitOptions {
    /// Cap on the norm of `b₁`.
    pub norm_bound: u64,
    /// Norm bound for the small good primes used as `b₂` and `𝔞ᵢ′`.
    pub small_bound: u64,
    /// How many choices of `b₂` to try for each choice of `𝔞ᵢ′`.
    pub attempts: usize,
    /// Class elements examined per search for `b₁`.
    pub budget: u64,
    /// Safety margin passed to the conductor check.
    pub margin: u64,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            norm_bound: 1 << 40,
            small_bound: 5_000,
            attempts: 6,
            budget: 5_000,
            margin: DEFAULT_MARGIN,
        }
    }
}

/// Data at one bad place.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub prime: QfIdeal,
    /// A direction at `[g]` (in the frame of `g`) inside the disc.
    pub direction: Direction,
    pub n: i64,
    pub m: u32,
    /// A point `π^{n}β_v` of the disc.
    pub center: P1Point,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub x: P1Point,
    pub left: ModularSymbol,
    pub right: ModularSymbol,
    pub a1: QuadElem,
    pub a2: QuadElem,
    pub b1: QuadElem,
    pub b2: QuadElem,
    /// `𝔞ᵢ′ = (aᵢ)/𝔞ᵢ`, either trivial or a good prime.
    pub a1_prime: QfIdeal,
    pub a2_prime: QfIdeal,
    pub n0: QfIdeal,
    pub lambda: QuadElem,
    pub a_p: u32,
    pub local: Vec<LocalData>,
    pub left_conductor: ConductorData,
    pub right_conductor: ConductorData,
}

impl SplitResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "x": self.x.to_string(),
            "left": serde_json::from_str::<serde_json::Value>(&self.left.to_json()).unwrap(),
            "right": serde_json::from_str::<serde_json::Value>(&self.right.to_json()).unwrap(),
            "a1": self.a1.to_string(),
            "a2": self.a2.to_string(),
            "b1": self.b1.to_string(),
            "b2": self.b2.to_string(),
            "a1_prime": self.a1_prime.label(),
            "a2_prime": self.a2_prime.label(),
            "n0": self.n0.label(),
            "lambda": self.lambda.to_string(),
            "A_p": self.a_p,
            "local": self.local.iter().map(|l| json!({
                "prime": l.prime.label(),
                "n": l.n,
                "m": l.m,
                "center": l.center.to_string(),
            })).collect::<Vec<_>>(),
            "left_conductor": self.left_conductor.to_json_value(),
            "right_conductor": self.right_conductor.to_json_value(),
        })
    }
}

/// `A_p = 1` for `p > 5`, else 3.
pub fn a_p(p: u64) -> u32 {
    if p > 5 {
        1
    } else {
        3
    }
}

/// Largest allowed `v_p` of an output denominator.
pub fn denominator_bound(p: u64) -> u32 {
    if p > 5 {
        0
    } else {
        2 * (a_p(p) - 1)
    }
}

fn strip(f: Field, v: &QfIdeal, mut x: QuadElem, k: u32) -> QuadElem {
    for _ in 0..k {
        x = f.div_exact(&x, v.generator()).unwrap();
    }
    x
}

/// Reduction of `(x : y)` in `P¹(𝒪/𝔮)`; `None` is `∞`.
fn reduce_point(f: Field, v: &QfIdeal, x: &QuadElem, y: &QuadElem) -> Option<Res> {
    let k = [x, y].iter().filter_map(|e| val(v, e)).min().unwrap();
    let (x, y) = (strip(f, v, x.clone(), k), strip(f, v, y.clone(), k));
    if val(v, &y) != Some(0) {
        return None;
    }
    let lr = LocalRing::new(v, 1);
    let r = lr
        .ring
        .mul(lr.ring.reduce_elem(&x), lr.inv(lr.ring.reduce_elem(&y)));
    Some(r)
}

fn apply(f: Field, g: &Mat2, x: &QuadElem, y: &QuadElem) -> (QuadElem, QuadElem) {
    (
        &f.mul(&g[0][0], x) + &f.mul(&g[0][1], y),
        &f.mul(&g[1][0], x) + &f.mul(&g[1][1], y),
    )
}

fn local_data(f: Field, g: &Mat2, v: &QfIdeal) -> LocalData {
    let pi = v.generator();
    let adj = matrix::adj(g);
    // Ends of the geodesic (0, ∞) in the frame where [g] is standard.
    let (ax, ay) = apply(f, &adj, &QuadElem::zero(), &QuadElem::one());
    let (bx, by) = apply(f, &adj, &QuadElem::one(), &QuadElem::zero());
    let forbidden = [reduce_point(f, v, &ax, &ay), reduce_point(f, v, &bx, &by)];
    let ring = ResidueRing::new(v);
    let direction = Direction::all(v)
        .into_iter()
        .find(|d| {
            let r = match d {
                Direction::Finite(e) => Some(ring.reduce_elem(e)),
                Direction::Infinity => None,
            };
            !forbidden.contains(&r)
        })
        .expect("q + 1 ≥ 3 directions");
    let w0 = match &direction {
        Direction::Finite(e) => (e.clone(), QuadElem::one()),
        Direction::Infinity => (QuadElem::one(), QuadElem::zero()),
    };
    // On the geodesic the admissible ends are q − 1 residue discs; take the
    // one through `direction`. Off it they form one disc: everything seen
    // from [g] away from the neighbour towards the geodesic.
    let vm = if forbidden[0] == forbidden[1] {
        g.clone()
    } else {
        matrix::mul(f, g, &direction.matrix(pi))
    };
    let s = [&vm[1][0], &vm[1][1]]
        .iter()
        .filter_map(|e| val(v, e))
        .min()
        .unwrap() as i64;
    let rho = val(v, &matrix::det(f, &vm)).unwrap() as i64 - 2 * s;
    let (c1, c2) = apply(f, g, &w0.0, &w0.1);
    let n = val(v, &c1).expect("disc avoids 0") as i64 - val(v, &c2).expect("disc avoids ∞") as i64;
    let m = rho - n;
    assert!(m >= 1, "disc radius must exceed the centre's valuation");
    LocalData {
        prime: v.clone(),
        direction,
        n,
        m: m as u32,
        center: P1Point::new(f, c1, c2).unwrap(),
    }
}

/// `z ≡ x (mod I)`, `z ≡ y (mod J)` for coprime principal `I, J`.
fn crt(f: Field, x: &QuadElem, i: &QfIdeal, y: &QuadElem, j: &QfIdeal) -> QuadElem {
    if i.is_unit() {
        return y.clone();
    }
    if j.is_unit() {
        return x.clone();
    }
    let (g, s, t) = f.xgcd(i.generator(), j.generator());
    let gi = f.unit_inverse(&g).expect("coprime moduli");
    let e_i = f.mul(&f.mul(&t, j.generator()), &gi);
    let e_j = f.mul(&f.mul(&s, i.generator()), &gi);
    let z = &f.mul(x, &e_i) + &f.mul(y, &e_j);
    let ij = i.mul(j);
    let r = ResidueRing::new(&ij);
    r.to_elem(r.reduce_elem(&z))
}

/// `λ ≡ (a₂/a₁)·π^{n_v}β_v (mod 𝔮_v^{m_v})` at every bad place.
fn congruence_target(f: Field, local: &[LocalData], a1: &QuadElem, a2: &QuadElem) -> QuadElem {
    let mut modulus = QfIdeal::unit(f);
    let mut lambda = QuadElem::one();
    for l in local {
        let v = &l.prime;
        let num = f.mul(a2, &l.center.x);
        let den = f.mul(a1, &l.center.y);
        let k = val(v, &num).unwrap();
        debug_assert_eq!(Some(k), val(v, &den));
        let (num, den) = (strip(f, v, num, k), strip(f, v, den, k));
        let lr = LocalRing::new(v, l.m);
        let lv = lr
            .ring
            .mul(lr.ring.reduce_elem(&num), lr.inv(lr.ring.reduce_elem(&den)));
        let vm = v.pow(l.m);
        lambda = crt(f, &lambda, &modulus, &lr.ring.to_elem(lv), &vm);
        modulus = modulus.mul(&vm);
    }
    lambda
}

/// Splits `⟨0, ∞; g⟩` at a point `x` so that both halves have conductor prime
/// to `M·p` and denominator with `p`-valuation at most `2(A_p − 1)` (zero
/// when `p > 5`). Both halves are re-verified before returning.
pub fn split(
    sym: &ModularSymbol,
    modulus: u64,
    p: u64,
    opts: &SplitOptions,
) -> Result<SplitResult> {
    let f = sym.field;
    if sym.alpha != P1Point::zero() || sym.beta != P1Point::infinity() {
        return Err(Error::Schema(
            "split expects a symbol with endpoints 0 and inf".into(),
        ));
    }
    if !arith::is_prime(p as u128) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if modulus == 0 {
        return Err(Error::Parse("modulus must be positive".into()));
    }
    let ap = a_p(p);
    let g = &sym.g;
    let det = matrix::det(f, g);

    let mut bad = Vec::new();
    let nd = f.norm(&det);
    let nd = nd
        .to_u128()
        .ok_or_else(|| Error::TooLarge(nd.to_string()))?;
    for (r, _) in arith::factor(nd) {
        for v in primes_above(f, r as u64) {
            if val(&v, &det).unwrap() > 0 {
                bad.push(v);
            }
        }
    }

    let mut local = Vec::new();
    let (mut g1, mut g2) = (QuadElem::one(), QuadElem::one());
    for v in &bad {
        let l = local_data(f, g, v);
        let pk = f.pow(v.generator(), l.n.unsigned_abs() as u32);
        if l.n > 0 {
            g1 = f.mul(&g1, &pk);
        } else {
            g2 = f.mul(&g2, &pk);
        }
        local.push(l);
    }
    let n0 = local
        .iter()
        .fold(QfIdeal::unit(f), |acc, l| acc.mul(&l.prime.pow(l.m)));
    let mut avoid: Vec<u64> = arith::factor(modulus as u128 * p as u128)
        .into_keys()
        .map(|r| r as u64)
        .collect();
    avoid.sort();
    let pa = p.pow(ap);
    let base = PrimeConstraints {
        congruence: None,
        norm_mod: Some((pa, vec![1 % pa])),
        avoid: avoid.clone(),
        avoid_ideals: bad.clone(),
        norm_bound: opts.norm_bound,
    };
    let start = n0
        .norm()
        .to_u64()
        .unwrap_or(u64::MAX / 64)
        .saturating_mul(64);
    let good = |q: &QfIdeal| {
        let n = q.norm_u64();
        !avoid.iter().any(|r| n.is_multiple_of(*r)) && !bad.contains(q) && n % pa != 1 % pa
    };
    let good_primes: Vec<QfIdeal> = primes_up_to(f, opts.small_bound)
        .into_iter()
        .filter(good)
        .take(opts.attempts)
        .collect();

    // 𝔞ᵢ′ is trivial when that already works; otherwise one extra good prime
    // on one side shifts the norm class of λ. Each side then carries at most
    // two good primes.
    let unit = QfIdeal::unit(f);
    let mut configs = vec![(unit.clone(), unit.clone())];
    for q in good_primes.iter().take(4) {
        configs.push((q.clone(), unit.clone()));
        configs.push((unit.clone(), q.clone()));
    }
    let mut examined = 0u64;
    let mut found = None;
    'outer: for (q1, q2) in &configs {
        let a1 = f.mul(&g1, q1.generator());
        let a2 = f.mul(&g2, q2.generator());
        let lambda = congruence_target(f, &local, &a1, &a2);
        for q in &good_primes {
            if q == q1 || q == q2 {
                continue;
            }
            examined += 1;
            let b2 = q.generator().clone();
            let mut c = base.clone();
            c.avoid_ideals
                .extend([q1, q2].into_iter().filter(|q| !q.is_unit()).cloned());
            let r = ResidueRing::new(&n0);
            let target = r.to_elem(r.reduce_elem(&f.mul(&lambda, &b2)));
            match find_prime_in_class(f, &target, &n0, &c, start, opts.budget) {
                Ok(b1) => {
                    found = Some((q1.clone(), q2.clone(), a1, a2, lambda, b1, b2));
                    break 'outer;
                }
                Err(Error::SearchExhausted { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    let (a1_prime, a2_prime, a1, a2, lambda, b1, b2) = found.ok_or(Error::SearchExhausted {
        norm_bound: opts.norm_bound,
        examined,
    })?;

    let x = P1Point::new(f, f.mul(&a1, &b1), f.mul(&a2, &b2))?;
    let left = ModularSymbol::new(f, P1Point::zero(), x.clone(), g.clone())?;
    let right = ModularSymbol::new(f, x.clone(), P1Point::infinity(), g.clone())?;
    let lc = conductor(&left, opts.margin)?;
    let rc = conductor(&right, opts.margin)?;
    let mp = modulus * p;
    for (name, c) in [("left", &lc), ("right", &rc)] {
        if !c.coprime_to(mp) {
            return Err(Error::Verification(format!(
                "{name} conductor {} meets {mp}",
                c.ideal.label()
            )));
        }
        let e = p_adic_valuation(&c.denominator, p);
        if e > denominator_bound(p) {
            return Err(Error::Verification(format!(
                "{name} denominator {} has {p}-valuation {e}",
                c.denominator
            )));
        }
    }
    Ok(SplitResult {
        x,
        left,
        right,
        a1,
        a2,
        b1,
        b2,
        a1_prime,
        a2_prime,
        n0,
        lambda,
        a_p: ap,
        local,
        left_conductor: lc,
        right_conductor: rc,
    })
}

/// `N(𝔣)` of a conductor as a rational integer.
pub fn conductor_norm(c: &ConductorData) -> BigInt {
    c.ideal.norm()
}
