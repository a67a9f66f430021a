//! The projective line `P¹(𝒪/𝔫)` as a product of local lines.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::elem::{Field, QuadElem};
use super::ideal::QfIdeal;
use super::residue::{LocalRing, Res, ResidueRing};
use crate::error::{Error, Result};

pub use super::matrix::Mat2;

/// Point of `P¹(𝒪/𝔫)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLinePoint {
    pub index: usize,
    pub u: QuadElem,
    pub w: QuadElem,
}

struct Local {
    lr: LocalRing,
    /// Position of each residue of `𝔭` inside the list of `(1 : y)` points.
    in_prime_pos: Vec<usize>,
    prime_res: Vec<Res>,
    size: usize,
}

impl Local {
    fn new(prime: &QfIdeal, e: u32) -> Self {
        let lr = LocalRing::new(prime, e);
        let n = lr.ring.size();
        let mut in_prime_pos = vec![usize::MAX; n];
        let mut prime_res = Vec::new();
        for i in 0..n {
            let x = lr.ring.from_index(i);
            if lr.in_prime(x) {
                in_prime_pos[i] = prime_res.len();
                prime_res.push(x);
            }
        }
        let size = n + prime_res.len();
        Local {
            lr,
            in_prime_pos,
            prime_res,
            size,
        }
    }

    fn canonical_index(&self, u: Res, w: Res) -> Option<usize> {
        let r = &self.lr.ring;
        if self.lr.is_unit(w) {
            Some(r.index(r.mul(u, self.lr.inv(w))))
        } else if self.lr.is_unit(u) {
            let y = r.mul(w, self.lr.inv(u));
            Some(r.size() + self.in_prime_pos[r.index(y)])
        } else {
            None
        }
    }

    fn point(&self, i: usize) -> (Res, Res) {
        let r = &self.lr.ring;
        if i < r.size() {
            (r.from_index(i), r.one())
        } else {
            (r.one(), self.prime_res[i - r.size()])
        }
    }
}

/// `P¹(𝒪/𝔫)` with a right action of `GL₂(𝒪)` on row vectors.
pub struct ProjLine {
    level: QfIdeal,
    locals: Vec<Local>,
    /// CRT idempotents for each local factor, reduced mod 𝔫.
    idempotents: Vec<QuadElem>,
    size: usize,
}

impl ProjLine {
    pub fn new(level: &QfIdeal) -> Self {
        let field = level.field();
        let factors = level.factor();
        let mut locals = Vec::new();
        let mut idempotents = Vec::new();
        for (p, e) in &factors {
            let local = Local::new(p, *e);
            // e ≡ 1 mod 𝔭^e and e ≡ 0 mod 𝔫/𝔭^e.
            let pe = p.pow(*e);
            let cof = level.quotient(&pe).unwrap();
            let j = cof.generator().clone();
            let jr = local.lr.ring.reduce_elem(&j);
            let s = local.lr.ring.to_elem(local.lr.inv(jr));
            idempotents.push(field.mul(&j, &s));
            locals.push(local);
        }
        let size = locals.iter().map(|l| l.size).product();
        ProjLine {
            level: level.clone(),
            locals,
            idempotents,
            size,
        }
    }

    pub fn level(&self) -> &QfIdeal {
        &self.level
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn combine(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.locals)
            .fold(0, |acc, (&i, l)| acc * l.size + i)
    }

    fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.locals.len()];
        for k in (0..self.locals.len()).rev() {
            out[k] = idx % self.locals[k].size;
            idx /= self.locals[k].size;
        }
        out
    }

    /// Index of the point `(u : w)`, or `None` when the pair is not unimodular.
    pub fn index_of(&self, u: &QuadElem, w: &QuadElem) -> Option<usize> {
        let mut parts = Vec::with_capacity(self.locals.len());
        for l in &self.locals {
            let r = &l.lr.ring;
            parts.push(l.canonical_index(r.reduce_elem(u), r.reduce_elem(w))?);
        }
        Some(self.combine(&parts))
    }

    /// The point `(0 : 1)`, whose stabilizer is `Γ₀(𝔫)`.
    pub fn base_index(&self) -> usize {
        self.index_of(&QuadElem::zero(), &QuadElem::one()).unwrap()
    }

    pub fn point(&self, idx: usize) -> ProjLinePoint {
        let field = self.level.field();
        let parts = self.split(idx);
        let ring = ResidueRing::new(&self.level);
        let (mut u, mut w) = (QuadElem::zero(), QuadElem::zero());
        for ((l, &i), e) in self.locals.iter().zip(&parts).zip(&self.idempotents) {
            let (lu, lw) = l.point(i);
            u = &u + &field.mul(e, &l.lr.ring.to_elem(lu));
            w = &w + &field.mul(e, &l.lr.ring.to_elem(lw));
        }
        if self.locals.is_empty() {
            w = QuadElem::one();
        }
        let u = ring.to_elem(ring.reduce_elem(&u));
        let w = ring.to_elem(ring.reduce_elem(&w));
        ProjLinePoint { index: idx, u, w }
    }

    pub fn points(&self) -> Vec<ProjLinePoint> {
        (0..self.size).map(|i| self.point(i)).collect()
    }

    /// Permutation induced by `(u : w) ↦ (u·a + w·c : u·b + w·d)`.
    pub fn action(&self, m: &Mat2) -> Result<Vec<usize>> {
        let field = self.level.field();
        let det = super::matrix::det(field, m);
        let mut local_perms = Vec::with_capacity(self.locals.len());
        for l in &self.locals {
            let r = &l.lr.ring;
            if !l.lr.is_unit(r.reduce_elem(&det)) {
                return Err(Error::NonUnitDeterminant);
            }
            let [[a, b], [c, d]] = m.clone().map(|row| row.map(|x| r.reduce_elem(&x)));
            let perm: Vec<usize> = (0..l.size)
                .map(|i| {
                    let (u, w) = l.point(i);
                    let u2 = r.add(r.mul(u, a), r.mul(w, c));
                    let w2 = r.add(r.mul(u, b), r.mul(w, d));
                    l.canonical_index(u2, w2).unwrap()
                })
                .collect();
            local_perms.push(perm);
        }
        Ok((0..self.size)
            .map(|i| {
                let parts: Vec<usize> = self
                    .split(i)
                    .iter()
                    .zip(&local_perms)
                    .map(|(&j, p)| p[j])
                    .collect();
                self.combine(&parts)
            })
            .collect())
    }
}

/// `N(𝔫)·∏_{𝔭|𝔫}(1 + 1/N(𝔭))`.
pub fn proj_line_size(level: &QfIdeal) -> BigInt {
    let mut s = level.norm();
    for (p, _) in level.factor() {
        let q = p.norm();
        s = s / &q * (q + 1);
    }
    s
}

/// Orbit count of unimodular pairs under units of `𝒪/𝔫`, by brute force.
pub fn brute_force_size(level: &QfIdeal) -> usize {
    let ring = ResidueRing::new(level);
    let field: Field = level.field();
    let n = ring.size();
    let elems: Vec<Res> = (0..n).map(|i| ring.from_index(i)).collect();
    let unimodular = |u: Res, w: Res| {
        // (u, w) generates the unit ideal mod 𝔫.
        let g = field.gcd(
            &field.gcd(&ring.to_elem(u), &ring.to_elem(w)),
            level.generator(),
        );
        field.is_unit(&g)
    };
    let units: Vec<Res> = elems
        .iter()
        .copied()
        .filter(|&x| elems.iter().any(|&y| ring.mul(x, y) == ring.one()))
        .collect();
    let mut seen: HashMap<(Res, Res), ()> = HashMap::new();
    let mut orbits = 0;
    for &u in &elems {
        for &w in &elems {
            if seen.contains_key(&(u, w)) || !unimodular(u, w) {
                continue;
            }
            orbits += 1;
            for &t in &units {
                seen.insert((ring.mul(u, t), ring.mul(w, t)), ());
            }
        }
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(d: u32, x: &str) -> QfIdeal {
        QfIdeal::principal(Field::new(d).unwrap(), &QuadElem::parse(x).unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(ProjLine::new(&level(3, "1")).len(), 1);
        assert_eq!(ProjLine::new(&level(3, "5")).len(), 26);
        assert_eq!(ProjLine::new(&level(3, "7")).len(), 64);
        for (d, x) in [
            (1, "2"),
            (1, "3+w"),
            (3, "2"),
            (3, "6"),
            (2, "w"),
            (7, "4"),
            (11, "3"),
        ] {
            let l = level(d, x);
            let pl = ProjLine::new(&l);
            assert_eq!(BigInt::from(pl.len()), proj_line_size(&l));
            assert_eq!(pl.len(), brute_force_size(&l), "d={d} level {x}");
        }
    }

    #[test]
    fn points_round_trip() {
        let l = level(1, "6");
        let pl = ProjLine::new(&l);
        for p in pl.points() {
            assert_eq!(pl.index_of(&p.u, &p.w), Some(p.index));
        }
    }

    #[test]
    fn rejects_non_unit_determinant() {
        let pl = ProjLine::new(&level(3, "5"));
        let m = [
            [QuadElem::int(5), QuadElem::zero()],
            [QuadElem::zero(), QuadElem::one()],
        ];
        assert_eq!(pl.action(&m), Err(Error::NonUnitDeterminant));
    }
}
