//! Machine-word arithmetic in `𝒪/I`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::elem::QuadElem;
use super::ideal::QfIdeal;

/// Residues `x + y·ω` with `0 ≤ x < a`, `0 ≤ y < c` for `I = ℤa + ℤ(b + cω)`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    w0: i128,
    w1: i128,
    a: i128,
    b: i128,
    c: i128,
}

pub type Res = (i64, i64);

impl ResidueRing {
    pub fn new(ideal: &QfIdeal) -> Self {
        let (w0, w1) = ideal.field().omega_sq();
        let (a, b, c) = ideal.hnf();
        let conv = |v: &BigInt| {
            v.to_i64()
                .expect("modulus too large for residue arithmetic") as i128
        };
        ResidueRing {
            w0: w0 as i128,
            w1: w1 as i128,
            a: conv(a),
            b: conv(b),
            c: conv(c),
        }
    }

    pub fn size(&self) -> usize {
        (self.a * self.c) as usize
    }

    pub fn reduce(&self, x: i128, y: i128) -> Res {
        let y2 = y.rem_euclid(self.c);
        let k = (y - y2) / self.c;
        let x2 = (x - k * self.b).rem_euclid(self.a);
        (x2 as i64, y2 as i64)
    }

    pub fn reduce_elem(&self, e: &QuadElem) -> Res {
        let m = BigInt::from(self.a * self.c);
        let x = e.a.mod_floor(&m).to_i128().unwrap();
        let y = e.b.mod_floor(&m).to_i128().unwrap();
        self.reduce(x, y)
    }

    pub fn index(&self, r: Res) -> usize {
        (r.1 as i128 * self.a + r.0 as i128) as usize
    }

    pub fn from_index(&self, i: usize) -> Res {
        let i = i as i128;
        ((i % self.a) as i64, (i / self.a) as i64)
    }

    pub fn add(&self, x: Res, y: Res) -> Res {
        self.reduce(x.0 as i128 + y.0 as i128, x.1 as i128 + y.1 as i128)
    }

    pub fn sub(&self, x: Res, y: Res) -> Res {
        self.reduce(x.0 as i128 - y.0 as i128, x.1 as i128 - y.1 as i128)
    }

    pub fn mul(&self, x: Res, y: Res) -> Res {
        let (x0, x1, y0, y1) = (x.0 as i128, x.1 as i128, y.0 as i128, y.1 as i128);
        let bb = x1 * y1;
        self.reduce(x0 * y0 + bb * self.w0, x0 * y1 + x1 * y0 + bb * self.w1)
    }

    pub fn pow(&self, x: Res, mut e: u64) -> Res {
        let mut r = self.reduce(1, 0);
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(&self, x: Res) -> bool {
        x == (0, 0)
    }

    pub fn one(&self) -> Res {
        self.reduce(1, 0)
    }

    pub fn to_elem(&self, x: Res) -> QuadElem {
        QuadElem::new(x.0, x.1)
    }
}

/// `𝒪/𝔭^e` together with the prime, for unit tests and inverses.
#[derive(Clone, Debug)]
pub struct LocalRing {
    pub ring: ResidueRing,
    prime: ResidueRing,
    unit_order: u64,
}

impl LocalRing {
    pub fn new(prime: &QfIdeal, e: u32) -> Self {
        let q = prime.norm_u64();
        LocalRing {
            ring: ResidueRing::new(&prime.pow(e)),
            prime: ResidueRing::new(prime),
            unit_order: q.pow(e - 1) * (q - 1),
        }
    }

    pub fn in_prime(&self, x: Res) -> bool {
        self.prime.reduce(x.0 as i128, x.1 as i128) == (0, 0)
    }

    pub fn is_unit(&self, x: Res) -> bool {
        !self.in_prime(x)
    }

    pub fn inv(&self, x: Res) -> Res {
        debug_assert!(self.is_unit(x));
        self.ring.pow(x, self.unit_order - 1)
    }
}
