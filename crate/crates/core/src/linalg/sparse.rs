//! Sparse exact matrices and the coordinate-list exchange format.
//!
//! The text format is a header line `rows cols nnz` followed by `nnz` lines
//! `r c v` with 1-based indices; `v` is an integer or a fraction `p/q`.
//! Lines starting with `%` or `#` are comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact sparse matrix over the rationals; integral matrices are the common case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseZMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseZMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigRational::one());
        }
        m
    }

    /// Builds a matrix from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigRational>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v.into())?;
        }
        Ok(m)
    }

    pub fn from_dense_i64(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense input");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries
                        .insert((i, j), BigRational::from_integer(BigInt::from(v)));
                }
            }
        }
        m
    }

    pub fn from_dense_rational(rows: &[Vec<BigRational>], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: BigRational) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Shape(format!(
                "index ({r}, {c}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        if v.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((r, c)).or_insert_with(BigRational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    pub fn transpose(&self) -> Self {
        SparseZMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Integer rows as sorted `(col, value)` lists; fails on a fractional entry.
    pub fn integer_rows(&self) -> Result<Vec<Vec<(usize, BigInt)>>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !v.is_integer() {
                return Err(Error::NonIntegral { row: r, col: c });
            }
            out[r].push((c, v.to_integer()));
        }
        Ok(out)
    }

    /// Rows scaled by their denominators' lcm so that every row is integral.
    /// The row space over the rationals is unchanged.
    pub fn row_scaled_integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut dens = vec![BigInt::one(); self.rows];
        for (&(r, _), v) in &self.entries {
            dens[r] = num_integer::Integer::lcm(&dens[r], v.denom());
        }
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            let scaled = v * BigRational::from_integer(dens[r].clone());
            out[r].push((c, scaled.to_integer()));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut d = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &SparseZMatrix) -> Result<SparseZMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = SparseZMatrix::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.add_to(r, c, a * b)?;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Serializes to the coordinate-list text format.
    pub fn to_coo_string(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{} {} {}", r + 1, c + 1, v);
        }
        s
    }

    pub fn parse_coo(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header token '{t}'")))
            })
            .collect::<Result<_>>()?;
        if dims.len() != 3 {
            return Err(Error::Parse("header must be 'rows cols nnz'".into()));
        }
        let (rows, cols, nnz) = (dims[0], dims[1], dims[2]);
        let mut m = Self::zeros(rows, cols);
        let mut seen = 0usize;
        for (lineno, line) in lines.enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse(format!(
                    "entry line {}: expected 'r c v'",
                    lineno + 2
                )));
            }
            let r: usize = toks[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad row '{}'", toks[0])))?;
            let c: usize = toks[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad col '{}'", toks[1])))?;
            if r == 0 || c == 0 {
                return Err(Error::Parse("indices are 1-based".into()));
            }
            let v = parse_rational(toks[2])?;
            if m.entries.contains_key(&(r - 1, c - 1)) {
                return Err(Error::Parse(format!("duplicate entry ({r}, {c})")));
            }
            m.add_to(r - 1, c - 1, v)?;
            seen += 1;
        }
        if seen != nnz {
            return Err(Error::Parse(format!(
                "header announces {nnz} entries, found {seen}"
            )));
        }
        Ok(m)
    }
}

pub fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number '{tok}'"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            tok.trim().parse().map_err(|_| bad())?,
        )),
    }
}
