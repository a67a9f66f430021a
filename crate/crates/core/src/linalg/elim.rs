//! Sparse row-elimination workspace shared by the Smith normal form and the
//! mod-ℓ rank routines.
//!
//! Rows are kept sorted by column. Column lists may hold stale row indices;
//! they are filtered on access. `col_count` is exact for live rows.

pub(crate) trait Ring {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `a - q * b`
    fn sub_mul(&self, a: &Self::Elem, q: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `-(q * b)`
    fn neg_mul(&self, q: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

pub(crate) struct Workspace<'a, R: Ring> {
    pub ring: &'a R,
    pub rows: Vec<Vec<(usize, R::Elem)>>,
    col_rows: Vec<Vec<usize>>,
    pub col_count: Vec<usize>,
    pub row_alive: Vec<bool>,
    pub col_alive: Vec<bool>,
    /// Bucket queue of columns by count; only maintained when `track` is set.
    /// Entries go stale when counts change and are checked on pop.
    buckets: Vec<Vec<usize>>,
    min_bucket: usize,
    parked: Vec<bool>,
    track: bool,
    /// Recycled row storage and scratch lists for `row_sub_mul`.
    spare: Vec<(usize, R::Elem)>,
    added: Vec<usize>,
    removed: Vec<usize>,
}

impl<'a, R: Ring> Workspace<'a, R> {
    pub fn new(ring: &'a R, ncols: usize, rows: Vec<Vec<(usize, R::Elem)>>, track: bool) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        let mut col_count = vec![0usize; ncols];
        let mut clean = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            row.retain(|(_, v)| !ring.is_zero(v));
            row.sort_by_key(|(c, _)| *c);
            for (c, _) in &row {
                col_rows[*c].push(i);
                col_count[*c] += 1;
            }
            clean.push(row);
        }
        let nrows = clean.len();
        let mut buckets = Vec::new();
        if track {
            for (c, &n) in col_count.iter().enumerate().rev() {
                if n > 0 {
                    if buckets.len() <= n {
                        buckets.resize_with(n + 1, Vec::new);
                    }
                    buckets[n].push(c);
                }
            }
        }
        Workspace {
            ring,
            rows: clean,
            col_rows,
            col_count,
            row_alive: vec![true; nrows],
            col_alive: vec![true; ncols],
            buckets,
            min_bucket: 0,
            parked: vec![false; ncols],
            track,
            spare: Vec::new(),
            added: Vec::new(),
            removed: Vec::new(),
        }
    }

    /// Live, unparked column of smallest count. The caller must kill or park it.
    pub fn next_col(&mut self) -> Option<usize> {
        while self.min_bucket < self.buckets.len() {
            let n = self.min_bucket;
            let Some(c) = self.buckets[n].pop() else {
                self.min_bucket += 1;
                continue;
            };
            if !self.col_alive[c] || self.parked[c] {
                continue;
            }
            let now = self.col_count[c];
            if now == n {
                return Some(c);
            }
            if now > n {
                self.push(now, c);
            }
        }
        None
    }

    fn push(&mut self, n: usize, c: usize) {
        if self.buckets.len() <= n {
            self.buckets.resize_with(n + 1, Vec::new);
        }
        self.buckets[n].push(c);
        self.min_bucket = self.min_bucket.min(n);
    }

    fn set_count(&mut self, c: usize, new: usize) {
        let old = self.col_count[c];
        if old == new {
            return;
        }
        // Increases are picked up lazily by `next_col`.
        if self.track && self.col_alive[c] && !self.parked[c] && new > 0 && (new < old || old == 0)
        {
            self.push(new, c);
        }
        self.col_count[c] = new;
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&R::Elem> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(k, _)| *k)
            .ok()
            .map(|i| &row[i].1)
    }

    /// Live rows with a nonzero entry in column `c`; also compacts the list.
    pub fn rows_in_col(&mut self, c: usize) -> Vec<usize> {
        let mut list = std::mem::take(&mut self.col_rows[c]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| self.row_alive[r] && self.entry(r, c).is_some());
        self.col_rows[c] = list.clone();
        list
    }

    /// `row[target] -= q * row[src]`
    pub fn row_sub_mul(&mut self, target: usize, src: usize, q: &R::Elem) {
        let ring = self.ring;
        let old = std::mem::take(&mut self.rows[target]);
        let srow = &self.rows[src];
        let mut merged = std::mem::take(&mut self.spare);
        merged.clear();
        merged.reserve(old.len() + srow.len());
        let mut added = std::mem::take(&mut self.added);
        let mut removed = std::mem::take(&mut self.removed);
        added.clear();
        removed.clear();
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < srow.len() {
            let ci = old.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = srow.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ci < cj {
                merged.push(old[i].clone());
                i += 1;
            } else if cj < ci {
                let v = ring.neg_mul(q, &srow[j].1);
                if !ring.is_zero(&v) {
                    merged.push((cj, v));
                    added.push(cj);
                }
                j += 1;
            } else {
                let v = ring.sub_mul(&old[i].1, q, &srow[j].1);
                if ring.is_zero(&v) {
                    removed.push(ci);
                } else {
                    merged.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[target] = merged;
        self.spare = old;
        for &c in &added {
            self.col_rows[c].push(target);
            let n = self.col_count[c] + 1;
            self.set_count(c, n);
        }
        for &c in &removed {
            let n = self.col_count[c] - 1;
            self.set_count(c, n);
        }
        self.added = added;
        self.removed = removed;
    }

    /// Replaces a single entry of a row (used for column operations that touch one row only).
    pub fn set_entry(&mut self, r: usize, c: usize, v: R::Elem) {
        let zero = self.ring.is_zero(&v);
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => {
                if zero {
                    row.remove(i);
                    let n = self.col_count[c] - 1;
                    self.set_count(c, n);
                } else {
                    row[i].1 = v;
                }
            }
            Err(i) => {
                if !zero {
                    row.insert(i, (c, v));
                    self.col_rows[c].push(r);
                    let n = self.col_count[c] + 1;
                    self.set_count(c, n);
                }
            }
        }
    }

    pub fn kill_row(&mut self, r: usize) {
        self.row_alive[r] = false;
        let row = std::mem::take(&mut self.rows[r]);
        for (c, _) in row {
            let n = self.col_count[c] - 1;
            self.set_count(c, n);
        }
    }

    pub fn kill_col(&mut self, c: usize) {
        self.col_alive[c] = false;
    }

    /// Removes a column from the queue for good; it stays alive.
    pub fn park(&mut self, c: usize) {
        self.parked[c] = true;
    }

    pub fn live_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(|&r| self.row_alive[r] && !self.rows[r].is_empty())
    }
}
