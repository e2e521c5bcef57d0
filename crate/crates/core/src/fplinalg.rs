//! Exact linear algebra over prime fields.
//!
//! [`row_reduce`] brings a matrix to row echelon form using only the three
//! elementary row operations and records every step in an [`OpLog`]. The log
//! is later mirrored onto relators (swap, power, multiply by a power of
//! another relator), so the pivot rule is deterministic and every scale
//! factor lies in `[1, p)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<FpScalar>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, p.reduce(v));
            }
        }
        Ok(m)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FpScalar) {
        debug_assert!(v < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FpScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FpScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&v| v == 0)
    }

    /// Column of the first nonzero entry of row `i`.
    pub fn leading_column(&self, i: usize) -> Option<usize> {
        self.row(i).iter().position(|&v| v != 0)
    }

    /// Row echelon form: leading columns strictly increase and zero rows
    /// sit at the bottom.
    pub fn is_row_echelon(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            match self.leading_column(i) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last.is_some_and(|l| c <= l) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }

    pub fn apply(&mut self, op: &RowOp) -> Result<()> {
        op.validate(self.rows, self.p)?;
        let p = self.p;
        match *op {
            RowOp::Swap(s, t) => {
                if s != t {
                    for j in 0..self.cols {
                        self.data.swap(s * self.cols + j, t * self.cols + j);
                    }
                }
            }
            RowOp::Scale(s, k) => {
                for j in 0..self.cols {
                    let v = self.get(s, j);
                    self.set(s, j, p.mul(v, k));
                }
            }
            RowOp::AddMultiple(s, t, k) => {
                for j in 0..self.cols {
                    let v = p.add(self.get(s, j), p.mul(k, self.get(t, j)));
                    self.set(s, j, v);
                }
            }
        }
        Ok(())
    }

    pub fn apply_log(&mut self, log: &OpLog) -> Result<()> {
        log.iter().try_for_each(|op| self.apply(op))
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = p.add(out.get(i, j), p.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An elementary row operation, with 0-based row indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOp {
    /// Exchange rows `s` and `t`.
    Swap(usize, usize),
    /// Multiply row `s` by `k`, `1 <= k < p`.
    Scale(usize, FpScalar),
    /// Add `k` times row `t` to row `s`, `s != t`, `1 <= k < p`.
    AddMultiple(usize, usize, FpScalar),
}

impl RowOp {
    pub fn validate(&self, rows: usize, p: Prime) -> Result<()> {
        let in_range = |i: usize| {
            if i < rows {
                Ok(())
            } else {
                Err(Error::InvalidOperation(format!("row {i} out of range for {rows} rows")))
            }
        };
        let factor = |k: FpScalar| {
            if k >= 1 && k < p.get() {
                Ok(())
            } else {
                Err(Error::InvalidOperation(format!("factor {k} not in [1, {p})")))
            }
        };
        match *self {
            RowOp::Swap(s, t) => {
                in_range(s)?;
                in_range(t)
            }
            RowOp::Scale(s, k) => {
                in_range(s)?;
                factor(k)
            }
            RowOp::AddMultiple(s, t, k) => {
                in_range(s)?;
                in_range(t)?;
                if s == t {
                    return Err(Error::InvalidOperation(format!(
                        "AddMultiple needs distinct rows, got {s} twice"
                    )));
                }
                factor(k)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpLog(Vec<RowOp>);

impl OpLog {
    pub fn new() -> Self {
        OpLog(Vec::new())
    }

    pub fn push(&mut self, op: RowOp) {
        self.0.push(op);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RowOp> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ops(&self) -> &[RowOp] {
        &self.0
    }
}

impl From<Vec<RowOp>> for OpLog {
    fn from(ops: Vec<RowOp>) -> Self {
        OpLog(ops)
    }
}

impl<'a> IntoIterator for &'a OpLog {
    type Item = &'a RowOp;
    type IntoIter = std::slice::Iter<'a, RowOp>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub echelon: FpMatrix,
    pub log: OpLog,
    pub rank: usize,
    /// Leading column of each nonzero echelon row.
    pub pivot_columns: Vec<usize>,
}

/// Gaussian elimination to row echelon form with unit pivots.
///
/// Columns are scanned left to right; the pivot of a column is the first
/// nonzero entry at or below the current pivot row. Entries above pivots are
/// left alone.
pub fn row_reduce(m: &FpMatrix) -> RowReduction {
    let p = m.p;
    let mut e = m.clone();
    let mut log = OpLog::new();
    let mut pivot_columns = Vec::new();
    let mut r = 0;
    for c in 0..e.cols {
        if r == e.rows {
            break;
        }
        let Some(pr) = (r..e.rows).find(|&i| e.get(i, c) != 0) else {
            continue;
        };
        let mut push = |e: &mut FpMatrix, op: RowOp| {
            e.apply(&op).expect("generated row operation is valid");
            log.push(op);
        };
        if pr != r {
            push(&mut e, RowOp::Swap(r, pr));
        }
        let lead = e.get(r, c);
        if lead != 1 {
            push(&mut e, RowOp::Scale(r, p.inv(lead)));
        }
        for i in r + 1..e.rows {
            let v = e.get(i, c);
            if v != 0 {
                push(&mut e, RowOp::AddMultiple(i, r, p.neg(v)));
            }
        }
        pivot_columns.push(c);
        r += 1;
    }
    RowReduction {
        echelon: e,
        log,
        rank: r,
        pivot_columns,
    }
}

/// Determinant, read off the reduction log: the echelon form of a square
/// matrix is upper triangular, each swap flips the sign and each scale
/// multiplies the determinant by its factor.
pub fn determinant(m: &FpMatrix) -> Result<FpScalar> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let p = m.p;
    let red = row_reduce(m);
    let mut diag = 1;
    for i in 0..m.rows {
        diag = p.mul(diag, red.echelon.get(i, i));
    }
    if diag == 0 {
        return Ok(0);
    }
    let mut factor = 1;
    for op in &red.log {
        match *op {
            RowOp::Swap(s, t) if s != t => factor = p.neg(factor),
            RowOp::Scale(_, k) => factor = p.mul(factor, k),
            _ => {}
        }
    }
    Ok(p.mul(diag, p.inv(factor)))
}

/// Basis of the right nullspace `{x : M x = 0}`.
pub fn nullspace(m: &FpMatrix) -> Vec<Vec<FpScalar>> {
    let p = m.p;
    let red = row_reduce(m);
    let mut e = red.echelon;
    // Back substitution to reduced form so free variables can be read off.
    for (r, &c) in red.pivot_columns.iter().enumerate().rev() {
        for i in 0..r {
            let v = e.get(i, c);
            if v != 0 {
                e.apply(&RowOp::AddMultiple(i, r, p.neg(v))).expect("valid op");
            }
        }
    }
    let pivots: HashMap<usize, usize> = red.pivot_columns.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains_key(c)) {
        let mut x = vec![0; m.cols];
        x[free] = 1;
        for (&c, &r) in &pivots {
            x[c] = p.neg(e.get(r, free));
        }
        basis.push(x);
    }
    basis
}

/// Basis of the left nullspace `{y : y^T M = 0}`, i.e. the row combinations
/// that vanish.
pub fn left_nullspace(m: &FpMatrix) -> Vec<Vec<FpScalar>> {
    let p = m.p;
    let red = row_reduce(m);
    let mut tracker = FpMatrix::identity(p, m.rows);
    tracker.apply_log(&red.log).expect("log replays on identity");
    (red.rank..m.rows).map(|i| tracker.row(i).to_vec()).collect()
}

/// A sparse vector over `F_p`: strictly increasing columns, nonzero values.
pub type SparseVec = Vec<(usize, FpScalar)>;

/// Incrementally built echelon basis of sparse vectors.
///
/// Each stored row is normalized so its leading entry is 1. Columns are
/// compared as plain indices, so callers control the elimination order by
/// choosing the column numbering.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    p: Prime,
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(p: Prime) -> Self {
        SparseEchelon {
            p,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let p = self.p;
        loop {
            let Some(&(c, a)) = v.first() else {
                return false;
            };
            match self.rows.get(&c) {
                Some(row) => v = axpy(p, &v, p.neg(a), row),
                None => {
                    let inv = p.inv(a);
                    for e in v.iter_mut() {
                        e.1 = p.mul(e.1, inv);
                    }
                    self.rows.insert(c, v);
                    return true;
                }
            }
        }
    }

    /// Eliminates every pivot column from `v`. The result is the canonical
    /// representative of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let p = self.p;
        let mut v = v.clone();
        let mut from = 0;
        loop {
            let hit = v
                .iter()
                .filter(|&&(c, _)| c >= from)
                .find(|(c, _)| self.rows.contains_key(c))
                .copied();
            let Some((c, a)) = hit else {
                return v;
            };
            v = axpy(p, &v, p.neg(a), &self.rows[&c]);
            from = c + 1;
        }
    }
}

/// `x + k*y` for sparse vectors.
fn axpy(p: Prime, x: &SparseVec, k: FpScalar, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = p.mul(k, y[j].1);
            if v != 0 {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = p.add(x[i].1, p.mul(k, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
