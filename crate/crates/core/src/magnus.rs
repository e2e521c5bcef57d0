//! The Magnus expansion `x -> 1 + x` of free pro-p group elements into
//! truncated noncommutative power series over `F_p`.
//!
//! Series are stored densely per degree: the coefficients of the words of
//! length `k` form a block of `d^k` residues indexed in base-`d` counting
//! order. A memory guard bounds the total size.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::words::{Alphabet, Letter, Word};

/// Upper bound on the number of stored coefficients of one series.
pub const MAX_SERIES_ENTRIES: u128 = 1 << 23;

/// A free-group word as a list of `(generator, exponent)` syllables.
/// Adjacent syllables may repeat a generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    syllables: Vec<(Letter, i64)>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn generator(a: Letter) -> Self {
        GroupElement {
            syllables: vec![(a, 1)],
        }
    }

    pub fn from_syllables(syllables: Vec<(Letter, i64)>) -> Result<Self> {
        if syllables.iter().any(|&(_, e)| e == 0) {
            return Err(Error::ZeroExponent);
        }
        Ok(GroupElement { syllables })
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    /// True only for the empty syllable list.
    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn check_alphabet(&self, size: usize) -> Result<()> {
        match self.syllables.iter().find(|&&(a, _)| a >= size) {
            Some(&(letter, _)) => Err(Error::AlphabetMismatch { letter, size }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            syllables: self.syllables.iter().rev().map(|&(a, e)| (a, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Self {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        GroupElement { syllables }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut syllables = Vec::with_capacity(base.syllables.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            syllables.extend_from_slice(&base.syllables);
        }
        GroupElement { syllables }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &GroupElement, b: &GroupElement) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Free reduction: merges adjacent syllables on one generator and drops
    /// zero exponents until none remain.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<(Letter, i64)> = Vec::with_capacity(self.syllables.len());
        for &(a, e) in &self.syllables {
            match out.last_mut() {
                Some((b, f)) if *b == a => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((a, e)),
            }
        }
        GroupElement { syllables: out }
    }

    pub fn exponent_sum(&self, a: Letter) -> i64 {
        self.syllables.iter().filter(|s| s.0 == a).map(|s| s.1).sum()
    }

    /// Renders as `x1^-1*x2`, `1` for the empty element. The output parses
    /// back to the same syllables.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(a, e)| match e {
                1 => alphabet.name(a).to_string(),
                _ => format!("{}^{}", alphabet.name(a), e),
            })
            .collect();
        parts.join("*")
    }
}

/// A power series over `F_p` in `d` noncommuting variables, truncated at
/// word length `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: Prime,
    d: usize,
    cap: usize,
    blocks: Vec<Vec<FpScalar>>,
}

fn block_sizes(d: usize, cap: usize) -> Result<Vec<usize>> {
    let mut sizes = Vec::with_capacity(cap + 1);
    let mut total: u128 = 0;
    let mut size: u128 = 1;
    for _ in 0..=cap {
        total += size;
        if total > MAX_SERIES_ENTRIES {
            let needed = (0..=cap as u32).map(|k| (d as u128).saturating_pow(k)).fold(0u128, u128::saturating_add);
            return Err(Error::TooLarge {
                what: "truncated series",
                needed,
                bound: MAX_SERIES_ENTRIES,
            });
        }
        sizes.push(size as usize);
        size *= d as u128;
    }
    Ok(sizes)
}

impl TruncatedSeries {
    pub fn zero(p: Prime, d: usize, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let blocks = block_sizes(d, cap)?.into_iter().map(|n| vec![0; n]).collect();
        Ok(TruncatedSeries { p, d, cap, blocks })
    }

    pub fn one(p: Prime, d: usize, cap: usize) -> Result<Self> {
        let mut s = Self::zero(p, d, cap)?;
        s.blocks[0][0] = 1;
        Ok(s)
    }

    /// `1 + x_a`.
    pub fn generator(a: Letter, p: Prime, d: usize, cap: usize) -> Result<Self> {
        if a >= d {
            return Err(Error::AlphabetMismatch { letter: a, size: d });
        }
        let mut s = Self::one(p, d, cap)?;
        s.blocks[1][a] = 1;
        Ok(s)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn index(&self, w: &Word) -> usize {
        w.iter().fold(0, |acc, &a| acc * self.d + a)
    }

    /// `ε_w`; the empty word gives the constant term.
    pub fn coefficient(&self, w: &Word) -> Result<FpScalar> {
        if w.len() > self.cap {
            return Err(Error::BeyondCap {
                len: w.len(),
                cap: self.cap,
            });
        }
        w.check_alphabet(self.d)?;
        Ok(self.blocks[w.len()][self.index(w)])
    }

    pub fn set_coefficient(&mut self, w: &Word, c: i64) -> Result<()> {
        self.coefficient(w)?;
        let i = self.index(w);
        self.blocks[w.len()][i] = self.p.reduce(c);
        Ok(())
    }

    /// The coefficients of all words of length `n`, in counting order.
    pub fn degree_block(&self, n: usize) -> Option<&[FpScalar]> {
        self.blocks.get(n).map(Vec::as_slice)
    }

    /// Nonzero terms by length, then counting order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, FpScalar)> + '_ {
        let d = self.d;
        self.blocks.iter().enumerate().flat_map(move |(n, block)| {
            block.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(idx, &c)| {
                let mut letters = vec![0; n];
                let mut j = idx;
                for slot in letters.iter_mut().rev() {
                    *slot = j % d;
                    j /= d;
                }
                (Word::new(letters), c)
            })
        })
    }

    /// Least positive length carrying a nonzero coefficient.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        (1..=self.cap).find(|&n| self.blocks[n].iter().any(|&c| c != 0))
    }

    pub fn is_one(&self) -> bool {
        self.blocks[0][0] == 1 % self.p.get() && self.lowest_positive_degree().is_none()
    }

    /// Drops all words longer than `cap`.
    pub fn truncate(&self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        let mut s = self.clone();
        s.blocks.truncate(cap.min(self.cap) + 1);
        s.cap = cap.min(self.cap);
        Ok(s)
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.p != other.p || self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "series over F_{} in {} variables vs F_{} in {}",
                self.p, self.d, other.p, other.d
            )));
        }
        Ok(())
    }

    /// Product, truncated at the smaller of the two caps.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let p = self.p.get() as u64;
        let mut out = Self::zero(self.p, self.d, cap)?;
        let sizes: Vec<usize> = out.blocks.iter().map(Vec::len).collect();
        for n in 0..=cap {
            let target = &mut out.blocks[n];
            for k in 0..=n {
                let (left, right) = (&self.blocks[k], &other.blocks[n - k]);
                let stride = sizes[n - k];
                for (i, &a) in left.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let row = &mut target[i * stride..(i + 1) * stride];
                    for (t, &b) in row.iter_mut().zip(right) {
                        if b != 0 {
                            *t = ((*t as u64 + a as u64 * b as u64) % p) as u32;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.blocks[0][0] != 1 % self.p.get() {
            return Err(Error::InvalidInput("only series with constant term 1 are inverted".into()));
        }
        let p = self.p.get() as u64;
        let mut out = Self::one(self.p, self.d, self.cap)?;
        for n in 1..=self.cap {
            // b_n = -sum_{k>=1} a_k b_{n-k}
            let mut acc = vec![0u64; self.blocks[n].len()];
            for k in 1..=n {
                let stride = out.blocks[n - k].len();
                for (i, &a) in self.blocks[k].iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (t, &b) in acc[i * stride..(i + 1) * stride].iter_mut().zip(&out.blocks[n - k]) {
                        *t = (*t + a as u64 * b as u64) % p;
                    }
                }
            }
            out.blocks[n] = acc.into_iter().map(|v| self.p.neg(v as u32)).collect();
        }
        Ok(out)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.p, self.d, self.cap)?;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Right multiplication by `sum_k c_k x_a^k`.
    fn mul_letter_power(&mut self, a: Letter, c: &[FpScalar]) {
        let p = self.p.get() as u64;
        let d = self.d;
        for n in (1..=self.cap).rev() {
            let (lower, upper) = self.blocks.split_at_mut(n);
            for (idx, t) in upper[0].iter_mut().enumerate() {
                let mut acc = *t as u64 * c[0] as u64;
                let mut j = idx;
                for k in 1..=n {
                    if j % d != a {
                        break;
                    }
                    j /= d;
                    acc += lower[n - k][j] as u64 * c[k] as u64 % p;
                }
                *t = (acc % p) as u32;
            }
        }
        self.blocks[0][0] = self.p.mul(self.blocks[0][0], c[0]);
    }

    /// Renders as `1 + x1x2 - x2x1`, coefficients as symmetric residues.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (w, c) in self.terms() {
            let s = self.p.signed(c);
            let word = if w.is_empty() { String::new() } else { alphabet.format_word(&w) };
            let body = match (s.abs(), word.is_empty()) {
                (1, false) => word,
                (m, true) => m.to_string(),
                (m, false) => format!("{m}*{word}"),
            };
            if out.is_empty() {
                if s < 0 {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if s < 0 { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Coefficients `c_0..=c_cap` of `(1 + x)^e` in one variable, by univariate
/// inversion and binary powering.
fn univariate_power(e: i64, p: Prime, cap: usize) -> Vec<FpScalar> {
    let mul = |a: &[FpScalar], b: &[FpScalar]| {
        let mut c = vec![0; cap + 1];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b[..=cap - i].iter().enumerate() {
                c[i + j] = p.add(c[i + j], p.mul(x, y));
            }
        }
        c
    };
    let mut base = vec![0; cap + 1];
    base[0] = 1 % p.get();
    if e >= 0 {
        base[1] = 1;
    } else {
        for (k, b) in base.iter_mut().enumerate() {
            *b = if k % 2 == 0 { 1 % p.get() } else { p.neg(1) };
        }
    }
    let mut acc = vec![0; cap + 1];
    acc[0] = 1 % p.get();
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// `Λ(g)` truncated at words of length `cap`, over an alphabet of `d` letters.
pub fn expand(g: &GroupElement, d: usize, p: Prime, cap: usize) -> Result<TruncatedSeries> {
    g.check_alphabet(d)?;
    if g.syllables.iter().any(|&(_, e)| e == 0) {
        return Err(Error::ZeroExponent);
    }
    let mut s = TruncatedSeries::one(p, d, cap)?;
    for &(a, e) in &g.syllables {
        s.mul_letter_power(a, &univariate_power(e, p, cap));
    }
    Ok(s)
}

/// `ε_w(g)`, expanding only as far as `|w|`.
pub fn coefficient(g: &GroupElement, w: &Word, d: usize, p: Prime) -> Result<FpScalar> {
    w.check_alphabet(d)?;
    if w.is_empty() {
        return Ok(1 % p.get());
    }
    expand(g, d, p, w.len())?.coefficient(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZassenhausDegree {
    /// Least length of a word with nonzero coefficient.
    Degree(usize),
    /// No nonzero coefficient of length `1..=cap`, yet the element does not
    /// freely reduce to the identity.
    BeyondCap,
    /// The element freely reduces to the empty word.
    Identity,
}

impl fmt::Display for ZassenhausDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZassenhausDegree::Degree(n) => write!(f, "Degree({n})"),
            ZassenhausDegree::BeyondCap => write!(f, "BeyondCap"),
            ZassenhausDegree::Identity => write!(f, "Identity"),
        }
    }
}

pub fn zassenhaus_degree(g: &GroupElement, d: usize, p: Prime, cap: usize) -> Result<ZassenhausDegree> {
    if g.freely_reduced().is_empty() {
        g.check_alphabet(d)?;
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        return Ok(ZassenhausDegree::Identity);
    }
    let s = expand(g, d, p, cap)?;
    Ok(match s.lowest_positive_degree() {
        Some(n) => ZassenhausDegree::Degree(n),
        None => ZassenhausDegree::BeyondCap,
    })
}

/// An upper unitriangular matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitriangularMatrix {
    p: Prime,
    entries: Vec<Vec<FpScalar>>,
}

impl UnitriangularMatrix {
    pub fn identity(p: Prime, size: usize) -> Self {
        let mut entries = vec![vec![0; size]; size];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1 % p.get();
        }
        UnitriangularMatrix { p, entries }
    }

    /// `ρ_w` read off a series: entry `(i, j)` is the coefficient of the
    /// factor `w[i..j]`.
    pub fn from_series(s: &TruncatedSeries, w: &Word) -> Result<Self> {
        if w.len() > s.cap() {
            return Err(Error::BeyondCap {
                len: w.len(),
                cap: s.cap(),
            });
        }
        let mut m = Self::identity(s.prime(), w.len() + 1);
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                m.entries[i][j] = s.coefficient(&w.factor(i, j))?;
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<FpScalar>] {
        &self.entries
    }

    pub fn mul(&self, other: &UnitriangularMatrix) -> Result<Self> {
        if self.size() != other.size() || self.p != other.p {
            return Err(Error::DimensionMismatch("unitriangular product".into()));
        }
        let n = self.size();
        let mut out = Self::identity(self.p, n);
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = 0;
                for k in i..=j {
                    acc = self.p.add(acc, self.p.mul(self.entries[i][k], other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }
}

pub fn rho(g: &GroupElement, w: &Word, d: usize, p: Prime, cap: usize) -> Result<UnitriangularMatrix> {
    if w.len() > cap {
        return Err(Error::BeyondCap { len: w.len(), cap });
    }
    w.check_alphabet(d)?;
    let s = expand(g, d, p, cap.max(1))?;
    UnitriangularMatrix::from_series(&s, w)
}
