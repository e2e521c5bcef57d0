//! Combinatorics on words over a finite weighted alphabet.

mod freeness;
mod lyndon;
mod order;
mod shuffle;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};

pub use freeness::{is_combinatorially_free, Freeness, ViolationKind};
pub use lyndon::{is_lyndon, lyndon_reduce, lyndon_words};
pub use order::{compare, sigma_sharp, sigma_star, tau_degree, LetterOrder, OrderSpec};
pub use shuffle::{infiltration, shuffle};

/// Index of a letter in its alphabet's listing order.
pub type Letter = usize;

/// A finite alphabet with a positive weight per letter. The listing order
/// is the default total order on letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if names.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} letters but {} weights",
                names.len(),
                weights.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
            if weights[i] == 0 {
                return Err(Error::InvalidWeight(name.clone()));
            }
        }
        Ok(Alphabet { names, weights })
    }

    /// All weights equal to 1.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let weights = vec![1; names.len()];
        Self::new(names, weights)
    }

    /// The alphabet `x1, ..., xd` with unit weights.
    pub fn indexed(d: usize) -> Result<Self> {
        Self::uniform((1..=d).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, letter: Letter) -> u32 {
        self.weights[letter]
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.check_alphabet(self.len())
    }

    pub fn tau_degree(&self, w: &Word) -> u64 {
        w.iter().map(|&a| self.weights[a] as u64).sum()
    }

    /// All `d^n` words of length `n`, lexicographic in the listing order.
    pub fn words_of_length(&self, n: usize) -> WordsOfLength {
        WordsOfLength::new(self.len(), n)
    }

    /// Renders a word by juxtaposing letter names, `1` for the empty word.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&a| self.names[a].as_str()).collect()
    }
}

/// Iterator over the words of a fixed length in base-`d` counting order.
#[derive(Clone, Debug)]
pub struct WordsOfLength {
    d: usize,
    next: Option<Vec<Letter>>,
}

impl WordsOfLength {
    pub fn new(d: usize, n: usize) -> Self {
        let next = if d == 0 && n > 0 { None } else { Some(vec![0; n]) };
        WordsOfLength { d, next }
    }
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] + 1 < self.d {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Word(cur))
    }
}

/// A word in the free monoid: a sequence of letter indices.
///
/// The derived `Ord` is the index-lexicographic order and only serves as a
/// canonical key; semantic comparisons go through [`OrderSpec`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The factor `a_{i+1} ... a_j` (0-based half-open range `i..j`).
    pub fn factor(&self, i: usize, j: usize) -> Word {
        Word(self.0[i..j].to_vec())
    }

    /// `self` is a middle factor of `other`: `other = u self v`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other.0.windows(self.len()).any(|win| win == self.0.as_slice())
    }

    pub fn check_alphabet(&self, size: usize) -> Result<()> {
        match self.0.iter().find(|&&a| a >= size) {
            Some(&letter) => Err(Error::AlphabetMismatch { letter, size }),
            None => Ok(()),
        }
    }

    /// Number of letters drawn from `set`.
    pub fn count_in(&self, set: &[Letter]) -> usize {
        self.0.iter().filter(|a| set.contains(a)).count()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    /// Letters as 1-based `x` indices, e.g. `(x1x2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for a in &self.0 {
            write!(f, "x{}", a + 1)?;
        }
        write!(f, ")")
    }
}

/// An integer combination of words of one common length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    degree: Option<usize>,
    terms: BTreeMap<Word, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn word(w: Word) -> Self {
        FormalSum {
            degree: Some(w.len()),
            terms: BTreeMap::from([(w, 1)]),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Result<Self> {
        let mut s = FormalSum::zero();
        for (w, c) in terms {
            s.add_term(w, c)?;
        }
        Ok(s)
    }

    pub fn add_term(&mut self, w: Word, c: i64) -> Result<()> {
        match self.degree {
            Some(n) if n != w.len() => return Err(Error::Inhomogeneous(n, w.len())),
            _ => self.degree = Some(w.len()),
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
        Ok(())
    }

    /// Common word length; `None` only for a sum that never held a term.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Sum of all coefficients.
    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn reduce_mod(&self, p: Prime) -> BTreeMap<Word, FpScalar> {
        self.terms
            .iter()
            .map(|(w, &c)| (w.clone(), p.reduce(c)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }
}
