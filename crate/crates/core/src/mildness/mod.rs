//! Mildness criteria.
//!
//! A cohomology class `α_w` is never built explicitly. It is represented by
//! its pairing vector `(ε_w(r_1), ..., ε_w(r_m))` against the relators, and
//! `α_w != 0` means that some coordinate is nonzero.

mod criterion;
mod oracle;
mod special;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::fplinalg::{FpMatrix, OpLog, RowOp};
use crate::magnus::{GroupElement, TruncatedSeries};
use crate::presentation::{compatible_with, Presentation};
use crate::words::{Alphabet, OrderSpec, Word};

pub use criterion::{
    anick_check, check_main_criterion, AnickVerdict, CriterionFailure, MainVerdict, MildnessCertificate,
};
pub use oracle::{gs_series, graded_dims, strong_freeness_oracle, OracleReport, OracleVerdict, MAX_GRADED_WORDS};
pub use special::{
    koch_circuit_check, partition_criterion, raag_bipartite_check, two_coloring, CircuitVerdict, PartitionFailure,
    PartitionVerdict, RaagVerdict,
};

/// `(ε_w(r_j))_j` for a compatible word `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyVector {
    pub word: Word,
    pub coords: Vec<FpScalar>,
}

impl CohomologyVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Relator expansions at one cap, shared by the vector computations.
pub(crate) struct Expanded<'a> {
    pres: &'a Presentation,
    series: Vec<TruncatedSeries>,
}

impl<'a> Expanded<'a> {
    pub(crate) fn new(pres: &'a Presentation, cap: usize) -> Result<Self> {
        Ok(Expanded {
            pres,
            series: pres.expansions(cap.max(1))?,
        })
    }

    fn require_compatible(&self, w: &Word) -> Result<()> {
        self.pres.alphabet().check_word(w)?;
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if w.len() > self.series[0].cap() {
            return Err(Error::BeyondCap {
                len: w.len(),
                cap: self.series[0].cap(),
            });
        }
        if !compatible_with(&self.series, w)? {
            return Err(Error::Incompatible(self.pres.alphabet().format_word(w)));
        }
        Ok(())
    }

    pub(crate) fn vector(&self, w: &Word) -> Result<CohomologyVector> {
        self.require_compatible(w)?;
        Ok(CohomologyVector {
            word: w.clone(),
            coords: self
                .series
                .iter()
                .map(|s| s.coefficient(w))
                .collect::<Result<_>>()?,
        })
    }
}

pub fn massey_vector(pres: &Presentation, w: &Word) -> Result<CohomologyVector> {
    Expanded::new(pres, w.len())?.vector(w)
}

/// A `τ`-homogeneous noncommutative polynomial over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    p: Prime,
    degree: u64,
    terms: BTreeMap<Word, FpScalar>,
}

impl HomogeneousPoly {
    /// Sums the terms mod `p`; every word must have `τ`-degree `degree`.
    pub fn new(p: Prime, tau: &[u32], degree: u64, terms: impl IntoIterator<Item = (Word, i64)>) -> Result<Self> {
        let mut acc: BTreeMap<Word, FpScalar> = BTreeMap::new();
        for (w, c) in terms {
            let deg = crate::words::tau_degree(tau, &w)?;
            if deg != degree {
                return Err(Error::Inhomogeneous(degree as usize, deg as usize));
            }
            let e = acc.entry(w).or_insert(0);
            *e = p.add(*e, p.reduce(c));
        }
        acc.retain(|_, c| *c != 0);
        Ok(HomogeneousPoly { p, degree, terms: acc })
    }

    /// Degree taken from the first term; fails on an empty term list.
    pub fn from_terms(p: Prime, tau: &[u32], terms: Vec<(Word, i64)>) -> Result<Self> {
        let first = terms.first().ok_or(Error::ZeroPolynomial)?;
        let degree = crate::words::tau_degree(tau, &first.0)?;
        Self::new(p, tau, degree, terms)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> FpScalar {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, FpScalar)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Largest support word under `order`.
    pub fn leading_word(&self, order: &OrderSpec) -> Option<&Word> {
        order.max(self.terms.keys())
    }

    /// Renders as `x1x2 - x2x1`, terms in descending `order`.
    pub fn format(&self, alphabet: &Alphabet, order: &OrderSpec) -> String {
        let mut words: Vec<Word> = self.terms.keys().cloned().collect();
        if order.sort_descending(&mut words).is_err() {
            words.reverse();
        }
        let mut out = String::new();
        for w in &words {
            let s = self.p.signed(self.terms[w]);
            let name = alphabet.format_word(w);
            let body = if s.abs() == 1 { name } else { format!("{}*{name}", s.abs()) };
            match (out.is_empty(), s < 0) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `M(r̃, B) = [ε_w(r_j)]`, columns sorted descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub matrix: FpMatrix,
    pub columns: Vec<Word>,
}

impl fmt::Display for CoefficientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.columns.iter().map(Word::to_string).collect();
        writeln!(f, "{}", labels.join(" "))?;
        write!(f, "{}", self.matrix)
    }
}

/// Shared validation: nonempty, distinct, one `τ`-degree.
fn check_word_set(words: &[Word], tau: &[u32], what: &str) -> Result<u64> {
    let first = words
        .first()
        .ok_or_else(|| Error::InvalidWordSet(format!("{what} is empty")))?;
    let degree = crate::words::tau_degree(tau, first)?;
    let mut seen = HashSet::with_capacity(words.len());
    for w in words {
        if !seen.insert(w) {
            return Err(Error::InvalidWordSet(format!("{what} lists {w} twice")));
        }
        let deg = crate::words::tau_degree(tau, w)?;
        if deg != degree {
            return Err(Error::InvalidWordSet(format!(
                "{what} mixes tau-degrees {degree} and {deg}"
            )));
        }
    }
    Ok(degree)
}

fn max_len(words: &[Word]) -> usize {
    words.iter().map(Word::len).max().unwrap_or(1)
}

pub(crate) fn matrix_from(ex: &Expanded<'_>, columns: Vec<Word>) -> Result<CoefficientMatrix> {
    let p = ex.pres.prime();
    let mut matrix = FpMatrix::zeros(p, ex.pres.m(), columns.len());
    for (c, w) in columns.iter().enumerate() {
        for (j, v) in ex.vector(w)?.coords.into_iter().enumerate() {
            matrix.set(j, c, v);
        }
    }
    Ok(CoefficientMatrix { matrix, columns })
}

pub fn build_coeff_matrix(pres: &Presentation, b: &[Word], order: &OrderSpec) -> Result<CoefficientMatrix> {
    check_word_set(b, pres.alphabet().weights(), "B")?;
    let mut columns = b.to_vec();
    order.sort_descending(&mut columns)?;
    matrix_from(&Expanded::new(pres, max_len(b))?, columns)
}

/// Mirrors row operations onto relators: `Swap` exchanges, `Scale(s, k)`
/// replaces `r_s` by `r_s^k`, `AddMultiple(s, t, k)` replaces `r_s` by
/// `r_s r_t^k`. Results are freely reduced.
pub fn transform_relators(pres: &Presentation, log: &OpLog) -> Result<Vec<GroupElement>> {
    let mut rels = pres.relators().to_vec();
    for op in log {
        op.validate(rels.len(), pres.prime())?;
        match *op {
            RowOp::Swap(s, t) => rels.swap(s, t),
            RowOp::Scale(s, k) => rels[s] = rels[s].pow(k as i64).freely_reduced(),
            RowOp::AddMultiple(s, t, k) => rels[s] = rels[s].mul(&rels[t].pow(k as i64)).freely_reduced(),
        }
    }
    Ok(rels)
}

/// `I(r) = Σ_{w∈A} ε_w(r) w`.
pub fn initial_form(pres: &Presentation, relator: &GroupElement, a: &[Word]) -> Result<HomogeneousPoly> {
    let tau = pres.alphabet().weights();
    let degree = check_word_set(a, tau, "A")?;
    let ex = Expanded::new(pres, max_len(a))?;
    for w in a {
        ex.require_compatible(w)?;
    }
    let series = crate::magnus::expand(relator, pres.d(), pres.prime(), max_len(a))?;
    let terms = a
        .iter()
        .map(|w| Ok((w.clone(), series.coefficient(w)? as i64)))
        .collect::<Result<Vec<_>>>()?;
    HomogeneousPoly::new(pres.prime(), tau, degree, terms)
}

pub(crate) fn initial_forms_from(
    p: Prime,
    tau: &[u32],
    degree: u64,
    series: &[TruncatedSeries],
    a: &[Word],
) -> Result<Vec<HomogeneousPoly>> {
    series
        .iter()
        .map(|s| {
            let terms = a
                .iter()
                .map(|w| Ok((w.clone(), s.coefficient(w)? as i64)))
                .collect::<Result<Vec<_>>>()?;
            HomogeneousPoly::new(p, tau, degree, terms)
        })
        .collect()
}
