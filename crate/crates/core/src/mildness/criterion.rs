use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::fp::FpScalar;
use crate::fplinalg::{left_nullspace, row_reduce, OpLog};
use crate::magnus::GroupElement;
use crate::presentation::Presentation;
use crate::words::{is_combinatorially_free, Freeness, OrderSpec, Word};

use super::{
    check_word_set, initial_forms_from, matrix_from, max_len, strong_freeness_oracle, transform_relators,
    Expanded, HomogeneousPoly, OracleReport, OracleVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnickVerdict {
    /// Leading terms are distinct and combinatorially free, so the
    /// sequence is strongly free.
    StronglyFreeCertified { leading_terms: Vec<Word> },
    /// The sufficient condition fails; this says nothing either way.
    Inconclusive { leading_terms: Vec<Word>, witness: Freeness },
}

impl AnickVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, AnickVerdict::StronglyFreeCertified { .. })
    }

    pub fn leading_terms(&self) -> &[Word] {
        match self {
            AnickVerdict::StronglyFreeCertified { leading_terms } | AnickVerdict::Inconclusive { leading_terms, .. } => {
                leading_terms
            }
        }
    }
}

/// Anick's criterion on the leading terms (maximal support words).
pub fn anick_check(polys: &[HomogeneousPoly], order: &OrderSpec) -> Result<AnickVerdict> {
    let mut leading_terms = Vec::with_capacity(polys.len());
    for f in polys {
        if f.degree() == 0 {
            return Err(Error::InvalidInput("polynomials must have positive degree".into()));
        }
        for w in f.support() {
            order.check_word(w)?;
        }
        leading_terms.push(f.leading_word(order).ok_or(Error::ZeroPolynomial)?.clone());
    }
    Ok(match is_combinatorially_free(&leading_terms)? {
        Freeness::Free => AnickVerdict::StronglyFreeCertified { leading_terms },
        witness => AnickVerdict::Inconclusive { leading_terms, witness },
    })
}

/// Which hypothesis of the main criterion failed, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionFailure {
    /// (a) `B` is not combinatorially free.
    NotCombinatoriallyFree(Freeness),
    /// (b) `outside ∈ A \ B` has a nonzero class and is not below
    /// `threshold`, the least word of `B` with a nonzero class.
    Closure { threshold: Word, outside: Word },
    /// (c) `M(r̃, B)` has rank below `m`; `witness` is a relator
    /// combination with zero coefficients on all of `B`.
    RankDeficient { rank: usize, m: usize, witness: Vec<FpScalar> },
}

impl CriterionFailure {
    /// `a`, `b` or `c`.
    pub fn condition(&self) -> &'static str {
        match self {
            CriterionFailure::NotCombinatoriallyFree(_) => "a",
            CriterionFailure::Closure { .. } => "b",
            CriterionFailure::RankDeficient { .. } => "c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MildnessCertificate {
    pub order: OrderSpec,
    /// Common `τ`-degree of `A`.
    pub degree: u64,
    pub a_size: usize,
    pub b_size: usize,
    /// Row operations that brought `M(r̃, B)` to echelon form.
    pub log: OpLog,
    pub transformed_relators: Vec<GroupElement>,
    /// `w_j`: the pivot of row `j`, the maximal support word of `I(r̃_j)`.
    pub pivot_words: Vec<Word>,
    pub initial_forms: Vec<HomogeneousPoly>,
    pub anick: AnickVerdict,
    pub threshold: Word,
    pub rank: usize,
    /// Depth to which the Hilbert series oracle agreed, if it was run.
    pub oracle_depth: Option<usize>,
}

impl MildnessCertificate {
    /// Runs the Hilbert series oracle on the initial forms up to `depth`
    /// and records the depth on agreement.
    pub fn confirm_with_oracle(&mut self, tau: &[u32], depth: usize) -> Result<OracleReport> {
        let report = strong_freeness_oracle(&self.initial_forms, tau, depth)?;
        if report.verdict == OracleVerdict::EqualUpToN {
            self.oracle_depth = Some(depth);
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MainVerdict {
    Certified(Box<MildnessCertificate>),
    Failed(CriterionFailure),
}

impl MainVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, MainVerdict::Certified(_))
    }

    pub fn certificate(&self) -> Option<&MildnessCertificate> {
        match self {
            MainVerdict::Certified(c) => Some(c),
            MainVerdict::Failed(_) => None,
        }
    }
}

/// The main mildness criterion for compatible words `A` of one `τ`-degree
/// and `B ⊆ A`:
///
/// (a) `B` is combinatorially free;
/// (b) if `w_1 ∈ B`, `w_2 ∈ A` both have nonzero classes and `w_1 <= w_2`,
///     then `w_2 ∈ B`;
/// (c) `M(r̃, B)` has rank `m`.
///
/// `τ` is taken from the alphabet weights. On success the relators are
/// transformed along the echelon reduction and their initial forms are
/// certified strongly free.
pub fn check_main_criterion(pres: &Presentation, order: &OrderSpec, a: &[Word], b: &[Word]) -> Result<MainVerdict> {
    let tau = pres.alphabet().weights();
    if order.alphabet_size() != pres.d() {
        return Err(Error::InvalidInput(format!(
            "order is over {} letters but the presentation has {}",
            order.alphabet_size(),
            pres.d()
        )));
    }
    if order.homogeneous_monoid_order(tau).is_none() {
        return Err(Error::NotOrderedMonoid(
            "an opposite order is not compatible with concatenation".into(),
        ));
    }
    let degree = check_word_set(a, tau, "A")?;
    let a_index: HashMap<&Word, usize> = a.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let b_set: HashSet<&Word> = b.iter().collect();
    if let Some(w) = b.iter().find(|w| !a_index.contains_key(w)) {
        return Err(Error::InvalidWordSet(format!("{w} is in B but not in A")));
    }
    let ex = Expanded::new(pres, max_len(a))?;
    let vectors = a.iter().map(|w| ex.vector(w)).collect::<Result<Vec<_>>>()?;

    if b.is_empty() {
        let mut witness = vec![0; pres.m()];
        witness[0] = 1;
        return Ok(MainVerdict::Failed(CriterionFailure::RankDeficient {
            rank: 0,
            m: pres.m(),
            witness,
        }));
    }
    check_word_set(b, tau, "B")?;

    // (a)
    let freeness = is_combinatorially_free(b)?;
    if !freeness.is_free() {
        return Ok(MainVerdict::Failed(CriterionFailure::NotCombinatoriallyFree(freeness)));
    }

    // (b), through the least nonzero word of B.
    let is_zero = |w: &Word| vectors[a_index[w]].is_zero();
    let threshold = order.min(b.iter().filter(|w| !is_zero(w))).cloned();
    if let Some(t) = &threshold {
        for (w, v) in a.iter().zip(&vectors) {
            if !v.is_zero() && !b_set.contains(w) && order.compare(w, t)?.is_ge() {
                return Ok(MainVerdict::Failed(CriterionFailure::Closure {
                    threshold: t.clone(),
                    outside: w.clone(),
                }));
            }
        }
    }

    // (c)
    let mut columns = b.to_vec();
    order.sort_descending(&mut columns)?;
    let m = matrix_from(&ex, columns)?;
    let red = row_reduce(&m.matrix);
    if red.rank < pres.m() {
        let witness = left_nullspace(&m.matrix).into_iter().next().expect("rank deficiency");
        return Ok(MainVerdict::Failed(CriterionFailure::RankDeficient {
            rank: red.rank,
            m: pres.m(),
            witness,
        }));
    }
    let threshold = threshold.expect("full rank needs a nonzero column");

    let transformed_relators = transform_relators(pres, &red.log)?;
    let new_pres = pres.with_relators(transformed_relators.clone())?;
    let new_ex = Expanded::new(&new_pres, max_len(a))?;
    let rebuilt = matrix_from(&new_ex, m.columns.clone())?;
    if rebuilt.matrix != red.echelon {
        return Err(Error::Internal("transformed relators do not reproduce the echelon form".into()));
    }
    let pivot_words: Vec<Word> = red.pivot_columns.iter().map(|&c| m.columns[c].clone()).collect();
    let initial_forms = initial_forms_from(pres.prime(), tau, degree, &new_ex.series, a)?;
    for (j, f) in initial_forms.iter().enumerate() {
        if f.leading_word(order) != Some(&pivot_words[j]) {
            return Err(Error::Internal(format!(
                "pivot {} of row {j} is not the leading word of its initial form",
                pivot_words[j]
            )));
        }
    }
    let anick = anick_check(&initial_forms, order)?;
    if !anick.is_certified() {
        return Err(Error::Internal("pivot words are not combinatorially free".into()));
    }
    Ok(MainVerdict::Certified(Box::new(MildnessCertificate {
        order: order.clone(),
        degree,
        a_size: a.len(),
        b_size: b.len(),
        log: red.log,
        transformed_relators,
        pivot_words,
        initial_forms,
        anick,
        threshold,
        rank: red.rank,
        oracle_depth: None,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Prime;
    use crate::presentation::{raag_presentation, Graph};
    use crate::words::{Alphabet, LetterOrder, ViolationKind};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn w(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    fn poly(q: u64, terms: &[(&[usize], i64)]) -> HomogeneousPoly {
        let d = terms.iter().flat_map(|(w, _)| w.iter()).max().unwrap() + 1;
        HomogeneousPoly::from_terms(p(q), &vec![1; d.max(4)], terms.iter().map(|(x, c)| (w(x), *c)).collect()).unwrap()
    }

    #[test]
    fn anick_examples() {
        let order = OrderSpec::LengthLex(LetterOrder::from_ascending(vec![1, 3, 0, 2]).unwrap());
        let fs = [poly(5, &[(&[0, 1], 1), (&[1, 0], -1)]), poly(5, &[(&[2, 3], 1), (&[3, 2], -1)])];
        assert_eq!(
            anick_check(&fs, &order).unwrap(),
            AnickVerdict::StronglyFreeCertified { leading_terms: vec![w(&[0, 1]), w(&[2, 3])] }
        );
        let one = [poly(5, &[(&[0, 1], 1), (&[1, 0], -1)])];
        assert_eq!(anick_check(&one, &OrderSpec::length_lex(4)).unwrap().leading_terms(), &[w(&[1, 0])]);
        assert!(anick_check(&one, &OrderSpec::length_lex(4)).unwrap().is_certified());
        let same = [poly(5, &[(&[0, 1], 1), (&[1, 0], 1)]), poly(5, &[(&[0, 1], 1), (&[1, 0], -1)])];
        assert!(!anick_check(&same, &OrderSpec::length_lex(4)).unwrap().is_certified());
        let zero = HomogeneousPoly::new(p(5), &[1, 1], 2, vec![]).unwrap();
        assert_eq!(anick_check(&[zero], &OrderSpec::length_lex(2)), Err(Error::ZeroPolynomial));
    }

    fn square() -> (Presentation, OrderSpec, Vec<Word>, Vec<Word>) {
        let pres = raag_presentation(&Graph::cycle(4).unwrap(), p(3)).unwrap();
        // Colour classes {x1, x3} (larger) and {x2, x4}.
        let order = OrderSpec::LengthLex(LetterOrder::from_ascending(vec![1, 3, 0, 2]).unwrap());
        let a: Vec<Word> = pres.alphabet().words_of_length(2).collect();
        let b = vec![w(&[0, 1]), w(&[0, 3]), w(&[2, 1]), w(&[2, 3])];
        (pres, order, a, b)
    }

    #[test]
    fn square_is_certified() {
        let (pres, order, a, b) = square();
        let verdict = check_main_criterion(&pres, &order, &a, &b).unwrap();
        let cert = verdict.certificate().expect("certified");
        assert_eq!(cert.pivot_words.len(), 4);
        assert_eq!(cert.rank, 4);
        let mut cert = cert.clone();
        let report = cert.confirm_with_oracle(&[1; 4], 5).unwrap();
        assert_eq!(report.verdict, OracleVerdict::EqualUpToN);
        assert_eq!(cert.oracle_depth, Some(5));
    }

    #[test]
    fn lex_is_accepted_on_homogeneous_sets() {
        let (pres, order, a, b) = square();
        let OrderSpec::LengthLex(letters) = order else { unreachable!() };
        assert!(check_main_criterion(&pres, &OrderSpec::Lex(letters), &a, &b).unwrap().is_certified());
        let op = OrderSpec::length_lex(4).opposite();
        assert!(matches!(check_main_criterion(&pres, &op, &a, &b), Err(Error::NotOrderedMonoid(_))));
    }

    #[test]
    fn failures() {
        let (pres, order, a, b) = square();
        let zero_cols = vec![w(&[0, 2])];
        match check_main_criterion(&pres, &order, &a, &zero_cols).unwrap() {
            MainVerdict::Failed(CriterionFailure::RankDeficient { rank: 0, m: 4, witness }) => {
                assert!(witness.iter().any(|&c| c != 0))
            }
            other => panic!("{other:?}"),
        }
        match check_main_criterion(&pres, &order, &a, &[w(&[0, 1]), w(&[1, 0])]).unwrap() {
            MainVerdict::Failed(CriterionFailure::NotCombinatoriallyFree(Freeness::Violation { kind, .. })) => {
                assert_eq!(kind, ViolationKind::Overlap)
            }
            other => panic!("{other:?}"),
        }
        // Dropping (x3x4) from B leaves it outside but above the threshold.
        let closure = check_main_criterion(&pres, &order, &a, &b[..3]).unwrap();
        assert!(matches!(closure, MainVerdict::Failed(CriterionFailure::Closure { .. })), "{closure:?}");
        let reversed = OrderSpec::length_lex(4);
        let failed = check_main_criterion(&pres, &reversed, &a, &b).unwrap();
        assert_eq!(
            failed,
            MainVerdict::Failed(CriterionFailure::Closure { threshold: w(&[0, 1]), outside: w(&[1, 0]) })
        );
    }

    #[test]
    fn input_errors() {
        let (pres, order, a, b) = square();
        assert!(matches!(check_main_criterion(&pres, &order, &[], &b), Err(Error::InvalidWordSet(_))));
        assert!(matches!(check_main_criterion(&pres, &order, &a[..2], &b), Err(Error::InvalidWordSet(_))));
        let three: Vec<Word> = Alphabet::indexed(4).unwrap().words_of_length(3).collect();
        assert!(matches!(check_main_criterion(&pres, &order, &three, &three[..1]), Err(Error::Incompatible(_))));
    }
}
