use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::fplinalg::SparseEchelon;

use super::{shuffle, Alphabet, FormalSum, OrderSpec, Word};

/// `w` is nonempty and strictly smaller than each of its proper right factors.
pub fn is_lyndon(order: &OrderSpec, w: &Word) -> Result<bool> {
    order.check_word(w)?;
    if w.is_empty() {
        return Ok(false);
    }
    Ok((1..w.len()).all(|i| order.cmp_words(w, &w.factor(i, w.len())) == Ordering::Less))
}

/// All Lyndon words of length `n`, ascending in `order`.
///
/// For lexicographic orders the words are generated directly (Duval's
/// algorithm); any other order falls back to filtering all `d^n` words.
pub fn lyndon_words(alphabet: &Alphabet, n: usize, order: &OrderSpec) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::InvalidInput("Lyndon word length must be positive".into()));
    }
    let d = alphabet.len();
    if order.alphabet_size() != d {
        return Err(Error::AlphabetMismatch {
            letter: order.alphabet_size().max(d) - 1,
            size: d.min(order.alphabet_size()),
        });
    }
    if let OrderSpec::Lex(letters) = order {
        // Generate over ranks, then translate ranks back to letters.
        let mut out = Vec::new();
        let mut w: Vec<usize> = vec![0];
        loop {
            if w.len() == n {
                out.push(w.iter().map(|&r| letters.ascending()[r]).collect::<Word>());
            }
            let m = w.len();
            while w.len() < n {
                let c = w[w.len() - m];
                w.push(c);
            }
            while w.last() == Some(&(d - 1)) {
                w.pop();
            }
            match w.last_mut() {
                Some(last) => *last += 1,
                None => break,
            }
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for w in alphabet.words_of_length(n) {
        if is_lyndon(order, &w)? {
            out.push(w);
        }
    }
    order.sort_ascending(&mut out)?;
    Ok(out)
}

/// Coordinates of the class of `s` in `((⊕ Z w) / Sh_n) ⊗ F_p` with respect to
/// the Lyndon words of length `n`, where `Sh_n` is spanned by all shuffles
/// `u ⧢ v` with `|u| + |v| = n`.
///
/// Requires `n < p`. Returns one `(word, coordinate)` pair per Lyndon word,
/// in ascending order.
pub fn lyndon_reduce(s: &FormalSum, p: Prime, order: &OrderSpec) -> Result<Vec<(Word, FpScalar)>> {
    let n = s
        .degree()
        .ok_or_else(|| Error::InvalidInput("formal sum has no degree".into()))?;
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if n as u64 >= p.get() as u64 {
        return Err(Error::DegreeNotBelowPrime {
            degree: n,
            prime: p.get(),
        });
    }
    let d = order.alphabet_size();
    for (w, _) in s.iter() {
        order.check_word(w)?;
    }
    let alphabet = Alphabet::indexed(d)?;
    let lyndon = lyndon_words(&alphabet, n, order)?;
    let total = (d as u128).pow(n as u32);
    const BOUND: u128 = 1 << 20;
    if total > BOUND {
        return Err(Error::TooLarge {
            what: "shuffle quotient",
            needed: total,
            bound: BOUND,
        });
    }

    // Column numbering: non-Lyndon words first, so the echelon pivots of
    // Sh_n land exactly on them when the Lyndon cosets form a basis.
    let index = |w: &Word| w.iter().fold(0usize, |acc, &a| acc * d + a);
    let mut is_lyndon_col = vec![false; total as usize];
    for w in &lyndon {
        is_lyndon_col[index(w)] = true;
    }
    let mut column = vec![0usize; total as usize];
    let mut next = 0;
    for pass in [false, true] {
        for (i, &l) in is_lyndon_col.iter().enumerate() {
            if l == pass {
                column[i] = next;
                next += 1;
            }
        }
    }
    let to_sparse = |sum: &FormalSum| {
        let mut v: Vec<(usize, FpScalar)> = sum
            .iter()
            .map(|(w, c)| (column[index(w)], p.reduce(c)))
            .filter(|&(_, c)| c != 0)
            .collect();
        v.sort_unstable();
        v
    };

    let mut span = SparseEchelon::new(p);
    for left in 1..n {
        for u in alphabet.words_of_length(left) {
            for v in alphabet.words_of_length(n - left) {
                span.insert(to_sparse(&shuffle(&u, &v)?));
            }
        }
    }
    let non_lyndon = total as usize - lyndon.len();
    if span.rank() != non_lyndon || span.pivot_columns().any(|c| c >= non_lyndon) {
        return Err(Error::NoLyndonBasis(n));
    }
    let rem = span.reduce(&to_sparse(s));
    let coord = |w: &Word| {
        let c = column[index(w)];
        rem.iter().find(|&&(k, _)| k == c).map_or(0, |&(_, v)| v)
    };
    Ok(lyndon.iter().map(|w| (w.clone(), coord(w))).collect())
}
