use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::{Alphabet, Letter, Word};

/// A total order on the letters, stored both as the ascending list and as a
/// rank per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterOrder {
    ascending: Vec<Letter>,
    rank: Vec<usize>,
}

impl LetterOrder {
    /// The listing order `0 < 1 < ... < d-1`.
    pub fn identity(d: usize) -> Self {
        LetterOrder {
            ascending: (0..d).collect(),
            rank: (0..d).collect(),
        }
    }

    /// `ascending[0] < ascending[1] < ...`; must be a permutation of `0..d`.
    pub fn from_ascending(ascending: Vec<Letter>) -> Result<Self> {
        let d = ascending.len();
        let mut rank = vec![usize::MAX; d];
        for (r, &a) in ascending.iter().enumerate() {
            if a >= d || rank[a] != usize::MAX {
                return Err(Error::InvalidPermutation(d));
            }
            rank[a] = r;
        }
        Ok(LetterOrder { ascending, rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, a: Letter) -> usize {
        self.rank[a]
    }

    pub fn ascending(&self) -> &[Letter] {
        &self.ascending
    }

    fn cmp_lex(&self, w: &Word, u: &Word) -> Ordering {
        for (a, b) in w.iter().zip(u.iter()) {
            let c = self.rank[*a].cmp(&self.rank[*b]);
            if c != Ordering::Equal {
                return c;
            }
        }
        w.len().cmp(&u.len())
    }
}

/// A total order on the free monoid.
///
/// * `Lex`: lexicographic, a proper left factor is smaller.
/// * `LengthLex`: shorter words first, then lexicographic.
/// * `GOrder`: compares `(tau*, sigma_s*, sigma_s#, ..., sigma_1*, sigma_1#)`
///   lexicographically, then falls back to `Lex`. Each `sigma_j` maps letters
///   to `{0, 1}`.
/// * `Opposite`: reverses the inner order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Lex(LetterOrder),
    LengthLex(LetterOrder),
    GOrder {
        weights: Vec<u32>,
        sigmas: Vec<Vec<u32>>,
        letters: LetterOrder,
    },
    Opposite(Box<OrderSpec>),
}

impl OrderSpec {
    pub fn lex(d: usize) -> Self {
        OrderSpec::Lex(LetterOrder::identity(d))
    }

    pub fn length_lex(d: usize) -> Self {
        OrderSpec::LengthLex(LetterOrder::identity(d))
    }

    pub fn gorder(weights: Vec<u32>, sigmas: Vec<Vec<u32>>, letters: LetterOrder) -> Result<Self> {
        let d = letters.len();
        if weights.len() != d || weights.contains(&0) {
            return Err(Error::InvalidLetterMap(format!(
                "weights must be {d} positive integers"
            )));
        }
        for (j, sigma) in sigmas.iter().enumerate() {
            if sigma.len() != d || sigma.iter().any(|&v| v > 1) {
                return Err(Error::InvalidLetterMap(format!(
                    "sigma_{} must map each of the {d} letters to 0 or 1",
                    j + 1
                )));
            }
        }
        Ok(OrderSpec::GOrder {
            weights,
            sigmas,
            letters,
        })
    }

    pub fn opposite(self) -> Self {
        OrderSpec::Opposite(Box::new(self))
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            OrderSpec::Lex(o) | OrderSpec::LengthLex(o) => o.len(),
            OrderSpec::GOrder { letters, .. } => letters.len(),
            OrderSpec::Opposite(inner) => inner.alphabet_size(),
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.check_alphabet(self.alphabet_size())
    }

    pub fn compare(&self, w: &Word, u: &Word) -> Result<Ordering> {
        self.check_word(w)?;
        self.check_word(u)?;
        Ok(self.cmp_words(w, u))
    }

    /// Comparison without the alphabet check; callers guarantee range.
    pub(crate) fn cmp_words(&self, w: &Word, u: &Word) -> Ordering {
        match self {
            OrderSpec::Lex(o) => o.cmp_lex(w, u),
            OrderSpec::LengthLex(o) => w.len().cmp(&u.len()).then_with(|| o.cmp_lex(w, u)),
            OrderSpec::GOrder {
                weights,
                sigmas,
                letters,
            } => {
                let tau = |x: &Word| x.iter().map(|&a| weights[a] as u64).sum::<u64>();
                let mut c = tau(w).cmp(&tau(u));
                for sigma in sigmas.iter().rev() {
                    if c != Ordering::Equal {
                        break;
                    }
                    c = star(sigma, w)
                        .cmp(&star(sigma, u))
                        .then_with(|| sharp(sigma, weights, w).cmp(&sharp(sigma, weights, u)));
                }
                c.then_with(|| letters.cmp_lex(w, u))
            }
            OrderSpec::Opposite(inner) => inner.cmp_words(w, u).reverse(),
        }
    }

    /// Whether `(X*, <=)` is an ordered monoid: the empty word is minimal and
    /// `w <= w', u <= u'` implies `wu <= w'u'`.
    ///
    /// `Lex` is not: `(x1) < (x1x2)` but `(x1x3) > (x1x2x3)`.
    pub fn is_ordered_monoid(&self) -> bool {
        matches!(self, OrderSpec::LengthLex(_) | OrderSpec::GOrder { .. })
    }

    /// An ordered-monoid order that coincides with `self` on every set of
    /// words of equal `tau`-degree, if there is one. Leading terms of
    /// homogeneous elements only depend on such comparisons.
    pub fn homogeneous_monoid_order(&self, tau: &[u32]) -> Option<OrderSpec> {
        match self {
            OrderSpec::Lex(o) => Some(OrderSpec::GOrder {
                weights: tau.to_vec(),
                sigmas: Vec::new(),
                letters: o.clone(),
            }),
            OrderSpec::LengthLex(_) | OrderSpec::GOrder { .. } => Some(self.clone()),
            OrderSpec::Opposite(_) => None,
        }
    }

    pub fn max<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Option<&'a Word> {
        words.into_iter().max_by(|a, b| self.cmp_words(a, b))
    }

    pub fn min<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Option<&'a Word> {
        words.into_iter().min_by(|a, b| self.cmp_words(a, b))
    }

    pub fn sort_ascending(&self, words: &mut [Word]) -> Result<()> {
        words.iter().try_for_each(|w| self.check_word(w))?;
        words.sort_by(|a, b| self.cmp_words(a, b));
        Ok(())
    }

    pub fn sort_descending(&self, words: &mut [Word]) -> Result<()> {
        words.iter().try_for_each(|w| self.check_word(w))?;
        words.sort_by(|a, b| self.cmp_words(b, a));
        Ok(())
    }

    /// Text form accepted by [`crate::parse::parse_order`].
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let chain = |o: &LetterOrder| {
            o.ascending()
                .iter()
                .map(|&a| alphabet.name(a))
                .collect::<Vec<_>>()
                .join("<")
        };
        match self {
            OrderSpec::Lex(o) => format!("lex:{}", chain(o)),
            OrderSpec::LengthLex(o) => format!("lenlex:{}", chain(o)),
            OrderSpec::GOrder {
                weights,
                sigmas,
                letters,
            } => {
                let tau = if weights.iter().all(|&w| w == 1) {
                    "1".to_string()
                } else {
                    weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
                };
                let mut parts = Vec::new();
                let in_some: Vec<bool> = (0..letters.len()).map(|a| sigmas.iter().any(|s| s[a] == 1)).collect();
                let zero: Vec<&str> = (0..letters.len()).filter(|&a| !in_some[a]).map(|a| alphabet.name(a)).collect();
                parts.push(format!("Y0:{}", zero.join(",")));
                for (j, s) in sigmas.iter().enumerate() {
                    let ys: Vec<&str> = (0..letters.len()).filter(|&a| s[a] == 1).map(|a| alphabet.name(a)).collect();
                    parts.push(format!("Y{}:{}", j + 1, ys.join(",")));
                }
                format!("gorder:tau={tau};parts={};letters={}", parts.join("|"), chain(letters))
            }
            OrderSpec::Opposite(inner) => format!("op:{}", inner.describe(alphabet)),
        }
    }
}

/// Free-function form of [`OrderSpec::compare`].
pub fn compare(order: &OrderSpec, w: &Word, u: &Word) -> Result<Ordering> {
    order.compare(w, u)
}

fn star(sigma: &[u32], w: &Word) -> u64 {
    w.iter().map(|&a| sigma[a] as u64).sum()
}

fn sharp(sigma: &[u32], tau: &[u32], w: &Word) -> u64 {
    let mut prefix = 0u64;
    let mut total = 0u64;
    for &a in w {
        prefix += tau[a] as u64;
        total += sigma[a] as u64 * prefix;
    }
    total
}

fn check_map(map: &[u32], w: &Word, what: &str) -> Result<()> {
    match w.iter().find(|&&a| a >= map.len()) {
        Some(&a) => Err(Error::InvalidLetterMap(format!(
            "{what} is defined on {} letters but the word uses letter {a}",
            map.len()
        ))),
        None => Ok(()),
    }
}

/// `sigma*(w)`: sum of `sigma` over the letters of `w`.
pub fn sigma_star(sigma: &[u32], w: &Word) -> Result<u64> {
    check_map(sigma, w, "sigma")?;
    Ok(star(sigma, w))
}

/// `sigma#(w) = sum_i sigma(a_i) * (tau(a_1) + ... + tau(a_i))`.
pub fn sigma_sharp(sigma: &[u32], tau: &[u32], w: &Word) -> Result<u64> {
    check_map(sigma, w, "sigma")?;
    check_map(tau, w, "tau")?;
    Ok(sharp(sigma, tau, w))
}

pub fn tau_degree(tau: &[u32], w: &Word) -> Result<u64> {
    check_map(tau, w, "tau")?;
    Ok(w.iter().map(|&a| tau[a] as u64).sum())
}
