use crate::error::{Error, Result};

use super::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `words[i]` is a middle factor of `words[j]`, `i != j`.
    MiddleFactor,
    /// A proper left factor of `words[i]` is a proper right factor of `words[j]`.
    Overlap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Violation {
        kind: ViolationKind,
        i: usize,
        j: usize,
        factor: Word,
    },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Anick's combinatorial freeness for a sequence of nonempty words.
///
/// Duplicate entries count as a middle-factor violation.
pub fn is_combinatorially_free(words: &[Word]) -> Result<Freeness> {
    if words.iter().any(Word::is_empty) {
        return Err(Error::EmptyWord);
    }
    for (j, wj) in words.iter().enumerate() {
        for (i, wi) in words.iter().enumerate() {
            if i != j && wi.len() <= wj.len() && wi.is_factor_of(wj) {
                return Ok(Freeness::Violation {
                    kind: ViolationKind::MiddleFactor,
                    i,
                    j,
                    factor: wi.clone(),
                });
            }
        }
    }
    for (i, wi) in words.iter().enumerate() {
        for len in 1..wi.len() {
            let prefix = &wi.letters()[..len];
            for (j, wj) in words.iter().enumerate() {
                if len < wj.len() && &wj.letters()[wj.len() - len..] == prefix {
                    return Ok(Freeness::Violation {
                        kind: ViolationKind::Overlap,
                        i,
                        j,
                        factor: Word::new(prefix.to_vec()),
                    });
                }
            }
        }
    }
    Ok(Freeness::Free)
}
