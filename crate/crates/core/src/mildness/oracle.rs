use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fplinalg::{SparseEchelon, SparseVec};
use crate::words::{Letter, Word};

use super::HomogeneousPoly;

/// Bound on the number of words of one `τ`-degree in [`graded_dims`].
pub const MAX_GRADED_WORDS: usize = 1 << 20;

/// Coefficients `b_0..=b_n` of `1 / (1 - Σ_x z^{τ(x)} + Σ_j z^{n_j})`.
pub fn gs_series(tau: &[u32], degrees: &[u64], n: usize) -> Result<Vec<i128>> {
    if degrees.contains(&0) {
        return Err(Error::InvalidInput("relator degrees must be positive".into()));
    }
    let mut poly = vec![0i128; n + 1];
    poly[0] = 1;
    for &t in tau {
        if (t as usize) <= n {
            poly[t as usize] -= 1;
        }
    }
    for &k in degrees {
        if k as usize <= n {
            poly[k as usize] += 1;
        }
    }
    let mut b = vec![0i128; n + 1];
    b[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        for k in 1..=i {
            let term = poly[k].checked_mul(b[i - k]).ok_or(Error::Overflow("Golod-Shafarevich series"))?;
            acc = acc.checked_sub(term).ok_or(Error::Overflow("Golod-Shafarevich series"))?;
        }
        b[i] = acc;
    }
    Ok(b)
}

/// All words of each `τ`-degree `0..=n`.
fn words_by_degree(tau: &[u32], n: usize) -> Result<Vec<Vec<Word>>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    out[0].push(Word::empty());
    for k in 1..=n {
        let mut level = Vec::new();
        for (a, &t) in tau.iter().enumerate() {
            let t = t as usize;
            if t <= k {
                for u in &out[k - t] {
                    let mut v = u.letters().to_vec();
                    v.push(a as Letter);
                    level.push(Word::new(v));
                }
            }
            if level.len() > MAX_GRADED_WORDS {
                return Err(Error::TooLarge {
                    what: "graded word space",
                    needed: level.len() as u128,
                    bound: MAX_GRADED_WORDS as u128,
                });
            }
        }
        level.sort_unstable();
        out[k] = level;
    }
    Ok(out)
}

/// `a_0..=a_n`: dimensions of the graded pieces of
/// `F_p<X> / (ρ_1, ..., ρ_m)`, by brute-force elimination of all
/// `u ρ_j v` in each degree.
pub fn graded_dims(polys: &[HomogeneousPoly], tau: &[u32], n: usize) -> Result<Vec<u64>> {
    if tau.is_empty() || tau.contains(&0) {
        return Err(Error::InvalidInput("tau must assign positive weights to a nonempty alphabet".into()));
    }
    for f in polys {
        if f.degree() == 0 {
            return Err(Error::InvalidInput("polynomials must have positive degree".into()));
        }
        for w in f.support() {
            crate::words::tau_degree(tau, w)?;
        }
    }
    if let Some(f) = polys.iter().find(|f| f.prime() != polys[0].prime()) {
        return Err(Error::DimensionMismatch(format!(
            "polynomials over F_{} and F_{}",
            polys[0].prime(),
            f.prime()
        )));
    }
    let words = words_by_degree(tau, n)?;
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let total = words[k].len() as u64;
        let Some(first) = polys.first() else {
            dims.push(total);
            continue;
        };
        let index: HashMap<&Word, usize> = words[k].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut span = SparseEchelon::new(first.prime());
        for f in polys.iter().filter(|f| !f.is_zero() && f.degree() as usize <= k) {
            let rest = k - f.degree() as usize;
            for i in 0..=rest {
                for u in &words[i] {
                    for v in &words[rest - i] {
                        let mut vec: SparseVec = f
                            .terms()
                            .map(|(t, c)| (index[&u.concat(t).concat(v)], c))
                            .collect();
                        vec.sort_unstable();
                        span.insert(vec);
                    }
                }
            }
        }
        dims.push(total - span.rank() as u64);
    }
    Ok(dims)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// `a_k = b_k` for every `k <= n`: evidence of strong freeness.
    EqualUpToN,
    /// The first degree where the sides differ: the sequence is not
    /// strongly free.
    FirstGapAt { n: usize, a: u64, b: i128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub depth: usize,
    pub dims: Vec<u64>,
    pub series: Vec<i128>,
    pub verdict: OracleVerdict,
    /// `a_k >= b_k` for every `k <= n`.
    pub coefficientwise_inequality: bool,
    /// `H(z) P(z) >= 1` coefficient-wise up to degree `n`, where `H` is the
    /// Hilbert series and `P` the Golod-Shafarevich polynomial.
    pub product_inequality: bool,
}

/// Compares the Hilbert series of the quotient with the Golod-Shafarevich
/// series degree by degree.
pub fn strong_freeness_oracle(polys: &[HomogeneousPoly], tau: &[u32], n: usize) -> Result<OracleReport> {
    if polys.iter().any(HomogeneousPoly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let degrees: Vec<u64> = polys.iter().map(HomogeneousPoly::degree).collect();
    let series = gs_series(tau, &degrees, n)?;
    let dims = graded_dims(polys, tau, n)?;
    let verdict = (0..=n)
        .find(|&k| dims[k] as i128 != series[k])
        .map_or(OracleVerdict::EqualUpToN, |k| OracleVerdict::FirstGapAt {
            n: k,
            a: dims[k],
            b: series[k],
        });
    let coefficientwise_inequality = (0..=n).all(|k| dims[k] as i128 >= series[k]);
    let mut poly = vec![0i128; n + 1];
    poly[0] = 1;
    tau.iter().filter(|&&t| t as usize <= n).for_each(|&t| poly[t as usize] -= 1);
    degrees.iter().filter(|&&k| k as usize <= n).for_each(|&k| poly[k as usize] += 1);
    let product_inequality = (0..=n).all(|k| {
        let c: i128 = (0..=k).map(|i| dims[i] as i128 * poly[k - i]).sum();
        if k == 0 {
            c >= 1
        } else {
            c >= 0
        }
    });
    Ok(OracleReport {
        depth: n,
        dims,
        series,
        verdict,
        coefficientwise_inequality,
        product_inequality,
    })
}
