use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fp::{FpScalar, Prime};
use crate::fplinalg::{left_nullspace, row_reduce};
use crate::presentation::{koch_presentation, raag_presentation, Graph, KochData, Presentation};
use crate::words::{Letter, LetterOrder, OrderSpec, Word};

use super::{check_main_criterion, matrix_from, CriterionFailure, Expanded, MainVerdict, MildnessCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionFailure {
    /// A compatible word with more than `k_j` letters from `Y_j` has a
    /// nonzero class.
    ConditionI { word: Word, part: usize },
    /// The classes of `C ∩ Y_0^{k_0} ... Y_s^{k_s}` do not span.
    ConditionII { rank: usize, m: usize, witness: Vec<FpScalar> },
    /// Reserved for a failure of the delegated main criterion, which the
    /// two conditions rule out.
    Main(CriterionFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionVerdict {
    Certified(Box<MildnessCertificate>),
    Failed(PartitionFailure),
}

impl PartitionVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, PartitionVerdict::Certified(_))
    }
}

fn check_partition(d: usize, parts: &[Vec<Letter>], ks: &[usize]) -> Result<()> {
    if parts.len() < 2 {
        return Err(Error::InvalidPartition("need Y_0 and at least one further part".into()));
    }
    if parts.len() != ks.len() {
        return Err(Error::InvalidPartition(format!("{} parts but {} multiplicities", parts.len(), ks.len())));
    }
    if let Some(j) = ks.iter().position(|&k| k == 0) {
        return Err(Error::InvalidPartition(format!("k_{j} must be positive")));
    }
    let mut owner = vec![None; d];
    for (j, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::InvalidPartition(format!("Y_{j} is empty")));
        }
        for &a in part {
            if a >= d {
                return Err(Error::AlphabetMismatch { letter: a, size: d });
            }
            if let Some(i) = owner[a] {
                return Err(Error::InvalidPartition(format!("letter {a} lies in Y_{i} and Y_{j}")));
            }
            owner[a] = Some(j);
        }
    }
    if let Some(a) = owner.iter().position(Option::is_none) {
        return Err(Error::InvalidPartition(format!("letter {a} lies in no part")));
    }
    Ok(())
}

/// Partition criterion for `X = Y_0 ∪ ... ∪ Y_s` and `n = k_0 + ... + k_s`,
/// with `C` the compatible words of length `n`:
///
/// (i) words of `C` with more than `k_j` letters from some `Y_j`, `j >= 1`,
///     have zero classes;
/// (ii) the classes of `C ∩ Y_0^{k_0} Y_1^{k_1} ... Y_s^{k_s}` span.
///
/// On success the main criterion is run with the g-order built from the
/// indicators of `Y_1, ..., Y_s`.
pub fn partition_criterion(pres: &Presentation, parts: &[Vec<Letter>], ks: &[usize]) -> Result<PartitionVerdict> {
    let d = pres.d();
    check_partition(d, parts, ks)?;
    if !pres.alphabet().has_unit_weights() {
        return Err(Error::InvalidInput("the partition criterion uses unit weights".into()));
    }
    let n: usize = ks.iter().sum();
    let entry = pres.entry_degree()?;
    if !entry.uniform || entry.n != n {
        return Err(Error::EntryDegree(format!(
            "relator degrees {:?} must all equal n = {n}",
            entry.degrees
        )));
    }
    let c = pres.compatible_words(n)?;
    let ex = Expanded::new(pres, n)?;

    for w in &c {
        if let Some(j) = (1..parts.len()).find(|&j| w.count_in(&parts[j]) > ks[j]) {
            if !ex.vector(w)?.is_zero() {
                return Ok(PartitionVerdict::Failed(PartitionFailure::ConditionI { word: w.clone(), part: j }));
            }
        }
    }

    let mut slot_part = Vec::with_capacity(n);
    for (j, &k) in ks.iter().enumerate() {
        slot_part.extend(std::iter::repeat_n(j, k));
    }
    let b: Vec<Word> = c
        .iter()
        .filter(|w| w.iter().zip(&slot_part).all(|(a, &j)| parts[j].contains(a)))
        .cloned()
        .collect();
    let a: Vec<Word> = c
        .iter()
        .filter(|w| (1..parts.len()).all(|j| w.count_in(&parts[j]) <= ks[j]))
        .cloned()
        .collect();

    let sigmas = parts[1..]
        .iter()
        .map(|part| (0..d).map(|x| part.contains(&x) as u32).collect())
        .collect();
    let order = OrderSpec::gorder(vec![1; d], sigmas, LetterOrder::identity(d))?;

    let rank_failure = |rank, witness| {
        Ok(PartitionVerdict::Failed(PartitionFailure::ConditionII {
            rank,
            m: pres.m(),
            witness,
        }))
    };
    if b.is_empty() {
        let mut witness = vec![0; pres.m()];
        witness[0] = 1;
        return rank_failure(0, witness);
    }
    let mut columns = b.clone();
    order.sort_descending(&mut columns)?;
    let m = matrix_from(&ex, columns)?;
    let rank = row_reduce(&m.matrix).rank;
    if rank < pres.m() {
        return rank_failure(rank, left_nullspace(&m.matrix).swap_remove(0));
    }

    Ok(match check_main_criterion(pres, &order, &a, &b)? {
        MainVerdict::Certified(cert) => PartitionVerdict::Certified(cert),
        MainVerdict::Failed(f) => PartitionVerdict::Failed(PartitionFailure::Main(f)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitVerdict {
    MildCertified {
        certificate: Box<MildnessCertificate>,
    },
    Inapplicable {
        reason: String,
    },
}

impl CircuitVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CircuitVerdict::MildCertified { .. })
    }
}

/// `x2 < x4 < ... < x1 < x3 < ...` (1-based names), as 0-based letters.
fn evens_below_odds(d: usize) -> Result<LetterOrder> {
    let ascending = (0..d).filter(|a| a % 2 == 1).chain((0..d).filter(|a| a % 2 == 0)).collect();
    LetterOrder::from_ascending(ascending)
}

/// The non-singular circuit criteria for Koch-type presentations, in the
/// `d = m` and the `m < d` forms. Indices below are 1-based.
pub fn koch_circuit_check(data: &KochData, p: Prime) -> Result<CircuitVerdict> {
    data.validate(p)?;
    let (d, m) = (data.d(), data.m());
    let inapplicable = |reason: String| Ok(CircuitVerdict::Inapplicable { reason });
    // 0-based `a_{jk}` reduced mod p.
    let a = |j: usize, k: usize| data.ajk(j, k) as u64 % p.get() as u64;
    let both_odd = |j: usize, k: usize| j.is_multiple_of(2) && k.is_multiple_of(2);

    if d == m {
        if d < 4 {
            return inapplicable(format!("d = m = {d}, but the circuit criterion needs d = m >= 4"));
        }
        let forward = (0..d).fold(1u64, |acc, j| acc * a(j, (j + 1) % d) % p.get() as u64);
        let backward = (0..d).fold(1u64, |acc, j| acc * a((j + 1) % d, j) % p.get() as u64);
        if forward == backward {
            return inapplicable(format!(
                "condition (i) fails: a_12 a_23 ... a_d1 = {forward} = a_21 a_32 ... a_1d mod {p}"
            ));
        }
        for j in 0..d {
            for k in (0..d).filter(|&k| k != j) {
                if both_odd(j, k) && a(j, k) != 0 {
                    return inapplicable(format!(
                        "condition (ii) fails: a_{{{},{}}} = {} with both indices odd",
                        j + 1,
                        k + 1,
                        a(j, k)
                    ));
                }
            }
        }
        if d % 2 != 0 {
            return Err(Error::Internal("conditions (i) and (ii) hold for odd d".into()));
        }
    } else {
        for j in 0..m {
            if a(j, j + 1) == 0 {
                return inapplicable(format!("condition (i) fails: a_{{{},{}}} = 0", j + 1, j + 2));
            }
        }
        for j in 0..m {
            for k in (0..d).filter(|&k| k != j) {
                if both_odd(j, k) && a(j, k) != 0 {
                    return inapplicable(format!(
                        "condition (ii) fails: a_{{{},{}}} = {} with both indices odd",
                        j + 1,
                        k + 1,
                        a(j, k)
                    ));
                }
            }
        }
    }

    let pres = koch_presentation(data, p)?;
    let order = OrderSpec::LengthLex(evens_below_odds(d)?);
    let all: Vec<Word> = pres.alphabet().words_of_length(2).collect();
    let b: Vec<Word> = all
        .iter()
        .filter(|w| w.letters()[0] % 2 == 0 && w.letters()[1] % 2 == 1)
        .cloned()
        .collect();
    Ok(match check_main_criterion(&pres, &order, &all, &b)? {
        MainVerdict::Certified(certificate) => CircuitVerdict::MildCertified { certificate },
        MainVerdict::Failed(f) => CircuitVerdict::Inapplicable {
            reason: format!(
                "circuit conditions hold but the presentation fails condition ({}) of the main criterion: {f:?}",
                f.condition()
            ),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RaagVerdict {
    MildCertified {
        /// The larger colour class.
        y1: Vec<Letter>,
        /// The smaller colour class.
        y2: Vec<Letter>,
        certificate: Box<MildnessCertificate>,
    },
    Inapplicable {
        odd_cycle: Vec<Letter>,
    },
}

impl RaagVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, RaagVerdict::MildCertified { .. })
    }
}

/// Breadth-first 2-colouring; colour 0 holds each component's first vertex.
/// Returns an odd cycle if there is none.
pub fn two_coloring(graph: &Graph) -> std::result::Result<Vec<u8>, Vec<Letter>> {
    let n = graph.len();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent: Vec<Option<Letter>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in graph.neighbors(v) {
                match color[u] {
                    None => {
                        color[u] = Some(1 - color[v].expect("coloured"));
                        parent[u] = Some(v);
                        queue.push_back(u);
                    }
                    Some(c) if c == color[v].expect("coloured") => {
                        return Err(odd_cycle(&parent, v, u));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(|c| c.expect("all coloured")).collect())
}

/// Closes the tree paths from `u` and `v` (same depth parity) into a cycle.
fn odd_cycle(parent: &[Option<Letter>], u: Letter, v: Letter) -> Vec<Letter> {
    let path = |mut x: Letter| {
        let mut out = vec![x];
        while let Some(q) = parent[x] {
            out.push(q);
            x = q;
        }
        out
    };
    let (pu, pv) = (path(u), path(v));
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<Letter> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<Letter> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Bipartite RAAG criterion: length-lexicographic order with the colour
/// class `Y_1` above `Y_2`, `A = X^2`, `B` the edge words `(x_i x_k)` with
/// `x_i ∈ Y_1`, `x_k ∈ Y_2`.
pub fn raag_bipartite_check(graph: &Graph, p: Prime) -> Result<RaagVerdict> {
    if graph.edges().is_empty() {
        return Err(Error::InvalidGraph("at least one edge is required".into()));
    }
    let color = match two_coloring(graph) {
        Ok(c) => c,
        Err(odd_cycle) => return Ok(RaagVerdict::Inapplicable { odd_cycle }),
    };
    let y2: Vec<Letter> = (0..graph.len()).filter(|&v| color[v] == 0).collect();
    let y1: Vec<Letter> = (0..graph.len()).filter(|&v| color[v] == 1).collect();
    let pres = raag_presentation(graph, p)?;
    let order = OrderSpec::LengthLex(LetterOrder::from_ascending(y2.iter().chain(&y1).copied().collect())?);
    let a: Vec<Word> = pres.alphabet().words_of_length(2).collect();
    let b: Vec<Word> = graph
        .edges()
        .iter()
        .map(|&(i, k)| if color[i] == 1 { Word::new(vec![i, k]) } else { Word::new(vec![k, i]) })
        .collect();
    match check_main_criterion(&pres, &order, &a, &b)? {
        MainVerdict::Certified(certificate) => Ok(RaagVerdict::MildCertified { y1, y2, certificate }),
        MainVerdict::Failed(f) => Err(Error::Internal(format!("bipartite RAAG failed the main criterion: {f:?}"))),
    }
}
