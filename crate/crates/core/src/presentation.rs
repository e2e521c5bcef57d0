//! Finite presentations of pro-p groups, the Koch-type and RAAG families,
//! and word compatibility.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::fplinalg::SparseEchelon;
use crate::magnus::{expand, GroupElement, TruncatedSeries, ZassenhausDegree, MAX_SERIES_ENTRIES};
use crate::parse::parse_relator;
use crate::words::{Alphabet, Letter, Word};

/// Largest cap probed when searching for the entry degree.
const PROBE_CAP: usize = 16;
/// Size bound for the probe expansion.
const PROBE_ENTRIES: u128 = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    p: Prime,
    alphabet: Alphabet,
    relators: Vec<GroupElement>,
    cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDegree {
    /// Minimum Zassenhaus degree over the relators.
    pub n: usize,
    /// All relators share the degree `n`.
    pub uniform: bool,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinimalityReport {
    /// All relators lie in `F_(n) \ F_(n+1)` with independent initial forms.
    Certified { degree: usize, rank: usize },
    /// Degree-1 coefficients vanish, independence not established.
    Uncertified { reason: String },
}

fn probe_cap(d: usize) -> usize {
    let mut total = 0u128;
    let mut size = 1u128;
    for c in 0..=PROBE_CAP {
        total += size;
        if total > PROBE_ENTRIES {
            return c.saturating_sub(1).max(1);
        }
        size *= d as u128;
    }
    PROBE_CAP
}

impl Presentation {
    /// Builds a presentation; the cap defaults to the entry degree plus 4
    /// when the entry degree is found by a bounded probe.
    pub fn new(p: Prime, alphabet: Alphabet, relators: Vec<GroupElement>) -> Result<Self> {
        let mut pres = Self::validated(p, alphabet, relators)?;
        // Deepen the probe until every relator shows a nonzero coefficient.
        let limit = probe_cap(pres.d());
        let mut probe = 2.min(limit);
        pres.cap = loop {
            pres.cap = probe;
            match pres.entry_degree() {
                Ok(e) => break e.n + 4,
                Err(_) if probe >= limit => break limit,
                Err(_) => probe = (2 * probe).min(limit),
            }
        };
        Ok(pres)
    }

    fn validated(p: Prime, alphabet: Alphabet, relators: Vec<GroupElement>) -> Result<Self> {
        if relators.is_empty() {
            return Err(Error::NoRelators);
        }
        for (j, r) in relators.iter().enumerate() {
            r.check_alphabet(alphabet.len())?;
            if r.freely_reduced().is_empty() {
                return Err(Error::IdentityRelator(j));
            }
        }
        Ok(Presentation {
            p,
            alphabet,
            relators,
            cap: 1,
        })
    }

    /// Parses relators in the text grammar of [`crate::parse`].
    pub fn parse<S: AsRef<str>>(p: Prime, alphabet: Alphabet, relators: &[S]) -> Result<Self> {
        let rels = relators
            .iter()
            .map(|r| parse_relator(r.as_ref(), &alphabet))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, alphabet, rels)
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[GroupElement] {
        &self.relators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of generators.
    pub fn d(&self) -> usize {
        self.alphabet.len()
    }

    /// Number of relators.
    pub fn m(&self) -> usize {
        self.relators.len()
    }

    /// Same generators and cap, new relators.
    pub fn with_relators(&self, relators: Vec<GroupElement>) -> Result<Self> {
        let pres = Self::validated(self.p, self.alphabet.clone(), relators)?;
        pres.with_cap(self.cap)
    }

    /// Expansions of all relators truncated at `cap`.
    pub fn expansions(&self, cap: usize) -> Result<Vec<TruncatedSeries>> {
        self.relators
            .iter()
            .map(|r| expand(r, self.d(), self.p, cap))
            .collect()
    }

    pub fn zassenhaus_degrees(&self) -> Result<Vec<ZassenhausDegree>> {
        self.expansions(self.cap).map(|series| {
            series
                .iter()
                .map(|s| match s.lowest_positive_degree() {
                    Some(n) => ZassenhausDegree::Degree(n),
                    None => ZassenhausDegree::BeyondCap,
                })
                .collect()
        })
    }

    pub fn entry_degree(&self) -> Result<EntryDegree> {
        let mut degrees = Vec::with_capacity(self.m());
        for (j, z) in self.zassenhaus_degrees()?.into_iter().enumerate() {
            match z {
                ZassenhausDegree::Degree(n) => degrees.push(n),
                _ => {
                    return Err(Error::RelatorBeyondCap {
                        relator: j,
                        cap: self.cap,
                    })
                }
            }
        }
        let n = *degrees.iter().min().expect("at least one relator");
        Ok(EntryDegree {
            n,
            uniform: degrees.iter().all(|&k| k == n),
            degrees,
        })
    }

    /// Degree-1 test for membership in the Frattini subgroup, then the
    /// sufficient independence test on initial forms.
    pub fn validate_minimal(&self) -> Result<MinimalityReport> {
        for (j, r) in self.relators.iter().enumerate() {
            for a in 0..self.d() {
                let c = self.p.reduce(r.exponent_sum(a));
                if c != 0 {
                    return Err(Error::NotMinimal {
                        relator: j,
                        generator: self.alphabet.name(a).to_string(),
                        coefficient: c,
                    });
                }
            }
        }
        let entry = match self.entry_degree() {
            Ok(e) => e,
            Err(e) => {
                return Ok(MinimalityReport::Uncertified {
                    reason: e.to_string(),
                })
            }
        };
        if !entry.uniform {
            return Ok(MinimalityReport::Uncertified {
                reason: format!("relator degrees {:?} are not uniform", entry.degrees),
            });
        }
        let n = entry.n;
        let series = self.expansions(n)?;
        let mut span = SparseEchelon::new(self.p);
        for s in &series {
            let block = s.degree_block(n).expect("cap covers n");
            span.insert(block.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect());
        }
        let rank = span.rank();
        if rank == self.m() {
            Ok(MinimalityReport::Certified { degree: n, rank })
        } else {
            Ok(MinimalityReport::Uncertified {
                reason: format!("initial forms in degree {n} have rank {rank} < {}", self.m()),
            })
        }
    }

    /// Whether `ρ_w` maps every relator into the center: all proper factors
    /// of `w` other than `w` itself have vanishing coefficients.
    pub fn is_compatible(&self, w: &Word) -> Result<bool> {
        if w.len() > self.cap {
            return Err(Error::BeyondCap {
                len: w.len(),
                cap: self.cap,
            });
        }
        self.alphabet.check_word(w)?;
        if w.len() <= 1 {
            return Ok(true);
        }
        let series = self.expansions(w.len() - 1)?;
        compatible_with(&series, w)
    }

    /// All compatible words of length `n`, lexicographic in listing order.
    pub fn compatible_words(&self, n: usize) -> Result<Vec<Word>> {
        if n > self.cap {
            return Err(Error::BeyondCap { len: n, cap: self.cap });
        }
        let total = (self.d() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > MAX_SERIES_ENTRIES {
            return Err(Error::TooLarge {
                what: "compatible word enumeration",
                needed: total,
                bound: MAX_SERIES_ENTRIES,
            });
        }
        if n <= 1 {
            return Ok(self.alphabet.words_of_length(n).collect());
        }
        let series = self.expansions(n - 1)?;
        let mut out = Vec::new();
        for w in self.alphabet.words_of_length(n) {
            if compatible_with(&series, &w)? {
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// Compatibility against precomputed relator expansions of cap `>= |w| - 1`.
pub(crate) fn compatible_with(series: &[TruncatedSeries], w: &Word) -> Result<bool> {
    let n = w.len();
    for s in series {
        for i in 0..n {
            for j in i + 1..=n {
                if (i, j) != (0, n) && s.coefficient(&w.factor(i, j))? != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exponents of a Koch-type presentation, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KochData {
    d: usize,
    m: usize,
    a: Vec<u32>,
    ajk: Vec<Vec<u32>>,
}

impl KochData {
    /// `a[j]` for `j < m`; `ajk[j][k]` for `j < m`, `k < d`, diagonal zero.
    pub fn new(d: usize, m: usize, a: Vec<u32>, ajk: Vec<Vec<u32>>) -> Result<Self> {
        if m == 0 || m > d {
            return Err(Error::InvalidKochData(format!("need 1 <= m <= d, got m={m}, d={d}")));
        }
        if a.len() != m || ajk.len() != m || ajk.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidKochData(format!("expected {m} exponents a_j and an {m}x{d} table a_jk")));
        }
        if let Some(j) = (0..m).find(|&j| ajk[j][j] != 0) {
            return Err(Error::InvalidKochData(format!("a_{{{0}{0}}} must be zero", j + 1)));
        }
        Ok(KochData { d, m, a, ajk })
    }

    /// All exponents zero.
    pub fn zeros(d: usize, m: usize) -> Result<Self> {
        Self::new(d, m, vec![0; m], vec![vec![0; d]; m])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a_j`, 0-based.
    pub fn a(&self, j: usize) -> u32 {
        self.a[j]
    }

    /// `a_{jk}`, 0-based; zero for rows `j >= m`.
    pub fn ajk(&self, j: usize, k: usize) -> u32 {
        if j < self.m {
            self.ajk[j][k]
        } else {
            0
        }
    }

    pub fn set_a(&mut self, j: usize, v: u32) {
        self.a[j] = v;
    }

    pub fn set_ajk(&mut self, j: usize, k: usize, v: u32) -> Result<()> {
        if j >= self.m || k >= self.d || j == k {
            return Err(Error::InvalidKochData(format!("no exponent a_{{{},{}}}", j + 1, k + 1)));
        }
        self.ajk[j][k] = v;
        Ok(())
    }

    pub fn validate(&self, p: Prime) -> Result<()> {
        let q = p.get();
        if let Some(j) = (0..self.m).find(|&j| self.a[j] >= q) {
            return Err(Error::InvalidKochData(format!("a_{} = {} is not below p = {q}", j + 1, self.a[j])));
        }
        for j in 0..self.m {
            for k in 0..self.d {
                if self.ajk[j][k] >= q {
                    return Err(Error::InvalidKochData(format!(
                        "a_{{{},{}}} = {} is not below p = {q}",
                        j + 1,
                        k + 1,
                        self.ajk[j][k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `r_j = x_j^{p a_j} * prod_{k != j, increasing} [x_j, x_k]^{a_jk}`.
    pub fn relator(&self, j: usize, p: Prime) -> Result<GroupElement> {
        let mut syllables = Vec::new();
        if self.a[j] != 0 {
            syllables.push((j, p.get() as i64 * self.a[j] as i64));
        }
        let mut r = GroupElement::from_syllables(syllables)?;
        let xj = GroupElement::generator(j);
        for k in (0..self.d).filter(|&k| k != j) {
            if self.ajk[j][k] != 0 {
                let c = GroupElement::commutator(&xj, &GroupElement::generator(k));
                r = r.mul(&c.pow(self.ajk[j][k] as i64));
            }
        }
        Ok(r)
    }
}

pub fn koch_presentation(data: &KochData, p: Prime) -> Result<Presentation> {
    data.validate(p)?;
    let relators = (0..data.m)
        .map(|j| data.relator(j, p))
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(p, Alphabet::indexed(data.d)?, relators)
}

/// A finite simple graph on named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Alphabet,
    edges: Vec<(Letter, Letter)>,
}

impl Graph {
    /// Edges are stored as `(i, k)` with `i < k`, in input order.
    pub fn new(vertices: Alphabet, edges: Vec<(Letter, Letter)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = Vec::with_capacity(edges.len());
        for (i, k) in edges {
            if i >= n || k >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {k}) uses a missing vertex")));
            }
            if i == k {
                return Err(Error::InvalidGraph(format!("loop at `{}`", vertices.name(i))));
            }
            let e = (i.min(k), i.max(k));
            if seen.contains(&e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {}-{}",
                    vertices.name(e.0),
                    vertices.name(e.1)
                )));
            }
            seen.push(e);
        }
        Ok(Graph { vertices, edges: seen })
    }

    pub fn from_names<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let alphabet = Alphabet::uniform(vertices.iter().map(|v| v.as_ref().to_string()))?;
        let find = |s: &S| {
            alphabet
                .index_of(s.as_ref())
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{}`", s.as_ref())))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, edges)
    }

    /// The cycle `x1 - x2 - ... - xn - x1`.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(Alphabet::indexed(n)?, edges)
    }

    /// The path `x1 - x2 - ... - xn`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(Alphabet::indexed(n)?, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).collect();
        Self::new(Alphabet::indexed(n)?, edges)
    }

    pub fn vertices(&self) -> &Alphabet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> &[(Letter, Letter)] {
        &self.edges
    }

    pub fn has_edge(&self, i: Letter, k: Letter) -> bool {
        self.edges.contains(&(i.min(k), i.max(k)))
    }

    pub fn neighbors(&self, v: Letter) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .edges
            .iter()
            .filter_map(|&(i, k)| match v {
                _ if v == i => Some(k),
                _ if v == k => Some(i),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// One commutator `[x_i, x_k]`, `i < k`, per edge.
pub fn raag_presentation(graph: &Graph, p: Prime) -> Result<Presentation> {
    if graph.edges.is_empty() {
        return Err(Error::InvalidGraph("at least one edge is required".into()));
    }
    let relators = graph
        .edges
        .iter()
        .map(|&(i, k)| GroupElement::commutator(&GroupElement::generator(i), &GroupElement::generator(k)))
        .collect();
    Presentation::new(p, graph.vertices.clone(), relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::coefficient;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn w(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    fn square() -> Presentation {
        raag_presentation(&Graph::cycle(4).unwrap(), p(3)).unwrap()
    }

    #[test]
    fn koch_cycle_relators_are_commutators() {
        let mut data = KochData::zeros(4, 4).unwrap();
        for j in 0..4 {
            data.set_ajk(j, (j + 1) % 4, 1).unwrap();
        }
        let pres = koch_presentation(&data, p(3)).unwrap();
        let a = Alphabet::indexed(4).unwrap();
        let expected = ["[x1,x2]", "[x2,x3]", "[x3,x4]", "[x4,x1]"];
        for (r, e) in pres.relators().iter().zip(expected) {
            assert_eq!(r, &parse_relator(e, &a).unwrap());
        }
    }

    #[test]
    fn koch_power_and_commutator() {
        let mut data = KochData::zeros(2, 1).unwrap();
        data.set_a(0, 1);
        data.set_ajk(0, 1, 1).unwrap();
        let pres = koch_presentation(&data, p(2)).unwrap();
        let a = Alphabet::indexed(2).unwrap();
        assert_eq!(pres.relators()[0], parse_relator("x1^2*[x1,x2]", &a).unwrap());
    }

    #[test]
    fn koch_degenerate_and_out_of_range() {
        let zero = KochData::zeros(3, 2).unwrap();
        assert_eq!(koch_presentation(&zero, p(3)), Err(Error::IdentityRelator(0)));
        let mut big = KochData::zeros(2, 1).unwrap();
        big.set_ajk(0, 1, 3).unwrap();
        assert!(matches!(koch_presentation(&big, p(3)), Err(Error::InvalidKochData(_))));
        assert!(KochData::zeros(2, 3).is_err());
    }

    #[test]
    fn raag_relator_counts() {
        assert_eq!(square().m(), 4);
        assert_eq!(raag_presentation(&Graph::path(3).unwrap(), p(2)).unwrap().m(), 2);
        let edge = raag_presentation(&Graph::path(2).unwrap(), p(2)).unwrap();
        assert_eq!(edge.relators()[0], parse_relator("[x1,x2]", &Alphabet::indexed(2).unwrap()).unwrap());
        let empty = Graph::new(Alphabet::indexed(2).unwrap(), vec![]).unwrap();
        assert!(matches!(raag_presentation(&empty, p(2)), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn graph_validation() {
        let a = Alphabet::indexed(3).unwrap();
        assert!(Graph::new(a.clone(), vec![(0, 0)]).is_err());
        assert!(Graph::new(a.clone(), vec![(0, 1), (1, 0)]).is_err());
        let g = Graph::new(a, vec![(2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
        assert!(!g.is_connected());
        assert!(Graph::cycle(5).unwrap().is_connected());
    }

    #[test]
    fn entry_degrees() {
        let e = square().entry_degree().unwrap();
        assert_eq!((e.n, e.uniform), (2, true));
        assert_eq!(square().cap(), 6);
        let a = Alphabet::indexed(2).unwrap();
        let mixed = Presentation::parse(p(3), a.clone(), &["[x1,x2]", "[x1,[x1,x2]]"]).unwrap();
        let e = mixed.entry_degree().unwrap();
        assert_eq!((e.n, e.uniform), (2, false));
        let power = Presentation::parse(p(3), a, &["x1^3"]).unwrap();
        assert_eq!(power.entry_degree().unwrap().n, 3);
    }

    #[test]
    fn minimality() {
        assert_eq!(square().validate_minimal().unwrap(), MinimalityReport::Certified { degree: 2, rank: 4 });
        let a = Alphabet::indexed(2).unwrap();
        let dep = Presentation::parse(p(5), a.clone(), &["[x1,x2]", "[x1,x2]^2"]).unwrap();
        assert!(matches!(dep.validate_minimal().unwrap(), MinimalityReport::Uncertified { .. }));
        let gen = Presentation::parse(p(5), a, &["x1"]).unwrap();
        assert_eq!(
            gen.validate_minimal(),
            Err(Error::NotMinimal { relator: 0, generator: "x1".into(), coefficient: 1 })
        );
    }

    #[test]
    fn compatibility() {
        let sq = square();
        assert!(sq.is_compatible(&w(&[1, 0])).unwrap());
        assert!(!sq.is_compatible(&w(&[0, 1, 2])).unwrap());
        assert_eq!(sq.compatible_words(2).unwrap().len(), 16);
        let three = sq.compatible_words(3).unwrap();
        assert!(three.len() < 64);
        for word in &three {
            assert!(sq.is_compatible(word).unwrap());
        }
        let a = Alphabet::indexed(3).unwrap();
        let deep = Presentation::parse(p(3), a, &["[x1,[x2,x3]]", "[x2,[x1,x3]]"]).unwrap();
        assert_eq!(deep.compatible_words(3).unwrap().len(), 27);
    }

    #[test]
    fn compatibility_is_monotone_under_relator_removal() {
        let sq = square();
        let fewer = sq.with_relators(sq.relators()[..2].to_vec()).unwrap();
        for word in sq.compatible_words(3).unwrap() {
            assert!(fewer.is_compatible(&word).unwrap());
        }
    }

    #[test]
    fn koch_coefficients() {
        let mut data = KochData::zeros(3, 2).unwrap();
        data.set_ajk(0, 1, 2).unwrap();
        data.set_ajk(1, 2, 1).unwrap();
        let pres = koch_presentation(&data, p(5)).unwrap();
        let r1 = &pres.relators()[0];
        assert_eq!(coefficient(r1, &w(&[0, 1]), 3, p(5)).unwrap(), 2);
        assert_eq!(coefficient(r1, &w(&[1, 0]), 3, p(5)).unwrap(), 3);
    }
}
