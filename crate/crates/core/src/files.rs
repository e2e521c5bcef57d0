//! JSON input formats.
//!
//! Koch files index generators from 1, as in `x1, ..., xd`; everything else
//! refers to generators by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::mildness::HomogeneousPoly;
use crate::parse::parse_polynomial;
use crate::presentation::{Graph, KochData, Presentation};
use crate::words::Alphabet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    #[serde(default = "unit_weight")]
    pub weight: u32,
}

fn unit_weight() -> u32 {
    1
}

fn alphabet_of(generators: &[GeneratorEntry]) -> Result<Alphabet> {
    Alphabet::new(
        generators.iter().map(|g| g.name.clone()).collect(),
        generators.iter().map(|g| g.weight).collect(),
    )
}

/// `{"prime", "generators": [{"name", "weight"?}], "relators": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub prime: u64,
    pub generators: Vec<GeneratorEntry>,
    pub relators: Vec<String>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation> {
        Presentation::parse(Prime::new(self.prime)?, alphabet_of(&self.generators)?, &self.relators)
    }
}

/// `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_names(&self.vertices, &self.edges)
    }
}

/// `{"prime", "d", "m", "a": {"j": a_j}, "ajk": [[j, k, a_jk], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KochFile {
    pub prime: u64,
    pub d: usize,
    pub m: usize,
    #[serde(default)]
    pub a: BTreeMap<String, i64>,
    #[serde(default)]
    pub ajk: Vec<(usize, usize, i64)>,
}

impl KochFile {
    pub fn to_data(&self) -> Result<(KochData, Prime)> {
        let p = Prime::new(self.prime)?;
        let mut data = KochData::zeros(self.d, self.m)?;
        let index = |j: usize, what: &str| {
            if j == 0 || j > self.d {
                Err(Error::InvalidKochData(format!("{what} index {j} is outside 1..={}", self.d)))
            } else {
                Ok(j - 1)
            }
        };
        for (key, &v) in &self.a {
            let j: usize = key
                .parse()
                .map_err(|_| Error::InvalidKochData(format!("key `{key}` of a is not an index")))?;
            let j = index(j, "a")?;
            if j >= self.m {
                return Err(Error::InvalidKochData(format!("a_{} given but m = {}", j + 1, self.m)));
            }
            data.set_a(j, p.reduce(v));
        }
        for &(j, k, v) in &self.ajk {
            let (j, k) = (index(j, "ajk")?, index(k, "ajk")?);
            data.set_ajk(j, k, p.reduce(v))?;
        }
        data.validate(p)?;
        Ok((data, p))
    }
}

/// `{"prime", "generators": [...], "forms": ["x1x2 - x2x1", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsFile {
    pub prime: u64,
    pub generators: Vec<GeneratorEntry>,
    pub forms: Vec<String>,
}

impl FormsFile {
    pub fn to_forms(&self) -> Result<(Alphabet, Vec<HomogeneousPoly>)> {
        let p = Prime::new(self.prime)?;
        let alphabet = alphabet_of(&self.generators)?;
        let forms = self
            .forms
            .iter()
            .map(|f| HomogeneousPoly::from_terms(p, alphabet.weights(), parse_polynomial(f, &alphabet)?))
            .collect::<Result<Vec<_>>>()?;
        Ok((alphabet, forms))
    }
}
