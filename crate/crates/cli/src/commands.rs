use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use mild_core::files::{FormsFile, GraphFile, KochFile, PresentationFile};
use mild_core::fplinalg::row_reduce;
use mild_core::magnus::{expand, zassenhaus_degree};
use mild_core::mildness::{
    build_coeff_matrix, check_main_criterion, koch_circuit_check, partition_criterion, raag_bipartite_check,
    strong_freeness_oracle, CircuitVerdict, CriterionFailure, MainVerdict, MildnessCertificate, OracleVerdict,
    PartitionFailure, PartitionVerdict, RaagVerdict,
};
use mild_core::parse::{parse_order, parse_polynomial, parse_relator, parse_word, parse_word_list};
use mild_core::presentation::{koch_presentation, Presentation};
use mild_core::words::{lyndon_reduce, lyndon_words, shuffle, Alphabet, Freeness, OrderSpec, ViolationKind, Word};
use mild_core::{FormalSum, Prime, RowOp};

use crate::args::{Cli, Command};
use crate::report::Report;

/// Anything that should end with exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<mild_core::Error> for InputError {
    fn from(e: mild_core::Error) -> Self {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

struct Loaded<T> {
    value: T,
    sha256: String,
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<Loaded<T>> {
    let bytes =
        std::fs::read(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| {
        InputError(format!(
            "parse error in {} at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    Ok(Loaded {
        value,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

fn no_prime_override(cli: &Cli, path: &Path) -> Result<()> {
    match cli.prime {
        Some(_) => Err(InputError(format!(
            "--prime cannot override the prime set by {}",
            path.display()
        ))),
        None => Ok(()),
    }
}

fn no_max_degree(cli: &Cli, command: &str) -> Result<()> {
    match cli.max_degree {
        Some(_) => Err(InputError(format!("--max-degree is not used by `{command}`"))),
        None => Ok(()),
    }
}

fn load_presentation(cli: &Cli, path: &Path) -> Result<(Presentation, String)> {
    no_prime_override(cli, path)?;
    let file: Loaded<PresentationFile> = load(path)?;
    Ok((file.value.to_presentation()?, file.sha256))
}

fn cli_prime(cli: &Cli, default: Option<u64>) -> Result<Prime> {
    match cli.prime.or(default) {
        Some(q) => Ok(Prime::new(q)?),
        None => Err(InputError("--prime is required".into())),
    }
}

fn names(alphabet: &Alphabet, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| alphabet.format_word(w)).collect()
}

fn format_op(op: &RowOp) -> String {
    match *op {
        RowOp::Swap(s, t) => format!("swap(r{}, r{})", s + 1, t + 1),
        RowOp::Scale(s, k) => format!("r{} *= {k}", s + 1),
        RowOp::AddMultiple(s, t, k) => format!("r{} += {k}*r{}", s + 1, t + 1),
    }
}

fn format_sum(alphabet: &Alphabet, terms: impl IntoIterator<Item = (Word, i64)>) -> String {
    let mut out = String::new();
    for (w, c) in terms.into_iter().filter(|&(_, c)| c != 0) {
        let name = alphabet.format_word(&w);
        let body = if c.abs() == 1 { name } else { format!("{}*{name}", c.abs()) };
        match (out.is_empty(), c < 0) {
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

fn certificate_json(cert: &MildnessCertificate, alphabet: &Alphabet) -> Value {
    json!({
        "order": cert.order.describe(alphabet),
        "degree": cert.degree,
        "a_size": cert.a_size,
        "b_size": cert.b_size,
        "row_operations": cert.log.iter().map(format_op).collect::<Vec<_>>(),
        "transformed_relators": cert.transformed_relators.iter().map(|g| g.format(alphabet)).collect::<Vec<_>>(),
        "pivot_words": names(alphabet, &cert.pivot_words),
        "initial_forms": cert.initial_forms.iter().map(|f| f.format(alphabet, &cert.order)).collect::<Vec<_>>(),
        "leading_terms": names(alphabet, cert.anick.leading_terms()),
        "threshold": alphabet.format_word(&cert.threshold),
        "rank": cert.rank,
        "oracle_depth": cert.oracle_depth,
    })
}

fn certificate_lines(report: &mut Report, cert: &MildnessCertificate, alphabet: &Alphabet) {
    report.line(format!("order: {}", cert.order.describe(alphabet)));
    report.line(format!("rank: {} (|A| = {}, |B| = {})", cert.rank, cert.a_size, cert.b_size));
    if !cert.log.is_empty() {
        let ops: Vec<String> = cert.log.iter().map(format_op).collect();
        report.line(format!("row operations: {}", ops.join(", ")));
    }
    report.line(format!("pivot words: {}", names(alphabet, &cert.pivot_words).join(", ")));
    for (j, f) in cert.initial_forms.iter().enumerate() {
        report.line(format!("I(r{}) = {}", j + 1, f.format(alphabet, &cert.order)));
    }
}

/// Attaches a certificate, running the oracle when a depth is given.
fn certified(mut cert: MildnessCertificate, alphabet: &Alphabet, depth: Option<usize>) -> Result<Report> {
    let mut report = Report::new("MildCertified", true);
    if let Some(n) = depth {
        let oracle = cert.confirm_with_oracle(alphabet.weights(), n)?;
        report.dims = Some(oracle.dims);
        report.series = Some(oracle.series);
        if oracle.verdict != OracleVerdict::EqualUpToN {
            report.line(format!("warning: oracle disagrees: {}", oracle_verdict(&oracle.verdict)));
        }
    }
    certificate_lines(&mut report, &cert, alphabet);
    report.certificate = Some(certificate_json(&cert, alphabet));
    Ok(report)
}

fn failure(failure: &CriterionFailure, alphabet: &Alphabet, b: &[Word]) -> Report {
    let mut report = Report::new(format!("Failed({})", failure.condition()), false);
    let witness = match failure {
        CriterionFailure::NotCombinatoriallyFree(Freeness::Violation { kind, i, j, factor }) => {
            let kind = match kind {
                ViolationKind::MiddleFactor => "middle_factor",
                ViolationKind::Overlap => "overlap",
            };
            report.line(format!(
                "B is not combinatorially free: {kind} between {} and {} at {}",
                alphabet.format_word(&b[*i]),
                alphabet.format_word(&b[*j]),
                alphabet.format_word(factor)
            ));
            json!({"condition": "a", "kind": kind, "first": alphabet.format_word(&b[*i]),
                   "second": alphabet.format_word(&b[*j]), "factor": alphabet.format_word(factor)})
        }
        CriterionFailure::NotCombinatoriallyFree(Freeness::Free) => json!({"condition": "a"}),
        CriterionFailure::Closure { threshold, outside } => {
            report.line(format!(
                "{} has a nonzero class, lies outside B and is not below {}",
                alphabet.format_word(outside),
                alphabet.format_word(threshold)
            ));
            json!({"condition": "b", "threshold": alphabet.format_word(threshold),
                   "outside": alphabet.format_word(outside)})
        }
        CriterionFailure::RankDeficient { rank, m, witness } => {
            report.line(format!("rank {rank} < m = {m}; relator combination {witness:?} vanishes on B"));
            json!({"condition": "c", "rank": rank, "m": m, "relator_combination": witness})
        }
    };
    report.witness = Some(witness);
    report
}

fn oracle_verdict(v: &OracleVerdict) -> String {
    match v {
        OracleVerdict::EqualUpToN => "EqualUpToN".into(),
        OracleVerdict::FirstGapAt { n, a, b } => format!("FirstGapAt({n},{a},{b})"),
    }
}

fn parse_parts(text: &str, alphabet: &Alphabet) -> Result<Vec<Vec<usize>>> {
    let mut parts = Vec::new();
    for (j, chunk) in text.split('|').enumerate() {
        let (label, body) = chunk
            .split_once(':')
            .ok_or_else(|| InputError(format!("part `{chunk}` must look like `Y{j}:x1,x2`")))?;
        if label.trim() != format!("Y{j}") {
            return Err(InputError(format!("expected label Y{j}, found `{}`", label.trim())));
        }
        let letters = body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                alphabet
                    .index_of(name)
                    .ok_or_else(|| InputError(format!("unknown generator `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        parts.push(letters);
    }
    Ok(parts)
}

fn parse_ks(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| InputError(format!("`{}` is not a multiplicity", s.trim())))
        })
        .collect()
}

fn generators(text: &str) -> Result<Alphabet> {
    Ok(Alphabet::uniform(text.split(',').map(str::trim).filter(|s| !s.is_empty()))?)
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Expand { pres, element } => {
            let (pres_value, sha) = load_presentation(cli, &pres.pres)?;
            let alphabet = pres_value.alphabet();
            let cap = cli.max_degree.unwrap_or(pres_value.cap());
            let g = parse_relator(element, alphabet)?;
            let s = expand(&g, pres_value.d(), pres_value.prime(), cap)?;
            let text = s.format(alphabet);
            let mut report = Report::new("Computed", true);
            report.input_sha256 = Some(sha);
            report.line(text.clone());
            report.result = Some(json!({
                "element": g.format(alphabet),
                "max_degree": cap,
                "expansion": text,
                "terms": s.terms().map(|(w, c)| json!([alphabet.format_word(&w), c])).collect::<Vec<_>>(),
            }));
            Ok(report)
        }
        Command::Zassenhaus { pres, element } => {
            let (mut p, sha) = load_presentation(cli, &pres.pres)?;
            if let Some(n) = cli.max_degree {
                p = p.with_cap(n)?;
            }
            let alphabet = p.alphabet().clone();
            let mut report = Report::new("Computed", true);
            report.input_sha256 = Some(sha);
            if let Some(text) = element {
                let g = parse_relator(text, &alphabet)?;
                let z = zassenhaus_degree(&g, p.d(), p.prime(), p.cap())?;
                report.line(format!("{}: {z}", g.format(&alphabet)));
                report.result = Some(json!({"element": g.format(&alphabet), "degree": z.to_string(), "max_degree": p.cap()}));
                return Ok(report);
            }
            let degrees = p.zassenhaus_degrees()?;
            for (j, (r, z)) in p.relators().iter().zip(&degrees).enumerate() {
                report.line(format!("r{} = {}: {z}", j + 1, r.format(&alphabet)));
            }
            let minimality = match p.validate_minimal() {
                Ok(m) => serde_json::to_value(m).expect("serializable"),
                Err(e) => json!({"status": "not_minimal", "reason": e.to_string()}),
            };
            report.line(format!("minimality: {minimality}"));
            report.result = Some(json!({
                "max_degree": p.cap(),
                "degrees": degrees.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "minimality": minimality,
            }));
            Ok(report)
        }
        Command::Matrix { pres, b, order } => {
            no_max_degree(cli, "matrix")?;
            let (p, sha) = load_presentation(cli, &pres.pres)?;
            let alphabet = p.alphabet();
            let order = match order {
                Some(o) => parse_order(o, alphabet)?,
                None => OrderSpec::length_lex(p.d()),
            };
            let b = parse_word_list(b, alphabet)?;
            let m = build_coeff_matrix(&p, &b, &order)?;
            let rank = row_reduce(&m.matrix).rank;
            let mut report = Report::new("Computed", true);
            report.input_sha256 = Some(sha);
            report.line(format!("columns: {}", names(alphabet, &m.columns).join(" ")));
            for row in m.matrix.to_rows() {
                let cells: Vec<String> = row.iter().map(|&v| p.prime().signed(v).to_string()).collect();
                report.line(format!("[{}]", cells.join(", ")));
            }
            report.line(format!("rank: {rank}"));
            report.result = Some(json!({
                "order": order.describe(alphabet),
                "columns": names(alphabet, &m.columns),
                "rows": m.matrix.to_rows(),
                "rank": rank,
            }));
            Ok(report)
        }
        Command::Check { pres, order, a, b } => {
            let (p, sha) = load_presentation(cli, &pres.pres)?;
            let alphabet = p.alphabet().clone();
            let order = parse_order(order, &alphabet)?;
            let a = match a {
                Some(text) => parse_word_list(text, &alphabet)?,
                None => p.compatible_words(p.entry_degree()?.n)?,
            };
            let b = parse_word_list(b, &alphabet)?;
            let mut report = match check_main_criterion(&p, &order, &a, &b)? {
                MainVerdict::Certified(cert) => certified(*cert, &alphabet, cli.max_degree)?,
                MainVerdict::Failed(f) => failure(&f, &alphabet, &b),
            };
            report.input_sha256 = Some(sha);
            Ok(report)
        }
        Command::Partition { pres, parts, k } => {
            let (p, sha) = load_presentation(cli, &pres.pres)?;
            let alphabet = p.alphabet().clone();
            let parts = parse_parts(parts, &alphabet)?;
            let ks = parse_ks(k)?;
            let mut report = match partition_criterion(&p, &parts, &ks)? {
                PartitionVerdict::Certified(cert) => certified(*cert, &alphabet, cli.max_degree)?,
                PartitionVerdict::Failed(PartitionFailure::ConditionI { word, part }) => {
                    let mut r = Report::new("Failed(i)", false);
                    let w = alphabet.format_word(&word);
                    r.line(format!("{w} has more than k_{part} letters from Y_{part} and a nonzero class"));
                    r.witness = Some(json!({"condition": "i", "word": w, "part": part}));
                    r
                }
                PartitionVerdict::Failed(PartitionFailure::ConditionII { rank, m, witness }) => {
                    let mut r = Report::new("Failed(ii)", false);
                    r.line(format!("rank {rank} < m = {m} on the positional product; combination {witness:?}"));
                    r.witness = Some(json!({"condition": "ii", "rank": rank, "m": m, "relator_combination": witness}));
                    r
                }
                PartitionVerdict::Failed(PartitionFailure::Main(f)) => failure(&f, &alphabet, &[]),
            };
            report.input_sha256 = Some(sha);
            Ok(report)
        }
        Command::Circuit { koch } => {
            no_prime_override(cli, koch)?;
            let file: Loaded<KochFile> = load(koch)?;
            let (data, p) = file.value.to_data()?;
            let pres = koch_presentation(&data, p)?;
            let alphabet = pres.alphabet().clone();
            let mut report = match koch_circuit_check(&data, p)? {
                CircuitVerdict::MildCertified { certificate } => certified(*certificate, &alphabet, cli.max_degree)?,
                CircuitVerdict::Inapplicable { reason } => {
                    let mut r = Report::new("Inapplicable", false);
                    r.line(reason.clone());
                    r.witness = Some(json!({"reason": reason}));
                    r
                }
            };
            report.text.insert(
                0,
                format!(
                    "relators: {}",
                    pres.relators().iter().map(|r| r.format(&alphabet)).collect::<Vec<_>>().join(", ")
                ),
            );
            report.input_sha256 = Some(file.sha256);
            Ok(report)
        }
        Command::Raag { graph } => {
            let file: Loaded<GraphFile> = load(graph)?;
            let g = file.value.to_graph()?;
            let p = cli_prime(cli, Some(2))?;
            let alphabet = g.vertices().clone();
            let mut report = match raag_bipartite_check(&g, p)? {
                RaagVerdict::MildCertified { y1, y2, certificate } => {
                    let mut r = certified(*certificate, &alphabet, cli.max_degree)?;
                    let class = |ys: &[usize]| ys.iter().map(|&v| alphabet.name(v).to_string()).collect::<Vec<_>>();
                    r.text.insert(0, format!("Y1 = {{{}}}, Y2 = {{{}}}", class(&y1).join(", "), class(&y2).join(", ")));
                    if let Some(Value::Object(map)) = r.certificate.as_mut() {
                        map.insert("y1".into(), json!(class(&y1)));
                        map.insert("y2".into(), json!(class(&y2)));
                    }
                    r
                }
                RaagVerdict::Inapplicable { odd_cycle } => {
                    let cycle: Vec<&str> = odd_cycle.iter().map(|&v| alphabet.name(v)).collect();
                    let mut r = Report::new("Inapplicable", false);
                    r.line(format!("odd cycle: {}", cycle.join(" - ")));
                    r.witness = Some(json!({"odd_cycle": cycle}));
                    r
                }
            };
            report.input_sha256 = Some(file.sha256);
            Ok(report)
        }
        Command::Oracle { forms } => {
            no_prime_override(cli, forms)?;
            let file: Loaded<FormsFile> = load(forms)?;
            let (alphabet, polys) = file.value.to_forms()?;
            let depth = match cli.max_degree {
                Some(n) => n,
                None => polys.iter().map(|f| f.degree()).max().unwrap_or(0) as usize + 3,
            };
            let r = strong_freeness_oracle(&polys, alphabet.weights(), depth)?;
            let verdict = oracle_verdict(&r.verdict);
            let mut report = Report::new(verdict, r.verdict == OracleVerdict::EqualUpToN);
            report.input_sha256 = Some(file.sha256);
            report.line(format!("depth: {depth}"));
            report.line(format!("dims:   {:?}", r.dims));
            report.line(format!("series: {:?}", r.series));
            report.line(format!(
                "a_n >= b_n: {}; H(z)P(z) >= 1: {}",
                r.coefficientwise_inequality, r.product_inequality
            ));
            if let OracleVerdict::FirstGapAt { n, a, b } = r.verdict {
                report.witness = Some(json!({"degree": n, "dim": a, "series": b}));
            }
            report.result = Some(json!({
                "depth": depth,
                "coefficientwise_inequality": r.coefficientwise_inequality,
                "product_inequality": r.product_inequality,
            }));
            report.dims = Some(r.dims);
            report.series = Some(r.series);
            Ok(report)
        }
        Command::Lyndon { generators: gens, length, order, reduce } => {
            no_max_degree(cli, "lyndon")?;
            let alphabet = generators(gens)?;
            let order = match order {
                Some(o) => parse_order(o, &alphabet)?,
                None => OrderSpec::lex(alphabet.len()),
            };
            let mut report = Report::new("Computed", true);
            match (reduce, length) {
                (Some(text), None) => {
                    let p = cli_prime(cli, None)?;
                    let sum = FormalSum::from_terms(parse_polynomial(text, &alphabet)?)?;
                    let coords = lyndon_reduce(&sum, p, &order)?;
                    let shown = format_sum(&alphabet, coords.iter().map(|(w, c)| (w.clone(), p.signed(*c))));
                    report.line(shown.clone());
                    report.result = Some(json!({
                        "order": order.describe(&alphabet),
                        "reduced": shown,
                        "coordinates": coords.iter().map(|(w, c)| json!([alphabet.format_word(w), c])).collect::<Vec<_>>(),
                    }));
                }
                (None, Some(n)) => {
                    let words = lyndon_words(&alphabet, *n, &order)?;
                    report.line(format!("{} Lyndon words", words.len()));
                    report.line(names(&alphabet, &words).join(" "));
                    report.result = Some(json!({"order": order.describe(&alphabet), "length": n, "words": names(&alphabet, &words)}));
                }
                _ => return Err(InputError("give exactly one of --length and --reduce".into())),
            }
            Ok(report)
        }
        Command::Shuffle { generators: gens, u, v } => {
            no_max_degree(cli, "shuffle")?;
            let alphabet = generators(gens)?;
            let (u, v) = (parse_word(u, &alphabet)?, parse_word(v, &alphabet)?);
            let s = shuffle(&u, &v)?;
            let shown = format_sum(&alphabet, s.iter().map(|(w, c)| (w.clone(), c)));
            let mut report = Report::new("Computed", true);
            report.line(shown.clone());
            report.result = Some(json!({
                "shuffle": shown,
                "terms": s.iter().map(|(w, c)| json!([alphabet.format_word(w), c])).collect::<Vec<_>>(),
            }));
            Ok(report)
        }
    }
}
