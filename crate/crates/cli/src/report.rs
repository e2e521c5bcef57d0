use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one command. The JSON form is deterministic: maps are ordered
/// and no timings are recorded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub version: String,
    /// SHA-256 of the input file, if any.
    pub input_sha256: Option<String>,
    pub verdict: String,
    pub certificate: Option<Value>,
    pub witness: Option<Value>,
    pub dims: Option<Vec<u64>>,
    pub series: Option<Vec<i128>>,
    /// Command-specific output.
    pub result: Option<Value>,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub success: bool,
}

impl Report {
    pub fn new(verdict: impl Into<String>, success: bool) -> Self {
        Report {
            command: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256: None,
            verdict: verdict.into(),
            certificate: None,
            witness: None,
            dims: None,
            series: None,
            result: None,
            text: Vec::new(),
            success,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.success {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict);
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
