//! Pair-file format: a JSON object `{"n": ..., "A": [...], "B": [...]}`
//! where A and B are lists of length-n number arrays spanning the two
//! subspaces.

use serde::{Deserialize, Serialize};
use subangle::{Dim, SpanningSet};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspacePairSpec {
    pub n: usize,
    #[serde(rename = "A")]
    pub a_span: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b_span: Vec<Vec<f64>>,
}

impl SubspacePairSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: SubspacePairSpec = serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("invalid pair file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Canonical rendering: pretty JSON plus a trailing newline.
    /// Parsing the output reproduces the value bit for bit.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("pair spec serializes");
        text.push('\n');
        text
    }

    pub fn r(&self) -> usize {
        self.a_span.len()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        Dim::new(self.n).map_err(|e| CliError::Parse(e.to_string()))?;
        if self.a_span.is_empty() || self.b_span.is_empty() {
            return Err(CliError::Parse("spans A and B must be nonempty".into()));
        }
        if self.a_span.len() != self.b_span.len() {
            return Err(CliError::GradeMismatch(format!(
                "span A has {} vectors, span B has {}",
                self.a_span.len(),
                self.b_span.len()
            )));
        }
        if self.a_span.len() > self.n {
            return Err(CliError::Parse(format!(
                "{} spanning vectors exceed the space dimension {}",
                self.a_span.len(),
                self.n
            )));
        }
        for (label, span) in [("A", &self.a_span), ("B", &self.b_span)] {
            for (i, v) in span.iter().enumerate() {
                if v.len() != self.n {
                    return Err(CliError::Parse(format!(
                        "{label}[{i}] has {} components, expected {}",
                        v.len(),
                        self.n
                    )));
                }
                if v.iter().any(|c| !c.is_finite()) {
                    return Err(CliError::Parse(format!(
                        "{label}[{i}] has a non-finite component"
                    )));
                }
                if v.iter().all(|&c| c == 0.0) {
                    return Err(CliError::Degenerate(format!("{label}[{i}] is zero")));
                }
            }
        }
        Ok(())
    }

    pub fn spanning_sets(&self) -> Result<(SpanningSet, SpanningSet), CliError> {
        let dim = Dim::new(self.n).map_err(CliError::from)?;
        let a = SpanningSet::new(dim, self.a_span.clone())?;
        let b = SpanningSet::new(dim, self.b_span.clone())?;
        Ok((a, b))
    }
}
