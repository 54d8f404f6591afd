//! JSON spec file:
//!
//! ```json
//! { "n": 6, "k": 2, "beta": "1",
//!   "nodes": [ { "id": 1, "alpha": 2, "surviving_sets": [[4, 6], [2, 6]] }, ... ] }
//! ```
//!
//! Rationals are integers or `"p/q"` strings. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use super::{DssSpec, NodeSpec};
use crate::rational::JsonRational;

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message} (line {line}, column {column})")]
pub struct ParseError {
    /// Dotted path of the offending field, `.` for the document root.
    pub path: String,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    n: usize,
    k: usize,
    beta: JsonRational,
    nodes: Vec<NodeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeFile {
    id: usize,
    alpha: JsonRational,
    surviving_sets: Vec<Vec<usize>>,
}

impl DssSpec {
    /// Parses the JSON spec file. Only syntax is checked here; see [`DssSpec::validate`].
    pub fn from_json(text: &str) -> Result<DssSpec, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: SpecFile = serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            ParseError {
                path,
                message: strip_position(&inner.to_string()),
                line: inner.line(),
                column: inner.column(),
            }
        })?;
        Ok(DssSpec {
            n: file.n,
            k: file.k,
            beta: file.beta.0,
            nodes: file
                .nodes
                .into_iter()
                .map(|node| NodeSpec {
                    id: node.id,
                    alpha: node.alpha.0,
                    surviving_sets: node.surviving_sets,
                })
                .collect(),
        })
    }

    /// Pretty-printed JSON with rationals in lowest terms.
    pub fn to_json(&self) -> String {
        let file = SpecFile {
            n: self.n,
            k: self.k,
            beta: JsonRational(self.beta.clone()),
            nodes: self
                .nodes
                .iter()
                .map(|node| NodeFile {
                    id: node.id,
                    alpha: JsonRational(node.alpha.clone()),
                    surviving_sets: node.surviving_sets.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("spec serialization cannot fail")
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(idx) => message[..idx].to_string(),
        None => message.to_string(),
    }
}
