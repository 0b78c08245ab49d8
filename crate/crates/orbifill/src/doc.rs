//! JSON documents read by the CLI: group documents, span documents and
//! filling profiles.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use orbifill_core::group::GroupPresentation;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// `{ "name", "dimension", "conductor", "generators" }` with every matrix
/// entry a cyclotomic literal in `z = ζ_conductor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub name: String,
    pub dimension: usize,
    pub conductor: u32,
    pub generators: Vec<Vec<Vec<String>>>,
}

impl GroupDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error(origin, &e))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    /// Same document with whitespace removed from every entry. Two documents
    /// that differ only in layout or entry spacing canonicalize identically.
    pub fn canonical(&self) -> Self {
        let strip = |s: &String| s.chars().filter(|c| !c.is_whitespace()).collect();
        GroupDocument {
            generators: self
                .generators
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(strip).collect()).collect())
                .collect(),
            ..self.clone()
        }
    }

    /// Compact JSON of the canonical document, keys in sorted order.
    pub fn canonical_json(&self) -> String {
        let v = serde_json::to_value(self.canonical()).expect("documents serialize");
        serde_json::to_string(&v).expect("values serialize")
    }

    /// Hex SHA-256 of [`canonical_json`](Self::canonical_json).
    pub fn digest(&self) -> String {
        sha256_hex(self.canonical_json().as_bytes())
    }

    pub fn presentation(&self) -> Result<GroupPresentation, CliError> {
        GroupPresentation::from_literals(self.name.clone(), self.dimension, self.conductor, &self.generators)
            .map_err(CliError::from_group)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn json_error(origin: &str, e: &serde_json::Error) -> CliError {
    CliError::Input(format!("{origin}: line {} column {}: {e}", e.line(), e.column()))
}

/// A group inside a span document: an explicit table, a library name such
/// as `cyclic:4`, or a group document path relative to the span document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupRef {
    Table(Vec<Vec<usize>>),
    Library(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanSpec {
    pub left: String,
    pub middle: String,
    pub right: String,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

/// Named groups plus a chain of spans; consecutive spans are composed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDocument {
    pub groups: BTreeMap<String, GroupRef>,
    pub spans: Vec<SpanSpec>,
}

impl SpanDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error(origin, &e))
    }
}

/// Input to `cr filling`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillingDocument {
    pub betti: Vec<u64>,
    /// Group document paths, relative to the profile.
    #[serde(default)]
    pub singularities: Vec<PathBuf>,
    #[serde(default = "default_ring")]
    pub coefficient: String,
    #[serde(default)]
    pub torsion_note: Option<String>,
}

fn default_ring() -> String {
    "Q".into()
}

impl FillingDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error(origin, &e))
    }
}

/// Digest of any JSON text after re-serialization with sorted keys.
pub fn json_digest(text: &str, origin: &str) -> Result<String, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| json_error(origin, &e))?;
    Ok(sha256_hex(serde_json::to_string(&v).expect("values serialize").as_bytes()))
}
