//! JSON file format for chain complexes.
//!
//! ```json
//! {"name": "rp2", "reduced": true,
//!  "ranks": {"1": 1, "2": 1},
//!  "boundaries": {"2": [[2]]}}
//! ```
//!
//! Boundary key `n` is the matrix of `C_n -> C_{n-1}`, row-major with
//! `ranks(n-1)` rows and `ranks(n)` columns. Absent keys mean zero.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{ChainComplex, ChainError};
use crate::abelian::IntMatrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainComplexFile {
    pub name: String,
    pub reduced: bool,
    #[serde(default)]
    pub ranks: BTreeMap<String, usize>,
    #[serde(default)]
    pub boundaries: BTreeMap<String, Vec<Vec<Number>>>,
}

fn parse_degree(key: &str) -> Result<usize, ChainError> {
    if key.is_empty() || !key.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ChainError::Format(format!(
            "degree key {key:?} is not a nonnegative integer"
        )));
    }
    key.parse()
        .map_err(|_| ChainError::Format(format!("degree key {key:?} out of range")))
}

fn parse_entry(n: &Number) -> Result<BigInt, ChainError> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| ChainError::Format(format!("boundary entry {n} is not an integer")))
}

impl ChainComplex {
    pub fn from_file_struct(file: ChainComplexFile) -> Result<Self, ChainError> {
        if !file.reduced {
            return Err(ChainError::Format(
                "only reduced complexes are supported (\"reduced\": true)".into(),
            ));
        }
        let mut ranks = BTreeMap::new();
        for (k, r) in &file.ranks {
            if ranks.insert(parse_degree(k)?, *r).is_some() {
                return Err(ChainError::Format(format!("duplicate degree key {k:?}")));
            }
        }
        let rank = |n: usize| ranks.get(&n).copied().unwrap_or(0);
        let mut boundaries = BTreeMap::new();
        for (k, rows) in &file.boundaries {
            let n = parse_degree(k)?;
            let cols = rows.first().map_or(rank(n), Vec::len);
            if rows.iter().any(|r| r.len() != cols) {
                return Err(ChainError::Format(format!("boundary {k} has ragged rows")));
            }
            let data = rows
                .iter()
                .flatten()
                .map(parse_entry)
                .collect::<Result<Vec<_>, _>>()?;
            let m = IntMatrix::from_vec(rows.len(), cols, data).expect("row lengths checked");
            if boundaries.insert(n, m).is_some() {
                return Err(ChainError::Format(format!("duplicate degree key {k:?}")));
            }
        }
        ChainComplex::new(file.name, ranks, boundaries)
    }

    pub fn to_file_struct(&self) -> ChainComplexFile {
        let ranks = self
            .ranks
            .iter()
            .map(|(n, r)| (n.to_string(), *r))
            .collect();
        let boundaries = self
            .boundaries
            .iter()
            .map(|(n, m)| {
                let rows = m
                    .row_vecs()
                    .into_iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| Number::from_str(&x.to_string()).expect("integer literal"))
                            .collect()
                    })
                    .collect();
                (n.to_string(), rows)
            })
            .collect();
        ChainComplexFile {
            name: self.name.clone(),
            reduced: true,
            ranks,
            boundaries,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ChainError> {
        let file: ChainComplexFile =
            serde_json::from_str(text).map_err(|e| ChainError::Format(e.to_string()))?;
        Self::from_file_struct(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_struct()).expect("serializable")
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, ChainError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ChainError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}
