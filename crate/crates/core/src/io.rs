//! JSON-lines structure files.
//!
//! One structure per line, fields in fixed order:
//!
//! ```text
//! {"n":2,"g":1,"mode":{"symmetric":true,"associative":false},"add":[[0,1],[1,1]],"tensors":[[[[0,0],[0,0]],[[0,0],[0,1]]]]}
//! ```
//!
//! `tensors[γ][a][b][c]` is `{a,b,c}_γ`. Values are element indices; entries
//! outside `0..n` parse and are reported later as closure violations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::structure::{AdditiveTable, AxiomConfig, ElementId, GammaSemiring, TernaryTensor};

/// A malformed line, located by 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    n: usize,
    g: usize,
    mode: AxiomConfig,
    add: Vec<Vec<ElementId>>,
    tensors: Vec<Vec<Vec<Vec<ElementId>>>>,
}

/// One line, without the trailing newline.
pub fn to_json_line(s: &GammaSemiring) -> String {
    let n = s.order();
    let record = Record {
        n,
        g: s.gamma_count(),
        mode: s.mode(),
        add: s.additive().rows(),
        tensors: s
            .tensors()
            .iter()
            .map(|t| {
                t.as_slice()
                    .chunks(n * n)
                    .map(|plane| plane.chunks(n).map(<[u8]>::to_vec).collect())
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&record).expect("records always serialize")
}

/// Every structure, one line each, newline terminated.
pub fn write_jsonl<'a>(structures: impl IntoIterator<Item = &'a GammaSemiring>) -> String {
    let mut out = String::new();
    for s in structures {
        out.push_str(&to_json_line(s));
        out.push('\n');
    }
    out
}

/// Parses a single line; `line_no` is used for error positions.
pub fn from_json_line(text: &str, line_no: usize) -> Result<GammaSemiring, ParseError> {
    let fail = |column: usize, message: String| ParseError {
        line: line_no,
        column,
        message,
    };
    let r: Record = serde_json::from_str(text).map_err(|e| fail(e.column(), e.to_string()))?;
    if r.add.len() != r.n {
        return Err(fail(1, format!("\"add\" has {} rows, expected n = {}", r.add.len(), r.n)));
    }
    if r.tensors.len() != r.g {
        return Err(fail(1, format!("\"tensors\" has {} blocks, expected g = {}", r.tensors.len(), r.g)));
    }
    let add = AdditiveTable::from_rows(&r.add).map_err(|e| fail(1, e.to_string()))?;
    let mut tensors = Vec::with_capacity(r.g);
    for (gamma, block) in r.tensors.iter().enumerate() {
        let shaped = block.len() == r.n && block.iter().all(|plane| plane.len() == r.n && plane.iter().all(|row| row.len() == r.n));
        if !shaped {
            return Err(fail(1, format!("tensor {gamma} is not {0}×{0}×{0}", r.n)));
        }
        let cube = block.iter().flatten().flatten().copied().collect();
        tensors.push(TernaryTensor::from_flat(r.n, cube).map_err(|e| fail(1, e.to_string()))?);
    }
    GammaSemiring::new(add, tensors, r.mode).map_err(|e| fail(1, e.to_string()))
}

/// Parses a whole file. Blank lines are skipped.
pub fn parse_jsonl(text: &str) -> Result<Vec<GammaSemiring>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| from_json_line(l, i + 1))
        .collect()
}
