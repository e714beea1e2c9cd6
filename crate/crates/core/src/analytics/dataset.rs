use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, OrbitAction};
use crate::enumeration::{ClassEntry, SearchConfig};
use crate::error::{Error, Result};
use crate::invariants::{
    bourne_congruence, classify_type, congruences, entropy, is_simple, radical, signature_with, InvariantSignature,
    TypeLabel,
};
use crate::structure::{quotient_by_congruence, subalgebra, GammaSemiring};

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 10] = [
    "canon_hash",
    "n",
    "g",
    "num_ideals",
    "num_congruences",
    "aut_order",
    "entropy_nats",
    "type_label",
    "rho",
    "kappa",
];

/// Outcome of comparing `|Con(T)|` with `|Con(T/Rad)| · |Con(Rad)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionStatus {
    Holds,
    Fails,
    /// `Rad = {0}` or `Rad = T`, where the product is vacuous.
    RadicalTrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub radical_size: usize,
    pub num_congruences: usize,
    /// Congruences of the Bourne quotient by the radical.
    pub quotient_congruences: usize,
    /// Congruences of the radical as a substructure.
    pub radical_congruences: usize,
    pub status: DecompositionStatus,
}

/// Quantities that need the structure itself, not just its CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowDetails {
    pub simple: bool,
    /// Entropy under the additive automorphism group only.
    pub entropy_additive: f64,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub canon_hash: String,
    pub signature: InvariantSignature,
    pub type_label: TypeLabel,
    /// `|Rad| / n`.
    pub rho: f64,
    /// `|Con| / n`.
    pub kappa: f64,
    pub details: Option<RowDetails>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: Option<SearchConfig>,
    pub corpus_version: String,
}

/// One row per isomorphism class, sorted by canonical hash.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SignatureDataset {
    pub rows: Vec<DatasetRow>,
    pub provenance: Provenance,
}

/// Non-isomorphic classes sharing a signature.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub classes: usize,
    pub distinct_signatures: usize,
    /// Unordered pairs of distinct classes with equal signatures.
    pub colliding_pairs: u64,
    /// Hash lists of every signature shared by two or more classes.
    pub collisions: Vec<Vec<String>>,
}

/// Format version stamped on every dataset and report.
pub const CORPUS_VERSION: &str = "1";

/// Signature row of a single structure, including the structural details.
pub fn dataset_row(s: &GammaSemiring) -> Result<DatasetRow> {
    let n = s.order();
    let sig = signature_with(s, OrbitAction::FullAutomorphisms)?;
    let rad = radical(s)?;
    let decomposition = decompose(s, rad.members(), sig.num_congruences)?;
    Ok(DatasetRow {
        canon_hash: canonical_form(s).hash(),
        rho: rad.len() as f64 / n as f64,
        kappa: sig.num_congruences as f64 / n as f64,
        type_label: classify_type(s),
        details: Some(RowDetails {
            simple: is_simple(s)?,
            entropy_additive: entropy(s, OrbitAction::AdditiveAutomorphisms),
            decomposition,
        }),
        signature: sig,
    })
}

fn decompose(s: &GammaSemiring, rad: Vec<usize>, num_congruences: usize) -> Result<Decomposition> {
    let n = s.order();
    let ideal = crate::invariants::IdealSet::from_members(n, rad.iter().copied());
    let quotient = quotient_by_congruence(s, &bourne_congruence(s, ideal))?;
    let sub = subalgebra(s, &rad)?;
    let quotient_congruences = congruences(&quotient)?.len();
    let radical_congruences = congruences(&sub)?.len();
    let status = if rad.len() == 1 || rad.len() == n {
        DecompositionStatus::RadicalTrivial
    } else if num_congruences == quotient_congruences * radical_congruences {
        DecompositionStatus::Holds
    } else {
        DecompositionStatus::Fails
    };
    Ok(Decomposition {
        radical_size: rad.len(),
        num_congruences,
        quotient_congruences,
        radical_congruences,
        status,
    })
}

/// Dataset over the representatives of an enumerated corpus.
pub fn build_dataset(corpus: &[ClassEntry], config: Option<&SearchConfig>) -> Result<SignatureDataset> {
    let structures: Vec<&GammaSemiring> = corpus.iter().map(|c| &c.representative).collect();
    dataset_from_structures(&structures, config)
}

/// Dataset over arbitrary structures; isomorphic inputs collapse to one row.
pub fn dataset_from_structures(structures: &[&GammaSemiring], config: Option<&SearchConfig>) -> Result<SignatureDataset> {
    let rows: Vec<DatasetRow> = structures.par_iter().map(|s| dataset_row(s)).collect::<Result<_>>()?;
    let mut by_hash = BTreeMap::new();
    for row in rows {
        by_hash.entry(row.canon_hash.clone()).or_insert(row);
    }
    Ok(SignatureDataset {
        rows: by_hash.into_values().collect(),
        provenance: Provenance {
            config: config.cloned(),
            corpus_version: CORPUS_VERSION.into(),
        },
    })
}

impl SignatureDataset {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> Vec<[f64; 6]> {
        self.rows.iter().map(|r| r.signature.to_vector()).collect()
    }

    /// How much coarser signature equality is than isomorphism.
    pub fn equivalence_report(&self) -> EquivalenceReport {
        let mut groups: BTreeMap<[u64; 6], Vec<String>> = BTreeMap::new();
        for r in &self.rows {
            let key = r.signature.to_vector().map(f64::to_bits);
            groups.entry(key).or_default().push(r.canon_hash.clone());
        }
        let collisions: Vec<Vec<String>> = groups.into_values().filter(|g| g.len() > 1).collect();
        let distinct = {
            let mut keys: Vec<[u64; 6]> = self.rows.iter().map(|r| r.signature.to_vector().map(f64::to_bits)).collect();
            keys.sort_unstable();
            keys.dedup();
            keys.len()
        };
        EquivalenceReport {
            classes: self.rows.len(),
            distinct_signatures: distinct,
            colliding_pairs: collisions.iter().map(|g| (g.len() * (g.len() - 1) / 2) as u64).sum(),
            collisions,
        }
    }

    /// CSV with the fixed column order. Floats use shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        for r in &self.rows {
            w.serialize(CsvRecord::from(r)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Parses [`to_csv`](Self::to_csv) output. Rows with an empty congruence
    /// count (the scan cap was hit) are skipped and counted.
    pub fn from_csv(text: &str) -> std::result::Result<(Self, usize), CsvError> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| CsvError::from_csv(&e))?.clone();
        if header.iter().ne(CSV_COLUMNS) {
            return Err(CsvError {
                line: 1,
                column: 1,
                message: format!("expected header {}", CSV_COLUMNS.join(",")),
            });
        }
        let mut rows = Vec::new();
        let mut skipped = 0;
        for rec in r.deserialize::<CsvRecord>() {
            let rec = rec.map_err(|e| CsvError::from_csv(&e))?;
            match rec.into_row() {
                Some(row) => rows.push(row),
                None => skipped += 1,
            }
        }
        rows.sort_by(|a, b| a.canon_hash.cmp(&b.canon_hash));
        rows.dedup_by(|a, b| a.canon_hash == b.canon_hash);
        Ok((
            Self {
                rows,
                provenance: Provenance {
                    config: None,
                    corpus_version: CORPUS_VERSION.into(),
                },
            },
            skipped,
        ))
    }
}

/// A malformed dataset file.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct CsvError {
    pub line: u64,
    pub column: u64,
    pub message: String,
}

impl CsvError {
    fn from_csv(e: &csv::Error) -> Self {
        let (line, column) = match e.kind() {
            csv::ErrorKind::Deserialize { pos, err } => (
                pos.as_ref().map_or(0, |p| p.line()),
                err.field().map_or(1, |f| f + 1),
            ),
            _ => (e.position().map_or(0, |p| p.line()), 1),
        };
        CsvError {
            line,
            column,
            message: e.to_string(),
        }
    }
}

/// One CSV line. Cap-limited invariants are written as empty fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRecord {
    pub canon_hash: String,
    pub n: usize,
    pub g: usize,
    pub num_ideals: usize,
    pub num_congruences: Option<usize>,
    pub aut_order: u64,
    pub entropy_nats: f64,
    pub type_label: TypeLabel,
    pub rho: f64,
    pub kappa: Option<f64>,
}

impl From<&DatasetRow> for CsvRecord {
    fn from(r: &DatasetRow) -> Self {
        CsvRecord {
            canon_hash: r.canon_hash.clone(),
            n: r.signature.n,
            g: r.signature.g,
            num_ideals: r.signature.num_ideals,
            num_congruences: Some(r.signature.num_congruences),
            aut_order: r.signature.aut_order,
            entropy_nats: r.signature.entropy,
            type_label: r.type_label,
            rho: r.rho,
            kappa: Some(r.kappa),
        }
    }
}

impl CsvRecord {
    fn into_row(self) -> Option<DatasetRow> {
        Some(DatasetRow {
            signature: InvariantSignature {
                n: self.n,
                g: self.g,
                num_ideals: self.num_ideals,
                num_congruences: self.num_congruences?,
                aut_order: self.aut_order,
                entropy: self.entropy_nats,
            },
            canon_hash: self.canon_hash,
            type_label: self.type_label,
            rho: self.rho,
            kappa: self.kappa?,
            details: None,
        })
    }
}

/// Serializes CSV records that may carry empty fields.
pub fn records_to_csv(records: &[CsvRecord]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in records {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Fails unless the dataset has at least `min` rows.
pub(crate) fn require_rows(ds: &SignatureDataset, min: usize, what: &str) -> Result<()> {
    if ds.rows.len() < min {
        return Err(Error::Contract(format!(
            "{what} needs at least {min} rows, dataset has {}",
            ds.rows.len()
        )));
    }
    Ok(())
}
