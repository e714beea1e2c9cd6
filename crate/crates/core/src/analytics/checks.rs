use serde::{Deserialize, Serialize};

use super::dataset::{dataset_row, require_rows, DecompositionStatus, SignatureDataset};
use crate::canonical::{automorphism_group, canonical_form};
use crate::enumeration::{enumerate_classes, SearchConfig};
use crate::error::{Error, Result};
use crate::invariants::{classify_type, signature, TypeLabel};
use crate::structure::{duplicate_gamma, AxiomConfig, GammaSemiring};

/// Version of every JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub canon_hash: String,
    pub rho: f64,
    pub kappa: f64,
    /// `κ − (1 + ρ)`.
    pub residual: f64,
    /// `|κ − (1 + ρ)| ≤ KAPPA_RHO_TOLERANCE · (1 + ρ)`.
    pub approx_holds: bool,
}

/// Relative tolerance used to tabulate `κ ≈ 1 + ρ` per row.
pub const KAPPA_RHO_TOLERANCE: f64 = 0.1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTally {
    pub holds: usize,
    pub fails: usize,
    pub radical_trivial: usize,
    /// Hashes of the classes where the product formula fails.
    pub failing: Vec<String>,
}

/// Simplicity against the two entropy extremes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityTable {
    pub simple_and_zero_entropy: usize,
    pub simple_and_positive_entropy: usize,
    pub not_simple_and_zero_entropy: usize,
    pub not_simple_and_positive_entropy: usize,
    /// Rows where "simple ⟺ H = 0" holds.
    pub agreements: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub schema_version: u32,
    pub rows: Vec<ResidualRow>,
    pub mean_abs_residual: f64,
    pub approx_holds: usize,
    pub approx_fails: usize,
    /// Present when the dataset carries structural details.
    pub decomposition: Option<DecompositionTally>,
    pub simplicity: Option<SimplicityTable>,
}

pub fn correlation_report(ds: &SignatureDataset) -> Result<CorrelationReport> {
    require_rows(ds, 1, "correlation report")?;
    let rows: Vec<ResidualRow> = ds
        .rows
        .iter()
        .map(|r| ResidualRow {
            canon_hash: r.canon_hash.clone(),
            rho: r.rho,
            kappa: r.kappa,
            residual: r.kappa - (1.0 + r.rho),
            approx_holds: (r.kappa - (1.0 + r.rho)).abs() <= KAPPA_RHO_TOLERANCE * (1.0 + r.rho),
        })
        .collect();
    let mean_abs_residual = rows.iter().map(|r| r.residual.abs()).sum::<f64>() / rows.len() as f64;
    let detailed = ds.rows.iter().all(|r| r.details.is_some());
    let (decomposition, simplicity) = if detailed {
        let mut tally = DecompositionTally::default();
        let mut table = SimplicityTable::default();
        for r in &ds.rows {
            let d = r.details.as_ref().expect("checked above");
            match d.decomposition.status {
                DecompositionStatus::Holds => tally.holds += 1,
                DecompositionStatus::Fails => {
                    tally.fails += 1;
                    tally.failing.push(r.canon_hash.clone());
                }
                DecompositionStatus::RadicalTrivial => tally.radical_trivial += 1,
            }
            let zero = r.signature.entropy == 0.0;
            match (d.simple, zero) {
                (true, true) => table.simple_and_zero_entropy += 1,
                (true, false) => table.simple_and_positive_entropy += 1,
                (false, true) => table.not_simple_and_zero_entropy += 1,
                (false, false) => table.not_simple_and_positive_entropy += 1,
            }
        }
        table.agreements = table.simple_and_zero_entropy + table.not_simple_and_positive_entropy;
        table.disagreements = table.simple_and_positive_entropy + table.not_simple_and_zero_entropy;
        (Some(tally), Some(table))
    } else {
        (None, None)
    };
    let approx_holds = rows.iter().filter(|r| r.approx_holds).count();
    Ok(CorrelationReport {
        schema_version: SCHEMA_VERSION,
        approx_fails: rows.len() - approx_holds,
        approx_holds,
        rows,
        mean_abs_residual,
        decomposition,
        simplicity,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub canon_hash: String,
    /// Signature after duplication minus before.
    pub delta: [f64; 6],
    pub type_before: TypeLabel,
    pub type_after: TypeLabel,
    pub aut_group_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub schema_version: u32,
    pub rows: Vec<StabilityRow>,
    pub type_label_stable: usize,
    /// Fraction of classes whose type label survives duplication; `None` for
    /// an empty corpus.
    pub type_label_stable_fraction: Option<f64>,
}

/// Compares every structure with its Γ-duplicate. Anything but the `g`
/// coordinate changing is an invariant violation.
pub fn stability_check(corpus: &[&GammaSemiring]) -> Result<StabilityReport> {
    let mut rows = Vec::with_capacity(corpus.len());
    for s in corpus {
        let d = duplicate_gamma(s);
        let before = signature(s)?;
        let after = signature(&d)?;
        let (a, b) = (before.to_vector(), after.to_vector());
        let delta: [f64; 6] = std::array::from_fn(|k| b[k] - a[k]);
        let exact = a[0] == b[0] && b[1] == 2.0 * a[1] && a[2..] == b[2..];
        let aut_group_equal = automorphism_group(s) == automorphism_group(&d);
        let hash = canonical_form(s).hash();
        if !exact || !aut_group_equal {
            return Err(Error::Invariant {
                message: format!("duplicating Γ changed more than g for class {hash}: delta {delta:?}"),
                witness: None,
            });
        }
        rows.push(StabilityRow {
            canon_hash: hash,
            delta,
            type_before: classify_type(s),
            type_after: classify_type(&d),
            aut_group_equal,
        });
    }
    rows.sort_by(|x, y| x.canon_hash.cmp(&y.canon_hash));
    let stable = rows.iter().filter(|r| r.type_before == r.type_after).count();
    Ok(StabilityReport {
        schema_version: SCHEMA_VERSION,
        type_label_stable_fraction: (!rows.is_empty()).then(|| stable as f64 / rows.len() as f64),
        type_label_stable: stable,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub g: usize,
    /// Class count `N(n, g)`; `None` when the cell was refused.
    pub classes: Option<u64>,
    /// Labeled families over the monoid representatives.
    pub labeled: Option<u64>,
    /// `N(n, g) / N(n, g − 1)`.
    pub ratio_to_previous_g: Option<f64>,
    /// Search extension steps summed over monoids.
    pub extension_steps: Option<u64>,
    pub refused: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub schema_version: u32,
    pub mode: AxiomConfig,
    pub rows: Vec<GrowthRow>,
    /// Some cells were refused by the caps.
    pub partial: bool,
}

/// Class counts for `1 ≤ n ≤ max_n`, `1 ≤ g ≤ max_g`. Cells beyond the caps
/// are left empty and the table is flagged partial.
pub fn growth_table(max_n: usize, max_g: usize, mode: AxiomConfig, workers: usize, force: bool) -> Result<GrowthTable> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let mut previous: Option<u64> = None;
        for g in 1..=max_g {
            let mut cfg = SearchConfig::new(n, g, mode).with_workers(workers.max(1));
            cfg.force = force;
            let row = match enumerate_classes(&cfg) {
                Ok((classes, stats)) => {
                    let count = classes.len() as u64;
                    GrowthRow {
                        n,
                        g,
                        classes: Some(count),
                        labeled: Some(classes.iter().map(|c| c.class_size).sum()),
                        ratio_to_previous_g: previous.map(|p| count as f64 / p as f64),
                        extension_steps: Some(stats.extension_steps),
                        refused: None,
                    }
                }
                Err(e @ (Error::CapExceeded(_) | Error::BudgetExhausted { .. })) => GrowthRow {
                    n,
                    g,
                    classes: None,
                    labeled: None,
                    ratio_to_previous_g: None,
                    extension_steps: None,
                    refused: Some(e.to_string()),
                },
                Err(e) => return Err(e),
            };
            previous = row.classes;
            rows.push(row);
        }
    }
    Ok(GrowthTable {
        schema_version: SCHEMA_VERSION,
        mode,
        partial: rows.iter().any(|r| r.refused.is_some()),
        rows,
    })
}

impl GrowthTable {
    /// `n,g,classes,labeled,ratio,steps`, empty fields for refused cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,g,classes,labeled,ratio,steps\n");
        for r in &self.rows {
            let opt = |v: Option<u64>| v.map_or(String::new(), |x| x.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                r.g,
                opt(r.classes),
                opt(r.labeled),
                r.ratio_to_previous_g.map_or(String::new(), |x| format!("{x:?}")),
                opt(r.extension_steps)
            ));
        }
        out
    }
}

/// Bits to store the tensors: `n³ · g · log₂ n`.
pub fn storage_cost(n: usize, g: usize) -> f64 {
    (n * n * n * g) as f64 * (n as f64).log2()
}

/// Dataset rows for the Γ-duplicates of a corpus.
pub fn duplicated_rows(corpus: &[&GammaSemiring]) -> Result<SignatureDataset> {
    let mut rows = corpus
        .iter()
        .map(|s| dataset_row(&duplicate_gamma(s)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.canon_hash.cmp(&b.canon_hash));
    Ok(SignatureDataset {
        rows,
        ..Default::default()
    })
}
