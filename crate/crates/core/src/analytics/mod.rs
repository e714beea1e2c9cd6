//! Statistical pipeline over a classified corpus: the signature dataset,
//! κ/ρ residuals, least squares, PCA, duplication stability and growth
//! counts. Every empirical relation is reported, never asserted; the only
//! hard check is that duplicating Γ changes nothing but `g`.

mod checks;
mod dataset;
pub mod linalg;
mod pca;
mod regression;

pub use checks::{
    correlation_report, duplicated_rows, growth_table, stability_check, storage_cost, CorrelationReport,
    DecompositionTally, GrowthRow, GrowthTable, ResidualRow, SimplicityTable, StabilityReport, StabilityRow,
    KAPPA_RHO_TOLERANCE, SCHEMA_VERSION,
};
pub use dataset::{
    build_dataset, dataset_from_structures, dataset_row, records_to_csv, CsvError, CsvRecord, DatasetRow,
    Decomposition, DecompositionStatus, EquivalenceReport, Provenance, RowDetails, SignatureDataset, CORPUS_VERSION,
    CSV_COLUMNS,
};
pub use pca::{pca_projection, Normalization, PcaPoint, PcaProjection};
pub use regression::{ols, regression_fit, regression_fit_through_origin, RegressionResult};
