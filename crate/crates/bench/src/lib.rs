//! Fixtures shared by the criterion benchmarks.

use gamma_forge_core::{enumerate_additive_monoids, enumerate_classes, AxiomConfig, GammaSemiring, SearchConfig};

/// Canonical representatives of every class at `(n, g)` in symmetric mode.
pub fn corpus(n: usize, g: usize) -> Vec<GammaSemiring> {
    let cfg = SearchConfig::new(n, g, AxiomConfig::default());
    let (classes, _) = enumerate_classes(&cfg).expect("fixture within caps");
    classes.into_iter().map(|c| c.representative).collect()
}

/// The additive monoids of order `n`.
pub fn monoids(n: usize) -> Vec<gamma_forge_core::AdditiveTable> {
    enumerate_additive_monoids(n).expect("fixture within caps")
}
