//! Exhaustive generation of ternary Γ-semirings.
//!
//! Generation runs in two stages: the additive monoids of order `n` up to
//! isomorphism ([`enumerate_additive_monoids`]), then every tensor family
//! over a fixed monoid by pruned backtracking ([`generate_ternary_tables`]).
//! [`naive_enumerate`] is an unpruned scan kept as an oracle for the search,
//! and [`sample_random`] draws random tensor families for Monte-Carlo
//! statistics.

mod classes;
mod layout;
mod monoids;
mod naive;
mod sample;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::AxiomConfig;

pub use classes::{enumerate_classes, enumerate_classes_for_monoid, merge_classes, ClassEntry};
pub use layout::free_cell_count;
pub use monoids::{enumerate_additive_monoids, MAX_MONOID_ORDER};
pub use naive::{naive_enumerate, MAX_NAIVE_CANDIDATES, MAX_NAIVE_FREE_CELLS};
pub use sample::{sample_random, sample_random_over, SamplingReport};
pub use search::{generate_ternary_tables, generate_ternary_tables_traced, PruneWitness};

/// Default enumeration caps; larger runs need `force`.
pub const DEFAULT_MAX_ORDER: usize = 4;
pub const DEFAULT_MAX_GAMMA: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub g: usize,
    pub mode: AxiomConfig,
    pub worker_count: usize,
    pub step_budget: Option<u64>,
    /// Lifts the default `n ≤ 4`, `g ≤ 2` caps.
    pub force: bool,
}

impl SearchConfig {
    pub fn new(n: usize, g: usize, mode: AxiomConfig) -> Self {
        Self {
            n,
            g,
            mode,
            worker_count: 1,
            step_budget: None,
            force: false,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.step_budget = Some(budget);
        self
    }

    pub fn forced(mut self) -> Self {
        self.force = true;
        self
    }

    /// Shape and cap checks shared by every entry point.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.g == 0 {
            return Err(Error::Contract(format!(
                "order and parameter count must be positive (n={}, g={})",
                self.n, self.g
            )));
        }
        if self.worker_count == 0 {
            return Err(Error::Contract("worker count must be positive".into()));
        }
        if self.n > MAX_MONOID_ORDER {
            return Err(Error::CapExceeded(format!(
                "order {} exceeds the hard limit of {MAX_MONOID_ORDER}",
                self.n
            )));
        }
        if !self.force && (self.n > DEFAULT_MAX_ORDER || self.g > DEFAULT_MAX_GAMMA) {
            return Err(Error::CapExceeded(format!(
                "(n={}, g={}) exceeds the default caps n ≤ {DEFAULT_MAX_ORDER}, g ≤ {DEFAULT_MAX_GAMMA}; \
                 worst-case search grows like n^(3g+3), pass force to run anyway",
                self.n, self.g
            )));
        }
        Ok(())
    }
}

/// Counters for one search. Serialized field names are part of the
/// `stats.json` format.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Single-cell extensions of a partial assignment.
    pub extension_steps: u64,
    /// Extensions rejected by a violated law instance.
    pub pruned: u64,
    /// Completed families that passed the final check.
    pub valid_found: u64,
    pub wall_time_s: f64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.extension_steps += other.extension_steps;
        self.pruned += other.pruned;
        self.valid_found += other.valid_found;
        self.wall_time_s += other.wall_time_s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps() {
        let mode = AxiomConfig::default();
        assert!(SearchConfig::new(4, 2, mode).validate().is_ok());
        assert!(matches!(SearchConfig::new(5, 1, mode).validate(), Err(Error::CapExceeded(_))));
        assert!(SearchConfig::new(5, 1, mode).forced().validate().is_ok());
        assert!(matches!(
            SearchConfig::new(7, 1, mode).forced().validate(),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(SearchConfig::new(0, 1, mode).validate(), Err(Error::Contract(_))));
        assert!(SearchConfig::new(2, 1, mode).with_workers(0).validate().is_err());
    }

    #[test]
    fn stats_json_field_names() {
        let json = serde_json::to_string(&SearchStats::default()).unwrap();
        assert_eq!(json, r#"{"extension_steps":0,"pruned":0,"valid_found":0,"wall_time_s":0.0}"#);
    }
}
