use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::{enumerate_additive_monoids, generate_ternary_tables, SearchConfig, SearchStats};
use crate::canonical::{canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};
use crate::structure::{AdditiveTable, GammaSemiring};

/// One isomorphism class of the enumerated variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub form: CanonicalForm,
    /// The class member in canonical position.
    pub representative: GammaSemiring,
    /// Labeled families (over the monoid's stored representative) in the class.
    pub class_size: u64,
}

/// Classes of the tensor families over one fixed additive monoid, sorted by
/// canonical form bytes.
pub fn enumerate_classes_for_monoid(add: &AdditiveTable, cfg: &SearchConfig) -> Result<(Vec<ClassEntry>, SearchStats)> {
    let (found, stats) = generate_ternary_tables(add, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| Error::Contract(format!("cannot start worker pool: {e}")))?;
    let labeled: Vec<(CanonicalForm, Vec<usize>)> = pool.install(|| found.par_iter().map(canonical_labeling).collect());
    let mut by_form: BTreeMap<CanonicalForm, ClassEntry> = BTreeMap::new();
    for (s, (form, perm)) in found.iter().zip(labeled) {
        by_form
            .entry(form)
            .and_modify(|e| e.class_size += 1)
            .or_insert_with_key(|form| ClassEntry {
                form: form.clone(),
                representative: s.relabel(&perm),
                class_size: 1,
            });
    }
    Ok((by_form.into_values().collect(), stats))
}

/// Merges per-monoid class lists, summing sizes of equal forms. Output is
/// sorted by form bytes, whatever the input order.
pub fn merge_classes(parts: impl IntoIterator<Item = Vec<ClassEntry>>) -> Vec<ClassEntry> {
    let mut by_form: BTreeMap<CanonicalForm, ClassEntry> = BTreeMap::new();
    for entry in parts.into_iter().flatten() {
        match by_form.get_mut(&entry.form) {
            Some(e) => e.class_size += entry.class_size,
            None => {
                by_form.insert(entry.form.clone(), entry);
            }
        }
    }
    by_form.into_values().collect()
}

/// All structures of order `cfg.n` up to isomorphism, over every additive
/// monoid class. Output is sorted by canonical form bytes and does not depend
/// on the worker count. A step budget applies to the whole run.
pub fn enumerate_classes(cfg: &SearchConfig) -> Result<(Vec<ClassEntry>, SearchStats)> {
    cfg.validate()?;
    let started = Instant::now();
    let mut total = SearchStats::default();
    let mut parts = Vec::new();
    for add in enumerate_additive_monoids(cfg.n)? {
        let mut item = cfg.clone();
        if let Some(budget) = cfg.step_budget {
            item.step_budget = Some(budget.saturating_sub(total.extension_steps));
        }
        match enumerate_classes_for_monoid(&add, &item) {
            Ok((classes, stats)) => {
                total.absorb(&stats);
                parts.push(classes);
            }
            Err(Error::BudgetExhausted { stats, .. }) => {
                total.absorb(&stats);
                total.wall_time_s = started.elapsed().as_secs_f64();
                return Err(Error::BudgetExhausted {
                    budget: cfg.step_budget.unwrap_or(0),
                    stats: total,
                });
            }
            Err(e) => return Err(e),
        }
    }
    total.wall_time_s = started.elapsed().as_secs_f64();
    Ok((merge_classes(parts), total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::AxiomConfig;

    #[test]
    fn order_one_has_one_class() {
        let (classes, _) = enumerate_classes(&SearchConfig::new(1, 1, AxiomConfig::default())).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].class_size, 1);
    }

    #[test]
    fn class_sizes_partition_the_labeled_count() {
        let cfg = SearchConfig::new(3, 1, AxiomConfig::default());
        for add in enumerate_additive_monoids(3).unwrap() {
            let (labeled, _) = generate_ternary_tables(&add, &cfg).unwrap();
            let (classes, _) = enumerate_classes_for_monoid(&add, &cfg).unwrap();
            assert_eq!(classes.iter().map(|c| c.class_size).sum::<u64>(), labeled.len() as u64);
        }
    }

    #[test]
    fn output_is_sorted_and_worker_independent() {
        let cfg = SearchConfig::new(3, 1, AxiomConfig::default());
        let (a, _) = enumerate_classes(&cfg).unwrap();
        let (b, _) = enumerate_classes(&cfg.clone().with_workers(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].form < w[1].form));
    }
}
