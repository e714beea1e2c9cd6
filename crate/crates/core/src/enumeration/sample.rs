use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::layout::CellLayout;
use super::{enumerate_additive_monoids, SearchConfig};
use crate::error::{Error, Result};
use crate::invariants::ideals;
use crate::structure::{check_structure_fast, validate_additive, AdditiveTable};

/// Monte-Carlo statistics over uniformly random tensor families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub n: usize,
    pub g: usize,
    pub mode: String,
    pub seed: u64,
    pub trials: u64,
    pub accepted: u64,
    pub acceptance_rate: Option<f64>,
    /// `n · g`, the size product the mean ideal count is compared against.
    pub size_product: usize,
    pub mean_ideals: Option<f64>,
    /// 95% normal-approximation interval for the mean ideal count.
    pub mean_ideals_ci95: Option<(f64, f64)>,
    /// Set when trials were run but none was accepted.
    pub no_acceptances: bool,
}

/// Monte-Carlo sampling over every additive monoid of order `cfg.n`: each
/// trial picks a monoid class uniformly, then fills each free cell uniformly
/// (absorbing cells stay 0 and symmetric copies agree). Records how many
/// draws satisfy the axioms and the mean ideal count of those that do.
pub fn sample_random(cfg: &SearchConfig, seed: u64, trials: u64) -> Result<SamplingReport> {
    cfg.validate()?;
    let monoids = enumerate_additive_monoids(cfg.n)?;
    sample_with(&monoids, cfg, seed, trials)
}

/// [`sample_random`] with the additive table held fixed.
pub fn sample_random_over(add: &AdditiveTable, cfg: &SearchConfig, seed: u64, trials: u64) -> Result<SamplingReport> {
    cfg.validate()?;
    if add.order() != cfg.n {
        return Err(Error::Contract("additive table order differs from the configuration".into()));
    }
    if !validate_additive(add).is_valid() {
        return Err(Error::Contract("additive table is not a commutative monoid".into()));
    }
    sample_with(std::slice::from_ref(add), cfg, seed, trials)
}

fn sample_with(adds: &[AdditiveTable], cfg: &SearchConfig, seed: u64, trials: u64) -> Result<SamplingReport> {
    let layout = CellLayout::new(cfg.n, cfg.g, cfg.mode.symmetric);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0u8; layout.free_count()];
    let mut counts = Vec::new();
    for _ in 0..trials {
        let add = if adds.len() == 1 { &adds[0] } else { &adds[rng.gen_range(0..adds.len())] };
        for v in values.iter_mut() {
            *v = rng.gen_range(0..cfg.n as u8);
        }
        let s = layout.build(add, &values, cfg.mode);
        if check_structure_fast(&s).is_none() {
            counts.push(ideals(&s)?.len() as f64);
        }
    }
    let accepted = counts.len() as u64;
    let (mean, ci) = mean_with_interval(&counts);
    Ok(SamplingReport {
        n: cfg.n,
        g: cfg.g,
        mode: cfg.mode.name().to_string(),
        seed,
        trials,
        accepted,
        acceptance_rate: (trials > 0).then(|| accepted as f64 / trials as f64),
        size_product: cfg.n * cfg.g,
        mean_ideals: mean,
        mean_ideals_ci95: ci,
        no_acceptances: trials > 0 && accepted == 0,
    })
}

fn mean_with_interval(xs: &[f64]) -> (Option<f64>, Option<(f64, f64)>) {
    if xs.is_empty() {
        return (None, None);
    }
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (Some(mean), None);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    let half = 1.96 * (var / k).sqrt();
    (Some(mean), Some((mean - half, mean + half)))
}
