use std::hash::{BuildHasher, Hasher};
use std::time::Instant;

use gamma_forge_core::enumeration::{enumerate_classes_for_monoid, free_cell_count, merge_classes};
use gamma_forge_core::io::write_jsonl;
use gamma_forge_core::{enumerate_additive_monoids, SearchConfig, SearchStats};
use serde::Serialize;

use crate::cache::{cache_key, same_result, Cache};
use crate::manifest::RunManifest;
use crate::{exit, to_json, write_output, CmdResult, EnumerateArgs, Failure};

/// `stats.json`: the search counters plus the run's shape.
#[derive(Serialize)]
struct StatsFile {
    n: usize,
    g: usize,
    mode: String,
    monoids: usize,
    classes: usize,
    labeled: u64,
    /// Unpruned candidate families summed over monoids, if it fits in 64 bits.
    candidates: Option<u64>,
    #[serde(flatten)]
    stats: SearchStats,
}

pub fn run(args: &EnumerateArgs) -> CmdResult {
    let started = Instant::now();
    let mut cfg = SearchConfig::new(args.order, args.gamma, args.mode.mode()).with_workers(args.jobs.max(1));
    cfg.force = args.force;
    cfg.step_budget = args.budget;
    cfg.validate()?;

    let cache = if args.no_cache { None } else { Cache::locate(args.cache_dir.as_deref()) };
    let monoids = enumerate_additive_monoids(cfg.n)?;
    let mut parts = Vec::with_capacity(monoids.len());
    let mut total = SearchStats::default();
    let mut hits = Vec::new();
    for (i, add) in monoids.iter().enumerate() {
        let key = cache_key(&cfg, i, add);
        let cached = cache.as_ref().and_then(|c| c.load(&key));
        let (classes, stats) = match cached {
            Some(found) => {
                eprintln!("cache hit: monoid {i} ({key})");
                hits.push((i, key));
                found
            }
            None => {
                let mut item = cfg.clone();
                if let Some(b) = cfg.step_budget {
                    item.step_budget = Some(b.saturating_sub(total.extension_steps));
                }
                let fresh = enumerate_classes_for_monoid(add, &item)?;
                if let Some(c) = &cache {
                    if let Err(e) = c.store(&key, &fresh.0, &fresh.1) {
                        eprintln!("warning: cache write failed: {e:#}");
                    }
                }
                fresh
            }
        };
        total.absorb(&stats);
        parts.push(classes);
    }

    // Recompute one cached item at random and compare.
    if let (Some(c), false) = (&cache, hits.is_empty()) {
        let pick = std::collections::hash_map::RandomState::new().build_hasher().finish() as usize % hits.len();
        let (i, key) = &hits[pick];
        let fresh = enumerate_classes_for_monoid(&monoids[*i], &cfg)?;
        let stored = (parts[*i].clone(), c.load(key).map(|x| x.1).unwrap_or_default());
        if same_result(&stored, &fresh) {
            eprintln!("cache spot-check passed: monoid {i}");
        } else {
            eprintln!("warning: cache entry {key} disagrees with recomputation; replaced");
            c.store(key, &fresh.0, &fresh.1)?;
            parts[*i] = fresh.0;
        }
    }

    let classes = merge_classes(parts);
    std::fs::create_dir_all(&args.out)
        .map_err(|e| Failure::msg(exit::INTERNAL, format!("cannot create {}: {e}", args.out.display())))?;
    let jsonl = write_jsonl(classes.iter().map(|c| &c.representative));
    let cells = free_cell_count(cfg.n, cfg.g, cfg.mode.symmetric) as u32;
    let stats_file = StatsFile {
        n: cfg.n,
        g: cfg.g,
        mode: cfg.mode.name().to_string(),
        monoids: monoids.len(),
        classes: classes.len(),
        labeled: classes.iter().map(|c| c.class_size).sum(),
        candidates: (cfg.n as u64).checked_pow(cells).and_then(|c| c.checked_mul(monoids.len() as u64)),
        stats: total,
    };
    let mut manifest = RunManifest::new("enumerate");
    manifest.axiom_mode = Some(cfg.mode);
    manifest.outputs.insert("classes.jsonl".into(), write_output(&args.out, "classes.jsonl", &jsonl)?);
    manifest.outputs.insert("stats.json".into(), write_output(&args.out, "stats.json", &to_json(&stats_file))?);
    // The worker count and budget do not affect outputs.
    cfg.worker_count = 1;
    cfg.step_budget = None;
    manifest.config = Some(cfg);
    manifest.wall_time_s = started.elapsed().as_secs_f64();
    write_output(&args.out, "manifest.json", &to_json(&manifest))?;
    println!(
        "{} classes ({} labeled) at n={}, g={}, mode {}",
        stats_file.classes, stats_file.labeled, stats_file.n, stats_file.g, stats_file.mode
    );
    Ok(exit::OK)
}
