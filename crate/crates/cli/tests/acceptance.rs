//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use gamma_forge_core::analytics::{build_dataset, ols, pca_projection, regression_fit, Normalization};
use gamma_forge_core::canonical::canonical_form;
use gamma_forge_core::io::{parse_jsonl, write_jsonl};
use gamma_forge_core::structure::{duplicate_gamma, image_and_first_iso, HomMap};
use gamma_forge_core::{
    automorphism_group, enumerate_additive_monoids, enumerate_classes, generate_ternary_tables, naive_enumerate,
    signature, AxiomConfig, GammaSemiring, SearchConfig,
};

const LIMIT: Duration = Duration::from_secs(60);
const NUMERIC_TOL: f64 = 1e-8;
const PLANE_R2_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sym() -> AxiomConfig {
    AxiomConfig::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-forge"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut monoids = 0;
    for (n, g) in [(2, 1), (2, 2), (3, 1)] {
        let cfg = SearchConfig::new(n, g, sym());
        for add in enumerate_additive_monoids(n).unwrap() {
            let a: BTreeSet<_> = generate_ternary_tables(&add, &cfg).unwrap().0.iter().map(canonical_form).collect();
            let b: BTreeSet<_> = naive_enumerate(&add, &cfg).unwrap().iter().map(canonical_form).collect();
            ensure(a == b, || format!("form sets differ at ({n},{g})"))?;
            monoids += 1;
        }
    }
    let t = started.elapsed();
    ensure(t < LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{monoids} (n,g,monoid) cases identical in {:.2}s", t.as_secs_f64()))
}

fn canonical_soundness() -> Outcome {
    let started = Instant::now();
    let mut pairs = 0u64;
    for (n, g) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let cfg = SearchConfig::new(n, g, sym());
        let mut pop = Vec::new();
        for add in enumerate_additive_monoids(n).unwrap() {
            for st in generate_ternary_tables(&add, &cfg).unwrap().0 {
                pop.extend(perms0(n).iter().map(|p| st.relabel(p)));
            }
        }
        let forms: Vec<_> = pop.iter().map(canonical_form).collect();
        let raws: Vec<Raw> = pop.iter().map(Raw::from_structure).collect();
        for i in 0..pop.len() {
            for j in i + 1..pop.len() {
                let iso = brute_isomorphic(&raws[i], &raws[j]);
                ensure((forms[i] == forms[j]) == iso, || format!("({n},{g}) pair {i},{j}"))?;
                pairs += 1;
            }
        }
    }
    let t = started.elapsed();
    ensure(t < LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{pairs} labeled pairs agree with brute-force isomorphism in {:.2}s", t.as_secs_f64()))
}

fn automorphisms() -> Outcome {
    let corpus: Vec<GammaSemiring> = corpus(4, 1).into_iter().chain(corpus(3, 2)).collect();
    let corpus: std::collections::BTreeMap<_, _> = corpus.into_iter().map(|c| (canonical_form(&c), c)).collect();
    for st in corpus.values() {
        let want = brute_aut_order(&Raw::from_structure(st)) as u64;
        ensure(automorphism_group(st).order() == want, || format!("order mismatch on {}", canonical_form(st).hash()))?;
    }
    Ok(format!(
        "{} classes (n <= 4 at g = 1, n <= 3 at g = 2); the (4,2) sweep is an ignored core test",
        corpus.len()
    ))
}

fn first_isomorphism() -> Outcome {
    let corpus = corpus(3, 2);
    let raws: Vec<Raw> = corpus.iter().map(Raw::from_structure).collect();
    let (mut checked, mut bourne) = (0, 0);
    for (a, ra) in corpus.iter().zip(&raws) {
        for (b, rb) in corpus.iter().zip(&raws) {
            if b.order() > a.order() || a.gamma_count() != b.gamma_count() {
                continue;
            }
            let (n, m) = (a.order(), b.order());
            for code in 0..m.pow(n as u32 - 1) {
                let mut f = vec![0];
                let mut c = code;
                for _ in 1..n {
                    f.push(c % m);
                    c /= m;
                }
                if !(0..m).all(|y| f.contains(&y)) {
                    continue;
                }
                let hom = (0..n).all(|x| (0..n).all(|y| f[ra.add[x][y]] == rb.add[f[x]][f[y]]))
                    && (0..ra.cubes.len()).all(|k| {
                        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f[ra.mul(k, x, y, z)] == rb.mul(k, f[x], f[y], f[z]))))
                    });
                if !hom {
                    continue;
                }
                let h = HomMap::new(a, b, f).unwrap();
                let w = image_and_first_iso(&h).map_err(|e| e.to_string())?;
                ensure(canonical_form(&w.image) == canonical_form(&w.quotient), || "image and quotient differ".into())?;
                checked += 1;
                bourne += usize::from(w.bourne_quotient_isomorphic);
            }
        }
    }
    Ok(format!(
        "{checked} surjective homomorphisms, 0 failures (Bourne quotient also isomorphic for {bourne})"
    ))
}

fn invariant_bounds() -> Outcome {
    let corpus: Vec<GammaSemiring> = corpus(3, 2).into_iter().chain(corpus(4, 1).into_iter().filter(|c| c.order() == 4)).collect();
    for st in &corpus {
        let sig = signature(st).unwrap();
        let n = st.order();
        let ln = (n as f64).ln();
        let orbits = gamma_forge_core::canonical::orbit_partition(st, gamma_forge_core::canonical::OrbitAction::FullAutomorphisms);
        let distinct = orbits.iter().collect::<BTreeSet<_>>().len();
        ensure(sig.entropy >= 0.0 && sig.entropy <= ln, || format!("entropy {} at n={n}", sig.entropy))?;
        ensure((sig.entropy == ln) == (distinct == n), || "upper extreme mismatch".into())?;
        ensure((sig.entropy == 0.0) == (distinct == 1), || "lower extreme mismatch".into())?;
        if n >= 2 {
            ensure(sig.num_ideals >= 2 && sig.num_congruences >= 2, || format!("floor broken at n={n}"))?;
        }
    }
    Ok(format!("{} classes within bounds", corpus.len()))
}

fn duplication() -> Outcome {
    let corpus: Vec<GammaSemiring> = corpus(3, 2).into_iter().chain(corpus(4, 1).into_iter().filter(|c| c.order() == 4)).collect();
    for st in &corpus {
        let d = duplicate_gamma(st);
        let (a, b) = (signature(st).unwrap(), signature(&d).unwrap());
        ensure(b.g == 2 * a.g, || "g not doubled".into())?;
        ensure(
            (a.n, a.num_ideals, a.num_congruences, a.aut_order, a.entropy.to_bits())
                == (b.n, b.num_ideals, b.num_congruences, b.aut_order, b.entropy.to_bits()),
            || "signature changed beyond g".into(),
        )?;
        ensure(
            gamma_forge_core::invariants::classify_type(st) == gamma_forge_core::invariants::classify_type(&d),
            || "type label changed".into(),
        )?;
    }
    Ok(format!("{} classes, only g changes (g -> 2g)", corpus.len()))
}

fn analytics_numerics() -> Outcome {
    let mut classes = Vec::new();
    for n in 1..=3 {
        for g in 1..=2 {
            classes.extend(enumerate_classes(&SearchConfig::new(n, g, sym())).unwrap().0);
        }
    }
    let ds = build_dataset(&classes, None).unwrap();
    let p = pca_projection(&ds, Normalization::ZScore).unwrap();
    let res = p.eigen_residuals().into_iter().fold(0.0, f64::max);
    ensure(res < NUMERIC_TOL, || format!("eigen residual {res:e}"))?;
    let rec = p.reconstruction_error(&ds);
    ensure(rec < NUMERIC_TOL, || format!("reconstruction {rec:e}"))?;
    let fit = regression_fit(&ds).map_err(|e| e.to_string())?;
    ensure(fit.max_column_residual_dot < NUMERIC_TOL, || format!("X^T r = {:e}", fit.max_column_residual_dot))?;
    let design: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, (i * i % 7) as f64, (i % 3) as f64]).collect();
    let y: Vec<f64> = design.iter().map(|x| 1.5 + x[0] - 2.0 * x[1] + 0.25 * x[2]).collect();
    let (_, r2, _, _) = ols(&design, &y, true).map_err(|e| e.to_string())?;
    ensure((r2 - 1.0).abs() < PLANE_R2_TOL, || format!("plane R^2 = {r2}"))?;
    Ok(format!(
        "eigen residual {res:.1e}, reconstruction {rec:.1e}, X^T r {:.1e}, plane R^2 - 1 = {:.1e}",
        fit.max_column_residual_dot,
        r2 - 1.0
    ))
}

fn build_corpus_files(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let mut all = String::new();
    for n in 1..=3 {
        for g in 1..=2 {
            let out = dir.join(format!("e{n}{g}"));
            let o = gf(&["enumerate", "--order", &n.to_string(), "--gamma", &g.to_string(), "--out", s(&out), "--no-cache"]);
            assert!(o.status.success());
            all.push_str(&fs::read_to_string(out.join("classes.jsonl")).unwrap());
        }
    }
    let classes = dir.join("classes.jsonl");
    fs::write(&classes, all).unwrap();
    let csv = dir.join("sig.csv");
    assert!(gf(&["invariants", s(&classes), "--out", s(&csv)]).status.success());
    (classes, csv)
}

fn empirical_reporting() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (classes, csv) = build_corpus_files(dir.path());
    let mut bundles = Vec::new();
    for (name, jobs) in [("a", "1"), ("b", "8"), ("c", "1")] {
        let out = dir.path().join(name);
        let o = gf(&["report", s(&csv), "--classes", s(&classes), "--out", s(&out), "--jobs", jobs, "--trials", "200"]);
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        bundles.push(out);
    }
    let files = [
        "correlation.json",
        "regression.json",
        "growth.csv",
        "growth.json",
        "stability.json",
        "sampling.json",
        "equivalence.json",
        "pca.csv",
        "pca.json",
        "summary.txt",
    ];
    for f in files {
        let a = fs::read(bundles[0].join(f)).map_err(|e| format!("{f}: {e}"))?;
        for b in &bundles[1..] {
            ensure(fs::read(b.join(f)).unwrap() == a, || format!("{f} differs between runs"))?;
        }
    }
    let corr: serde_json::Value = serde_json::from_slice(&fs::read(bundles[0].join("correlation.json")).unwrap()).unwrap();
    ensure(corr["simplicity"].is_object() && corr["decomposition"].is_object(), || "per-instance checks missing".into())?;
    let rows = corr["rows"].as_array().map_or(0, Vec::len);
    ensure(rows > 0, || "no residual rows".into())?;
    Ok(format!("{} files byte-identical over 3 runs (jobs 1, 8, 1), {rows} rows tabulated", files.len()))
}

fn determinism_and_speed() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    let mut times = Vec::new();
    for jobs in ["1", "8"] {
        let out = dir.path().join(format!("j{jobs}"));
        let started = Instant::now();
        let o = gf(&["enumerate", "--order", "3", "--gamma", "1", "--jobs", jobs, "--out", s(&out), "--no-cache"]);
        times.push(started.elapsed());
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        outputs.push((fs::read(out.join("classes.jsonl")).unwrap(), fs::read(out.join("stats.json")).unwrap()));
    }
    ensure(outputs[0].0 == outputs[1].0, || "classes.jsonl differs across worker counts".into())?;
    ensure(times.iter().all(|t| *t < LIMIT), || format!("{times:?}"))?;
    Ok(format!(
        "(3,1) in {:.2}s / {:.2}s at jobs 1 / 8, classes.jsonl identical",
        times[0].as_secs_f64(),
        times[1].as_secs_f64()
    ))
}

fn round_trip_and_cache() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (classes, _) = build_corpus_files(dir.path());
    let text = fs::read_to_string(&classes).unwrap();
    let parsed = parse_jsonl(&text).map_err(|e| e.to_string())?;
    ensure(write_jsonl(&parsed) == text, || "round trip changed bytes".into())?;

    let cache = dir.path().join("cache");
    let mut runs = Vec::new();
    for name in ["fresh", "cached"] {
        let out = dir.path().join(name);
        let o = gf(&["enumerate", "--order", "3", "--gamma", "2", "--out", s(&out), "--cache-dir", s(&cache)]);
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        runs.push((out, String::from_utf8_lossy(&o.stderr).into_owned()));
    }
    ensure(runs[1].1.contains("spot-check passed"), || runs[1].1.clone())?;
    for f in ["classes.jsonl", "stats.json"] {
        ensure(fs::read(runs[0].0.join(f)).unwrap() == fs::read(runs[1].0.join(f)).unwrap(), || format!("{f} differs on cache hit"))?;
    }
    Ok(format!("{} structures round-trip byte-identically; cache hit equals recomputation", parsed.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("canonical soundness and completeness", canonical_soundness),
        ("automorphism orders", automorphisms),
        ("first isomorphism theorem", first_isomorphism),
        ("invariant floors and bounds", invariant_bounds),
        ("parameter duplication stability", duplication),
        ("analytics numerics", analytics_numerics),
        ("empirical reporting", empirical_reporting),
        ("determinism and performance", determinism_and_speed),
        ("round trip and cache", round_trip_and_cache),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
