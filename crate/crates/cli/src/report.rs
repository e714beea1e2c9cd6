use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::IsTerminal;
use std::time::Instant;

use gamma_forge_core::analytics::{
    correlation_report, dataset_from_structures, growth_table, pca_projection, regression_fit,
    regression_fit_through_origin, stability_check, storage_cost, CorrelationReport, GrowthTable, Normalization,
    PcaProjection, RegressionResult, SignatureDataset, StabilityReport, KAPPA_RHO_TOLERANCE, SCHEMA_VERSION,
};
use gamma_forge_core::enumeration::{SamplingReport, DEFAULT_MAX_GAMMA, DEFAULT_MAX_ORDER};
use gamma_forge_core::{sample_random, SearchConfig, TypeLabel};
use serde::Serialize;

use crate::manifest::{sha256_hex, RunManifest};
use crate::{exit, parse_structures, read_input, to_json, write_output, CmdResult, Failure, ReportArgs};

/// Published automorphism orders: `(n, g, type, |Aut|)`.
const PUBLISHED_AUT: [(usize, usize, &str, u64); 5] = [
    (2, 1, "Boolean", 2),
    (3, 1, "Modular", 3),
    (3, 2, "Mixed idempotent", 6),
    (4, 1, "Truncated", 4),
    (4, 2, "Tropical", 8),
];

/// Published step counts and runtimes: `(n, g, steps, seconds)`.
const PUBLISHED_STEPS: [(usize, usize, u64, f64); 5] =
    [(2, 1, 48, 0.01), (3, 1, 243, 0.12), (3, 2, 486, 0.38), (4, 1, 1024, 1.75), (4, 2, 2048, 4.13)];

const PUBLISHED_R: f64 = 0.96;

fn published_label(name: &str) -> TypeLabel {
    match name {
        "Boolean" => TypeLabel::Boolean,
        "Modular" => TypeLabel::Modular,
        "Truncated" => TypeLabel::Truncated,
        "Tropical" => TypeLabel::Tropical,
        _ => TypeLabel::Hybrid,
    }
}

#[derive(Serialize)]
struct Refusal {
    schema_version: u32,
    available: bool,
    reason: String,
}

fn refusal(reason: impl Into<String>) -> String {
    to_json(&Refusal {
        schema_version: SCHEMA_VERSION,
        available: false,
        reason: reason.into(),
    })
}

#[derive(Serialize)]
struct RegressionFile {
    schema_version: u32,
    response: &'static str,
    regressors: [&'static str; 3],
    published_r: f64,
    with_intercept: Option<RegressionResult>,
    through_origin: Option<RegressionResult>,
    refused: Option<String>,
}

#[derive(Serialize)]
struct PcaFile<'a> {
    schema_version: u32,
    z_score: &'a PcaProjection,
    eigen_residuals: Vec<f64>,
    reconstruction_error: f64,
    per_order: Option<PcaSummary>,
}

#[derive(Serialize)]
struct PcaSummary {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    zero_variance: bool,
}

#[derive(Serialize)]
struct SamplingFile {
    schema_version: u32,
    seed: u64,
    trials: u64,
    cells: Vec<SamplingReport>,
}

#[derive(Serialize)]
struct EquivalenceFile {
    schema_version: u32,
    #[serde(flatten)]
    report: gamma_forge_core::analytics::EquivalenceReport,
}

struct Bundle {
    ds: SignatureDataset,
    correlation: CorrelationReport,
    regression: RegressionFile,
    pca: Option<PcaProjection>,
    growth: GrowthTable,
    stability: Option<StabilityReport>,
    sampling: SamplingFile,
}

fn load_dataset(args: &ReportArgs, manifest: &mut RunManifest) -> Result<(SignatureDataset, Option<Vec<gamma_forge_core::GammaSemiring>>), Failure> {
    let text = read_input(&args.dataset)?;
    manifest
        .inputs
        .insert(args.dataset.display().to_string(), sha256_hex(text.as_bytes()));
    let (mut ds, skipped) = SignatureDataset::from_csv(&text)
        .map_err(|e| Failure::msg(exit::DATA, format!("{}: {e}", args.dataset.display())))?;
    if skipped > 0 {
        eprintln!("{skipped} row(s) without congruence counts skipped");
    }
    let Some(path) = &args.classes else {
        return Ok((ds, None));
    };
    let (ctext, structures) = parse_structures(path)?;
    manifest.inputs.insert(path.display().to_string(), sha256_hex(ctext.as_bytes()));
    let refs: Vec<_> = structures.iter().collect();
    let detailed = dataset_from_structures(&refs, None)?;
    let csv_hashes: BTreeSet<&str> = ds.rows.iter().map(|r| r.canon_hash.as_str()).collect();
    let class_hashes: BTreeSet<&str> = detailed.rows.iter().map(|r| r.canon_hash.as_str()).collect();
    if csv_hashes != class_hashes {
        return Err(Failure::msg(
            exit::DATA,
            format!(
                "{} and {} describe different classes",
                args.dataset.display(),
                path.display()
            ),
        ));
    }
    // Keep the dataset's own columns (its entropy mode may differ) and attach
    // the structural details.
    for (row, d) in ds.rows.iter_mut().zip(detailed.rows) {
        row.details = d.details;
    }
    Ok((ds, Some(structures)))
}

fn compute(args: &ReportArgs, ds: SignatureDataset, structures: Option<&[gamma_forge_core::GammaSemiring]>) -> Result<Bundle, Failure> {
    let correlation = correlation_report(&ds)?;
    let regression = {
        let with = regression_fit(&ds);
        let without = regression_fit_through_origin(&ds);
        let refused = match (&with, &without) {
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            _ => None,
        };
        RegressionFile {
            schema_version: SCHEMA_VERSION,
            response: "num_ideals",
            regressors: ["n", "g", "entropy_nats"],
            published_r: PUBLISHED_R,
            with_intercept: with.ok(),
            through_origin: without.ok(),
            refused,
        }
    };
    let pca = pca_projection(&ds, Normalization::ZScore).ok();
    let max_n = args
        .max_order
        .unwrap_or_else(|| ds.rows.iter().map(|r| r.signature.n).max().unwrap_or(1));
    let mode = args.mode.mode();
    let growth = growth_table(max_n, args.max_gamma, mode, args.jobs, false)?;
    let stability = match structures {
        Some(s) => Some(stability_check(&s.iter().collect::<Vec<_>>())?),
        None => None,
    };
    let mut cells = Vec::new();
    for n in 1..=max_n.min(DEFAULT_MAX_ORDER) {
        for g in 1..=args.max_gamma.min(DEFAULT_MAX_GAMMA) {
            cells.push(sample_random(&SearchConfig::new(n, g, mode), args.seed, args.trials)?);
        }
    }
    Ok(Bundle {
        ds,
        correlation,
        regression,
        pca,
        growth,
        stability,
        sampling: SamplingFile {
            schema_version: SCHEMA_VERSION,
            seed: args.seed,
            trials: args.trials,
            cells,
        },
    })
}

pub fn run(args: &ReportArgs) -> CmdResult {
    let started = Instant::now();
    let mut manifest = RunManifest::new("report");
    manifest.axiom_mode = Some(args.mode.mode());
    manifest.seed = Some(args.seed);
    let (ds, structures) = load_dataset(args, &mut manifest)?;
    if ds.is_empty() {
        return Err(Failure::msg(exit::REFUSED, "dataset is empty; nothing to report"));
    }
    let b = compute(args, ds, structures.as_deref())?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| Failure::msg(exit::INTERNAL, format!("cannot create {}: {e}", args.out.display())))?;
    let mut files: Vec<(&str, String)> = vec![
        ("correlation.json", to_json(&b.correlation)),
        ("regression.json", to_json(&b.regression)),
        ("growth.csv", b.growth.to_csv()),
        ("growth.json", to_json(&b.growth)),
        (
            "stability.json",
            b.stability
                .as_ref()
                .map_or_else(|| refusal("needs the structures: pass --classes"), to_json),
        ),
        ("sampling.json", to_json(&b.sampling)),
        (
            "equivalence.json",
            to_json(&EquivalenceFile {
                schema_version: SCHEMA_VERSION,
                report: b.ds.equivalence_report(),
            }),
        ),
    ];
    match &b.pca {
        Some(p) => {
            files.push(("pca.csv", p.to_csv()));
            files.push(("pca.gnuplot", p.gnuplot_script("pca.csv")));
            let per_order = pca_projection(&b.ds, Normalization::PerOrder).ok().map(|q| PcaSummary {
                eigenvalues: q.eigenvalues,
                eigenvectors: q.eigenvectors,
                zero_variance: q.zero_variance,
            });
            files.push((
                "pca.json",
                to_json(&PcaFile {
                    schema_version: SCHEMA_VERSION,
                    z_score: p,
                    eigen_residuals: p.eigen_residuals(),
                    reconstruction_error: p.reconstruction_error(&b.ds),
                    per_order,
                }),
            ));
        }
        None => files.push(("pca.json", refusal("PCA needs at least 2 rows"))),
    }
    let plain = summary(&b, false);
    files.push(("summary.txt", plain.clone()));
    for (name, contents) in &files {
        manifest.outputs.insert((*name).to_string(), write_output(&args.out, name, contents)?);
    }
    manifest.wall_time_s = started.elapsed().as_secs_f64();
    write_output(&args.out, "manifest.json", &to_json(&manifest))?;

    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal();
    print!("{}", if color { summary(&b, true) } else { plain });
    Ok(exit::OK)
}

fn summary(b: &Bundle, color: bool) -> String {
    let (claimed, computed, reset) = if color {
        ("\x1b[33mpublished\x1b[0m", "\x1b[36mcomputed\x1b[0m", "")
    } else {
        ("published", "computed", "")
    };
    let mut s = String::new();
    let _ = writeln!(s, "gamma-forge report ({} classes){reset}", b.ds.len());
    let _ = writeln!(s, "Published values are shown for comparison only; none is asserted.\n");

    let _ = writeln!(s, "Automorphism orders");
    for (n, g, name, aut) in PUBLISHED_AUT {
        let label = published_label(name);
        let orders: BTreeSet<u64> = b
            .ds
            .rows
            .iter()
            .filter(|r| r.signature.n == n && r.signature.g == g && r.type_label == label)
            .map(|r| r.signature.aut_order)
            .collect();
        let shown = if orders.is_empty() {
            "no matching classes in dataset".to_string()
        } else {
            format!("{orders:?}")
        };
        let note = if n == 2 && aut > 1 { " (exceeds (n-1)! = 1 for 0-fixing maps)" } else { "" };
        let _ = writeln!(s, "  n={n} g={g} {name} [{label}]: {claimed} {aut}{note}; {computed} {shown}");
    }

    let _ = writeln!(s, "\nSearch steps");
    for (n, g, steps, secs) in PUBLISHED_STEPS {
        let row = b.growth.rows.iter().find(|r| r.n == n && r.g == g);
        let shown = match row.and_then(|r| r.extension_steps) {
            Some(x) => format!("{x} steps"),
            None => "not run".to_string(),
        };
        let _ = writeln!(
            s,
            "  n={n} g={g}: {claimed} {steps} steps, {secs} s; {computed} {shown}, storage {} bits",
            storage_cost(n, g)
        );
    }

    let c = &b.correlation;
    let _ = writeln!(s, "\nkappa ≈ 1 + rho (relative tolerance {KAPPA_RHO_TOLERANCE})");
    let _ = writeln!(
        s,
        "  {computed}: holds {} / fails {}, mean |residual| {:.6}",
        c.approx_holds, c.approx_fails, c.mean_abs_residual
    );

    let _ = writeln!(s, "\nSimple ⟺ zero entropy");
    match &c.simplicity {
        Some(t) => {
            let _ = writeln!(
                s,
                "  {computed}: agree {} / disagree {} (simple&H=0 {}, simple&H>0 {}, not simple&H=0 {}, not simple&H>0 {})",
                t.agreements,
                t.disagreements,
                t.simple_and_zero_entropy,
                t.simple_and_positive_entropy,
                t.not_simple_and_zero_entropy,
                t.not_simple_and_positive_entropy
            );
        }
        None => {
            let _ = writeln!(s, "  needs --classes");
        }
    }

    let _ = writeln!(s, "\n|Con(T)| = |Con(T/Rad)| · |Con(Rad)|");
    match &c.decomposition {
        Some(t) => {
            let _ = writeln!(
                s,
                "  {computed}: holds {} / fails {} / radical trivial {}",
                t.holds, t.fails, t.radical_trivial
            );
        }
        None => {
            let _ = writeln!(s, "  needs --classes");
        }
    }

    let _ = writeln!(s, "\nRegression |Id| ~ n + g + H");
    match &b.regression.with_intercept {
        Some(r) => {
            let _ = writeln!(
                s,
                "  {claimed} R ≈ {PUBLISHED_R}; {computed} R = {:.6}, R² = {:.6}{}",
                r.r,
                r.r_squared,
                if r.singular { " (singular design, minimum-norm fit)" } else { "" }
            );
        }
        None => {
            let _ = writeln!(
                s,
                "  {claimed} R ≈ {PUBLISHED_R}; {computed} refused: {}",
                b.regression.refused.as_deref().unwrap_or("")
            );
        }
    }
    if let Some(r) = &b.regression.through_origin {
        let _ = writeln!(s, "  through origin: R = {:.6}, R² = {:.6}", r.r, r.r_squared);
    }

    let _ = writeln!(s, "\nGrowth N(n,g)");
    for r in &b.growth.rows {
        let count = r.classes.map_or("refused".to_string(), |c| c.to_string());
        let ratio = r.ratio_to_previous_g.map_or(String::new(), |x| format!(", ratio to g-1: {x:.4}"));
        let _ = writeln!(s, "  n={} g={}: {computed} N = {count}{ratio}", r.n, r.g);
    }

    let _ = writeln!(s, "\nSampling E|Id| vs n·g");
    for cell in &b.sampling.cells {
        let mean = match (cell.mean_ideals, cell.mean_ideals_ci95) {
            (Some(m), Some((lo, hi))) => format!("{m:.4} [{lo:.4}, {hi:.4}]"),
            (Some(m), None) => format!("{m:.4}"),
            _ => "no acceptances".to_string(),
        };
        let _ = writeln!(
            s,
            "  n={} g={} (n·g={}): {computed} accepted {}/{}, mean |Id| {mean}",
            cell.n, cell.g, cell.size_product, cell.accepted, cell.trials
        );
    }

    let _ = writeln!(s, "\nDuplication stability");
    match &b.stability {
        Some(st) => {
            let _ = writeln!(
                s,
                "  {computed}: {} classes, signature changes only in g for all, type label stable for {}",
                st.rows.len(),
                st.type_label_stable
            );
        }
        None => {
            let _ = writeln!(s, "  needs --classes");
        }
    }

    let eq = b.ds.equivalence_report();
    let _ = writeln!(
        s,
        "\nSignature equivalence: {} classes, {} distinct signatures, {} colliding pairs",
        eq.classes, eq.distinct_signatures, eq.colliding_pairs
    );
    s
}
