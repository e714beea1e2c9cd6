use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BOOLEAN: &str = r#"{"n":2,"g":1,"mode":{"symmetric":true,"associative":false},"add":[[0,1],[1,1]],"tensors":[[[[0,0],[0,0]],[[0,0],[0,1]]]]}"#;

fn gf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-forge"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn enumerate(dir: &Path, n: usize, g: usize) -> String {
    let out = dir.join(format!("e{n}{g}"));
    let o = gf(&["enumerate", "--order", &n.to_string(), "--gamma", &g.to_string(), "--out", p(&out), "--no-cache"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read_to_string(out.join("classes.jsonl")).unwrap()
}

#[test]
fn enumerate_line_counts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(enumerate(dir.path(), 1, 1).lines().count(), 1);
    assert_eq!(enumerate(dir.path(), 2, 1).lines().count(), 4);
    let stats: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("e21/stats.json")).unwrap()).unwrap();
    assert_eq!(stats["classes"], 4);
    assert!(dir.path().join("e21/manifest.json").exists());
}

#[test]
fn enumerate_refuses_beyond_caps() {
    let dir = tempfile::tempdir().unwrap();
    let o = gf(&["enumerate", "--order", "5", "--gamma", "1", "--out", p(dir.path()), "--no-cache"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gf(&["enumerate", "--order", "3", "--gamma", "2", "--budget", "5", "--out", p(dir.path()), "--no-cache"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(gf(&["enumerate", "--order"]).status.code(), Some(64));
    assert_eq!(gf(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(gf(&["--help"]).status.code(), Some(0));
    assert_eq!(gf(&["verify", "/nonexistent/file.jsonl"]).status.code(), Some(65));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, "{not json}\n").unwrap();
    let o = gf(&["verify", p(&bad)]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn verify_reports_absorbing_violation() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.jsonl");
    fs::write(&good, format!("{BOOLEAN}\n")).unwrap();
    let o = gf(&["verify", p(&good)]);
    assert_eq!(o.status.code(), Some(0));

    let corrupted = BOOLEAN.replace("[[[[0,0],[0,0]]", "[[[[0,0],[0,1]]");
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, format!("{corrupted}\n")).unwrap();
    let o = gf(&["verify", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("absorbing"), "{text}");
    assert!(text.contains("absorbing at (γ=0, a=0, b=1, c=1)"), "{text}");
}

#[test]
fn invariants_for_boolean() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.jsonl");
    fs::write(&file, format!("{BOOLEAN}\n")).unwrap();
    let o = gf(&["invariants", p(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "canon_hash,n,g,num_ideals,num_congruences,aut_order,entropy_nats,type_label,rho,kappa"
    );
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&cols[1..6], &["2", "1", "2", "2", "1"]);
    assert!((cols[6].parse::<f64>().unwrap() - 2f64.ln()).abs() < 1e-15);
    assert_eq!(cols[7], "BOOLEAN");
    assert_eq!(cols[8], "0.5");
}

#[test]
fn entropy_modes_differ_only_in_entropy() {
    let dir = tempfile::tempdir().unwrap();
    let text = enumerate(dir.path(), 3, 1);
    let file = dir.path().join("c.jsonl");
    fs::write(&file, text).unwrap();
    let a = String::from_utf8(gf(&["invariants", p(&file)]).stdout).unwrap();
    let b = String::from_utf8(gf(&["invariants", p(&file), "--entropy-mode", "additive-aut"]).stdout).unwrap();
    assert_eq!(a.lines().count(), b.lines().count());
    for (x, y) in a.lines().zip(b.lines()) {
        let (x, y): (Vec<&str>, Vec<&str>) = (x.split(',').collect(), y.split(',').collect());
        for k in (0..x.len()).filter(|&k| k != 6) {
            assert_eq!(x[k], y[k]);
        }
    }
}

#[test]
fn invariants_writes_spectra_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.jsonl");
    fs::write(&file, format!("{BOOLEAN}\n")).unwrap();
    let out = dir.path().join("sig.csv");
    let spectra = dir.path().join("spec.json");
    let o = gf(&["invariants", p(&file), "--out", p(&out), "--spectra", p(&spectra)]);
    assert_eq!(o.status.code(), Some(0));
    let spec: serde_json::Value = serde_json::from_str(&fs::read_to_string(&spectra).unwrap()).unwrap();
    assert_eq!(spec[0]["primes"], serde_json::json!([1]));
    assert!(dir.path().join("sig.csv.manifest.json").exists());
}

#[test]
fn report_refuses_empty_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    fs::write(&csv, "canon_hash,n,g,num_ideals,num_congruences,aut_order,entropy_nats,type_label,rho,kappa\n").unwrap();
    let o = gf(&["report", p(&csv), "--out", p(&dir.path().join("r"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_bundle_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut all = String::new();
    for (n, g) in [(1, 1), (2, 1), (2, 2)] {
        all.push_str(&enumerate(dir.path(), n, g));
    }
    let classes = dir.path().join("all.jsonl");
    fs::write(&classes, all).unwrap();
    let csv = dir.path().join("sig.csv");
    assert_eq!(gf(&["invariants", p(&classes), "--out", p(&csv)]).status.code(), Some(0));
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let o = gf(&["report", p(&csv), "--classes", p(&classes), "--out", p(&out), "--trials", "100", "--jobs", jobs]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let (a, b) = (run("r1", "1"), run("r2", "4"));
    let names = [
        "correlation.json",
        "regression.json",
        "growth.csv",
        "growth.json",
        "stability.json",
        "sampling.json",
        "equivalence.json",
        "pca.csv",
        "pca.gnuplot",
        "pca.json",
        "summary.txt",
    ];
    for name in names {
        let x = fs::read(a.join(name)).unwrap_or_else(|_| panic!("{name} missing"));
        assert_eq!(x, fs::read(b.join(name)).unwrap(), "{name} differs");
    }
    assert!(a.join("manifest.json").exists());
    let summary = fs::read_to_string(a.join("summary.txt")).unwrap();
    assert!(summary.contains("published"));
}

#[test]
fn report_rejects_mismatched_classes() {
    let dir = tempfile::tempdir().unwrap();
    let c21 = dir.path().join("c21.jsonl");
    fs::write(&c21, enumerate(dir.path(), 2, 1)).unwrap();
    let c22 = dir.path().join("c22.jsonl");
    fs::write(&c22, enumerate(dir.path(), 2, 2)).unwrap();
    let csv = dir.path().join("sig.csv");
    gf(&["invariants", p(&c21), "--out", p(&csv)]);
    let o = gf(&["report", p(&csv), "--classes", p(&c22), "--out", p(&dir.path().join("r"))]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn cache_hits_replay_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = gf(&["enumerate", "--order", "3", "--gamma", "1", "--out", p(&out), "--cache-dir", p(&cache)]);
        assert_eq!(o.status.code(), Some(0));
        (out, String::from_utf8(o.stderr).unwrap())
    };
    let (a, first) = run("a");
    assert!(!first.contains("cache hit"));
    let (b, second) = run("b");
    assert!(second.contains("cache hit"), "{second}");
    assert!(second.contains("spot-check passed"), "{second}");
    for name in ["classes.jsonl", "stats.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap());
    }
}
