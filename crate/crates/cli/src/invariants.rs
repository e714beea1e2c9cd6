use std::path::Path;
use std::time::Instant;

use gamma_forge_core::analytics::{records_to_csv, CsvRecord};
use gamma_forge_core::canonical::{automorphism_group, canonical_form};
use gamma_forge_core::invariants::{
    classify_type, congruences, entropy, ideals, radical, spectrum, spectrum_checks, SpectrumChecks,
    MAX_CONGRUENCE_ORDER, MAX_IDEAL_SCAN_ORDER,
};
use gamma_forge_core::{verify_structure, GammaSemiring};
use serde::Serialize;

use crate::manifest::{sha256_hex, RunManifest};
use crate::{exit, parse_structures, to_json, CmdResult, Failure, InvariantsArgs};

#[derive(Serialize)]
struct SpectrumRecord {
    canon_hash: String,
    /// Prime ideals as member bitmasks, ascending.
    primes: Vec<u64>,
    /// Closed sets `V(I)` as sorted lists of indices into `primes`.
    closed_sets: Vec<Vec<usize>>,
    checks: SpectrumChecks,
}

fn record(s: &GammaSemiring, args: &InvariantsArgs) -> Result<CsvRecord, Failure> {
    let n = s.order();
    let num_congruences = if n <= MAX_CONGRUENCE_ORDER { Some(congruences(s)?.len()) } else { None };
    Ok(CsvRecord {
        canon_hash: canonical_form(s).hash(),
        n,
        g: s.gamma_count(),
        num_ideals: ideals(s)?.len(),
        num_congruences,
        aut_order: automorphism_group(s).order(),
        entropy_nats: entropy(s, args.entropy_mode.action()),
        type_label: classify_type(s),
        rho: radical(s)?.len() as f64 / n as f64,
        kappa: num_congruences.map(|c| c as f64 / n as f64),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<String, Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::msg(exit::INTERNAL, format!("cannot write {}: {e}", path.display())))?;
    Ok(sha256_hex(contents.as_bytes()))
}

pub fn run(args: &InvariantsArgs) -> CmdResult {
    let started = Instant::now();
    let (text, structures) = parse_structures(&args.file)?;
    if let Some(big) = structures.iter().find(|s| s.order() > MAX_IDEAL_SCAN_ORDER) {
        return Err(Failure::msg(
            exit::REFUSED,
            format!("order {} exceeds the ideal scan limit of {MAX_IDEAL_SCAN_ORDER}", big.order()),
        ));
    }
    for (k, s) in structures.iter().enumerate() {
        if let Some(v) = verify_structure(s).first() {
            return Err(Failure::msg(exit::INVALID, format!("structure {} is not valid: {v}", k + 1)));
        }
    }
    let records = structures.iter().map(|s| record(s, args)).collect::<Result<Vec<_>, _>>()?;
    let flagged = records.iter().filter(|r| r.num_congruences.is_none()).count();
    if flagged > 0 {
        eprintln!("{flagged} row(s) above the congruence scan limit of {MAX_CONGRUENCE_ORDER}; their counts are left empty");
    }
    let csv = records_to_csv(&records);

    let mut manifest = RunManifest::new(&format!("invariants --entropy-mode {:?}", args.entropy_mode));
    manifest
        .inputs
        .insert(args.file.display().to_string(), sha256_hex(text.as_bytes()));
    match &args.out {
        Some(path) => {
            let digest = write_file(path, &csv)?;
            manifest.outputs.insert(path.display().to_string(), digest);
        }
        None => print!("{csv}"),
    }
    if let Some(path) = &args.spectra {
        let spectra = structures
            .iter()
            .zip(&records)
            .map(|(s, r)| {
                let spec = spectrum(s)?;
                Ok(SpectrumRecord {
                    canon_hash: r.canon_hash.clone(),
                    primes: spec.primes.iter().map(|p| p.mask()).collect(),
                    checks: spectrum_checks(s, &spec),
                    closed_sets: spec.closed_sets,
                })
            })
            .collect::<Result<Vec<_>, gamma_forge_core::Error>>()?;
        let digest = write_file(path, &to_json(&spectra))?;
        manifest.outputs.insert(path.display().to_string(), digest);
    }
    if let Some(out) = args.out.as_ref().or(args.spectra.as_ref()) {
        manifest.wall_time_s = started.elapsed().as_secs_f64();
        let mut name = out.as_os_str().to_owned();
        name.push(".manifest.json");
        write_file(Path::new(&name), &to_json(&manifest))?;
    }
    Ok(exit::OK)
}
