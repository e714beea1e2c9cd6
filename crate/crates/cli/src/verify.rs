use gamma_forge_core::verify_structure;

use crate::{exit, parse_structures, CmdResult, VerifyArgs};

pub fn run(args: &VerifyArgs) -> CmdResult {
    let (text, structures) = parse_structures(&args.file)?;
    let lines: Vec<usize> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, _)| i + 1)
        .collect();
    let mut invalid = 0;
    for (s, line) in structures.iter().zip(&lines) {
        let report = verify_structure(s);
        if !report.is_valid() {
            invalid += 1;
            println!("line {line}: {} violation(s)", report.violations.len());
            for v in &report.violations {
                println!("  {v}");
            }
        }
    }
    println!("{} structures, {} valid, {invalid} invalid", structures.len(), structures.len() - invalid);
    Ok(if invalid == 0 { exit::OK } else { exit::INVALID })
}
