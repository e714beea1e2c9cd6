use super::SearchConfig;
use crate::error::{Error, Result};
use crate::structure::{verify_structure, AdditiveTable, GammaSemiring, TernaryTensor};

/// Largest number of free cells the unpruned scan accepts.
pub const MAX_NAIVE_FREE_CELLS: usize = 16;
/// Largest candidate count (`n^cells`) the unpruned scan accepts.
pub const MAX_NAIVE_CANDIDATES: u64 = 1 << 24;

/// Unpruned reference enumeration: every assignment of the cells not forced
/// by absorption (and, in symmetric mode, one cell per coordinate multiset)
/// is expanded into full tensors and kept iff [`verify_structure`] accepts.
///
/// Shares nothing with the pruned search besides the structure types.
pub fn naive_enumerate(add: &AdditiveTable, cfg: &SearchConfig) -> Result<Vec<GammaSemiring>> {
    let n = add.order();
    if n != cfg.n || cfg.g == 0 {
        return Err(Error::Contract("naive scan configured for a different order".into()));
    }
    // one representative triple per free cell, per γ
    let mut triples = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if !cfg.mode.symmetric || (a <= b && b <= c) {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    let cells = triples.len() * cfg.g;
    let candidates = (n as u64).checked_pow(cells as u32);
    if cells > MAX_NAIVE_FREE_CELLS || candidates.is_none_or(|c| c > MAX_NAIVE_CANDIDATES) {
        return Err(Error::CapExceeded(format!(
            "naive scan over {cells} free cells of order {n} is too large \
             (limits: {MAX_NAIVE_FREE_CELLS} cells, {MAX_NAIVE_CANDIDATES} candidates)"
        )));
    }

    let mut digits = vec![0usize; cells];
    let mut out = Vec::new();
    loop {
        let tensors = (0..cfg.g)
            .map(|gamma| {
                let mut cube = vec![0u8; n * n * n];
                for (t, triple) in triples.iter().enumerate() {
                    let v = digits[gamma * triples.len() + t] as u8;
                    for [x, y, z] in orderings(*triple, cfg.mode.symmetric) {
                        cube[(x * n + y) * n + z] = v;
                    }
                }
                TernaryTensor::from_flat(n, cube)
            })
            .collect::<Result<Vec<_>>>()?;
        let s = GammaSemiring::new(add.clone(), tensors, cfg.mode)?;
        if verify_structure(&s).is_valid() {
            out.push(s);
        }
        // odometer, last digit fastest
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn orderings([a, b, c]: [usize; 3], symmetric: bool) -> Vec<[usize; 3]> {
    if symmetric {
        vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
    } else {
        vec![[a, b, c]]
    }
}
