use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::{zero_fixing_permutations, AdditiveTable, ElementId};

/// Hard limit for monoid enumeration.
pub const MAX_MONOID_ORDER: usize = 6;

/// One commutative monoid with identity 0 per isomorphism class, each in its
/// lexicographically smallest labeling, sorted.
///
/// The free entries `(a, b)` with `1 ≤ a ≤ b < n` are filled by backtracking;
/// an associativity instance is checked as soon as every entry it reads is
/// filled. Duplicates are removed by minimizing over all 0-fixing
/// relabelings.
pub fn enumerate_additive_monoids(n: usize) -> Result<Vec<AdditiveTable>> {
    if n == 0 || n > MAX_MONOID_ORDER {
        return Err(Error::CapExceeded(format!(
            "additive monoids are enumerated for 1 ≤ n ≤ {MAX_MONOID_ORDER}, got {n}; \
             the labeled search space grows like n^(n(n-1)/2)"
        )));
    }
    let mut table = vec![u8::MAX; n * n];
    for a in 0..n {
        table[a] = a as u8;
        table[a * n] = a as u8;
    }
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let perms: Vec<Vec<usize>> = zero_fixing_permutations(n).collect();
    let mut classes = BTreeSet::new();
    fill(n, &free, 0, &mut table, &mut |t| {
        classes.insert(minimal_labeling(n, t, &perms));
    });
    classes
        .into_iter()
        .map(|sum| AdditiveTable::from_flat(n, sum))
        .collect()
}

fn fill(n: usize, free: &[(usize, usize)], k: usize, table: &mut [u8], emit: &mut impl FnMut(&[u8])) {
    if k == free.len() {
        emit(table);
        return;
    }
    let (a, b) = free[k];
    for v in 0..n as u8 {
        table[a * n + b] = v;
        table[b * n + a] = v;
        if associative_so_far(n, table) {
            fill(n, free, k + 1, table, emit);
        }
    }
    table[a * n + b] = u8::MAX;
    table[b * n + a] = u8::MAX;
}

fn associative_so_far(n: usize, t: &[u8]) -> bool {
    let get = |x: usize, y: usize| t[x * n + y];
    for x in 1..n {
        for y in 1..n {
            let xy = get(x, y);
            if xy == u8::MAX {
                continue;
            }
            for z in 1..n {
                let yz = get(y, z);
                if yz == u8::MAX {
                    continue;
                }
                let (l, r) = (get(xy as usize, z), get(x, yz as usize));
                if l != u8::MAX && r != u8::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn minimal_labeling(n: usize, t: &[u8], perms: &[Vec<usize>]) -> Vec<ElementId> {
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; n * n];
    for perm in perms {
        for a in 0..n {
            for b in 0..n {
                buf[perm[a] * n + perm[b]] = perm[t[a * n + b] as usize] as u8;
            }
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.expect("identity permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::validate_additive;

    #[test]
    fn orders_one_and_two() {
        assert_eq!(enumerate_additive_monoids(1).unwrap().len(), 1);
        let two = enumerate_additive_monoids(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&AdditiveTable::cyclic(2)));
        assert!(two.contains(&AdditiveTable::chain_join(2)));
    }

    #[test]
    fn every_table_is_a_commutative_monoid() {
        for n in 1..=4 {
            for t in enumerate_additive_monoids(n).unwrap() {
                assert!(validate_additive(&t).is_valid());
            }
        }
    }

    #[test]
    fn refuses_large_orders() {
        assert!(matches!(enumerate_additive_monoids(7), Err(Error::CapExceeded(_))));
        assert!(enumerate_additive_monoids(0).is_err());
    }
}
