use crate::structure::GammaSemiring;

/// Partition of the nonzero elements into cells of equal invariant color,
/// ordered by color. Colors start from additive and diagonal statistics and
/// are refined by the colors of sums and products until stable.
///
/// Every step is label-free, so isomorphic structures get the same cell
/// sizes in the same order and any isomorphism maps cells onto cells.
pub fn element_cells(s: &GammaSemiring) -> Vec<Vec<usize>> {
    let n = s.order();
    let g = s.gamma_count();
    let initial: Vec<Vec<u64>> = (0..n)
        .map(|a| {
            let mut key = vec![
                (a == 0) as u64,
                (s.add(a, a) == a) as u64,
                cyclic_size(s, a) as u64,
                (0..n).filter(|&b| s.add(a, b) == a).count() as u64,
                (0..n).filter(|&b| s.add(a, b) == 0).count() as u64,
            ];
            for gamma in 0..g {
                let diag = s.mul(gamma, a, a, a);
                key.push((diag == a) as u64);
                key.push((diag == 0) as u64);
                let mut zeros = 0u64;
                let mut fixed = 0u64;
                for b in 0..n {
                    for c in 0..n {
                        let v = s.mul(gamma, a, b, c);
                        zeros += (v == 0) as u64;
                        fixed += (v == a) as u64;
                    }
                }
                key.push(zeros);
                key.push(fixed);
            }
            key
        })
        .collect();
    let mut colors = rank(&initial);
    loop {
        let keys: Vec<Vec<u64>> = (0..n)
            .map(|a| {
                let mut key = vec![colors[a] as u64];
                let mut sums: Vec<(usize, usize)> = (0..n).map(|b| (colors[b], colors[s.add(a, b)])).collect();
                sums.sort_unstable();
                key.extend(sums.into_iter().flat_map(|(x, y)| [x as u64, y as u64]));
                for gamma in 0..g {
                    let mut prods: Vec<(usize, usize, usize)> = (0..n)
                        .flat_map(|b| (0..n).map(move |c| (b, c)))
                        .map(|(b, c)| (colors[b], colors[c], colors[s.mul(gamma, a, b, c)]))
                        .collect();
                    prods.sort_unstable();
                    key.extend(prods.into_iter().flat_map(|(x, y, z)| [x as u64, y as u64, z as u64]));
                }
                key
            })
            .collect();
        let next = rank(&keys);
        let count = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if count(&next) == count(&colors) {
            break;
        }
        colors = next;
    }
    let mut cells: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in 1..n {
        match cells.iter_mut().find(|(c, _)| *c == colors[a]) {
            Some((_, members)) => members.push(a),
            None => cells.push((colors[a], vec![a])),
        }
    }
    cells.sort_by_key(|(c, _)| *c);
    cells.into_iter().map(|(_, m)| m).collect()
}

fn cyclic_size(s: &GammaSemiring, a: usize) -> usize {
    let mut seen = vec![a];
    let mut cur = a;
    loop {
        cur = s.add(cur, a);
        if seen.contains(&cur) {
            return seen.len();
        }
        seen.push(cur);
    }
}

/// Dense ranks of the keys in sorted order.
fn rank(keys: &[Vec<u64>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<u64>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("present"))
        .collect()
}

/// Relabelings (old → new) that place cell `i` on the positions after cells
/// `0..i`, in every internal order. Element 0 stays at 0.
pub(crate) fn cell_respecting_permutations(cells: &[Vec<usize>]) -> impl Iterator<Item = Vec<usize>> {
    let n = 1 + cells.iter().map(Vec::len).sum::<usize>();
    let orderings: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations_of(c)).collect();
    let mut odometer = vec![0usize; cells.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut perm = vec![0; n];
        let mut pos = 1;
        for (k, ords) in orderings.iter().enumerate() {
            for &x in &ords[odometer[k]] {
                perm[x] = pos;
                pos += 1;
            }
        }
        done = true;
        for k in (0..odometer.len()).rev() {
            odometer[k] += 1;
            if odometer[k] < orderings[k].len() {
                done = false;
                break;
            }
            odometer[k] = 0;
        }
        Some(perm)
    })
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
