//! Brute-force oracles written directly from the definitions. Nothing here
//! calls the crate's search, canonical or invariant code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gamma_forge_core::{AdditiveTable, AxiomConfig, GammaSemiring, TernaryTensor};

/// Plain tables: `add[a][b]`, and one `n³` cube per parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Raw {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub cubes: Vec<Vec<usize>>,
}

impl Raw {
    pub fn mul(&self, k: usize, a: usize, b: usize, c: usize) -> usize {
        self.cubes[k][(a * self.n + b) * self.n + c]
    }

    pub fn from_structure(s: &GammaSemiring) -> Raw {
        let n = s.order();
        Raw {
            n,
            add: (0..n).map(|a| (0..n).map(|b| s.add(a, b)).collect()).collect(),
            cubes: (0..s.gamma_count())
                .map(|k| {
                    let mut cube = Vec::with_capacity(n * n * n);
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                cube.push(s.mul(k, a, b, c));
                            }
                        }
                    }
                    cube
                })
                .collect(),
        }
    }

    pub fn to_structure(&self, mode: AxiomConfig) -> GammaSemiring {
        let n = self.n;
        let add = AdditiveTable::from_rows(
            &self.add.iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        let tensors = self
            .cubes
            .iter()
            .map(|cube| TernaryTensor::from_fn(n, |a, b, c| cube[(a * n + b) * n + c]).unwrap())
            .collect();
        GammaSemiring::new(add, tensors, mode).unwrap()
    }

    /// `π` applied to every table: element `x` becomes `π[x]`.
    pub fn relabel(&self, p: &[usize]) -> Raw {
        let n = self.n;
        let mut add = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                add[p[a]][p[b]] = p[self.add[a][b]];
            }
        }
        let cubes = (0..self.cubes.len())
            .map(|k| {
                let mut cube = vec![0; n * n * n];
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            cube[(p[a] * n + p[b]) * n + p[c]] = p[self.mul(k, a, b, c)];
                        }
                    }
                }
                cube
            })
            .collect();
        Raw { n, add, cubes }
    }

    /// Smallest relabeling over all 0-fixing permutations.
    pub fn min_key(&self) -> Raw {
        perms0(self.n).iter().map(|p| self.relabel(p)).min().unwrap()
    }
}

/// All permutations of `0..n` with `0 ↦ 0`.
pub fn perms0(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..n).collect(), &mut vec![0], &mut out);
    out
}

/// Every labeled commutative monoid table on `0..n` with identity 0.
pub fn monoid_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let total = n.pow(pairs.len() as u32);
    for code in 0..total {
        let mut t = vec![vec![0; n]; n];
        for x in 0..n {
            t[0][x] = x;
            t[x][0] = x;
        }
        let mut c = code;
        for &(a, b) in &pairs {
            t[a][b] = c % n;
            t[b][a] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[t[a][b]][d] == t[a][t[b][d]])));
        if assoc {
            out.push(t);
        }
    }
    out
}

/// Isomorphism classes of additive monoids of order `n`.
pub fn monoid_class_count(n: usize) -> usize {
    monoid_tables(n)
        .into_iter()
        .map(|add| {
            Raw {
                n,
                add,
                cubes: vec![],
            }
            .min_key()
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// Axiom check straight from the definitions.
pub fn is_valid(r: &Raw, symmetric: bool) -> bool {
    let n = r.n;
    let add = &r.add;
    for k in 0..r.cubes.len() {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = r.mul(k, a, b, c);
                    if (a == 0 || b == 0 || c == 0) && v != 0 {
                        return false;
                    }
                    if symmetric
                        && [r.mul(k, a, c, b), r.mul(k, b, a, c), r.mul(k, b, c, a), r.mul(k, c, a, b), r.mul(k, c, b, a)]
                            .iter()
                            .any(|&w| w != v)
                    {
                        return false;
                    }
                    for d in 0..n {
                        if r.mul(k, add[a][d], b, c) != add[v][r.mul(k, d, b, c)]
                            || r.mul(k, a, add[b][d], c) != add[v][r.mul(k, a, d, c)]
                            || r.mul(k, a, b, add[c][d]) != add[v][r.mul(k, a, b, d)]
                        {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every cube on `0..n` that is zero on any zero argument, optionally
/// symmetric. Values on the remaining cells range over all of `0..n`.
pub fn all_cubes(n: usize, symmetric: bool) -> Vec<Vec<usize>> {
    let mut cells: Vec<[usize; 3]> = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if !symmetric || (a <= b && b <= c) {
                    cells.push([a, b, c]);
                }
            }
        }
    }
    let total = n.pow(cells.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut cube = vec![0; n * n * n];
        let mut x = code;
        for cell in &cells {
            let v = x % n;
            x /= n;
            let mut ps = vec![*cell];
            if symmetric {
                let [a, b, c] = *cell;
                ps = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
            }
            for [a, b, c] in ps {
                cube[(a * n + b) * n + c] = v;
            }
        }
        out.push(cube);
    }
    out
}

/// Valid labeled structures of order `n` with `g` parameters over one table.
pub fn brute_families(add: &[Vec<usize>], g: usize, symmetric: bool) -> Vec<Raw> {
    let n = add.len();
    let singles: Vec<Vec<usize>> = all_cubes(n, symmetric)
        .into_iter()
        .filter(|cube| {
            is_valid(
                &Raw {
                    n,
                    add: add.to_vec(),
                    cubes: vec![cube.clone()],
                },
                symmetric,
            )
        })
        .collect();
    // Each law involves a single parameter, so families are tuples of valid cubes.
    let mut fams: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..g {
        fams = fams
            .into_iter()
            .flat_map(|f| {
                singles.iter().map(move |c| {
                    let mut f = f.clone();
                    f.push(c.clone());
                    f
                })
            })
            .collect();
    }
    fams.into_iter()
        .map(|cubes| Raw {
            n,
            add: add.to_vec(),
            cubes,
        })
        .collect()
}

/// Isomorphism classes over every labeled monoid of order `n`.
pub fn brute_class_count(n: usize, g: usize, symmetric: bool) -> usize {
    let mut keys = BTreeSet::new();
    for add in monoid_tables(n) {
        for r in brute_families(&add, g, symmetric) {
            keys.insert(r.min_key());
        }
    }
    keys.len()
}

pub fn brute_isomorphic(a: &Raw, b: &Raw) -> bool {
    a.n == b.n && a.cubes.len() == b.cubes.len() && perms0(a.n).iter().any(|p| &a.relabel(p) == b)
}

pub fn brute_aut_order(r: &Raw) -> usize {
    perms0(r.n).iter().filter(|p| &r.relabel(p) == r).count()
}

/// Ideals by scanning every subset containing 0.
pub fn brute_ideals(r: &Raw) -> Vec<u64> {
    let n = r.n;
    (0u64..1 << n)
        .filter(|m| m & 1 == 1)
        .filter(|&m| {
            let has = |x: usize| m >> x & 1 == 1;
            let members: Vec<usize> = (0..n).filter(|&x| has(x)).collect();
            members.iter().all(|&a| members.iter().all(|&b| has(r.add[a][b])))
                && (0..r.cubes.len()).all(|k| {
                    members.iter().all(|&i| {
                        (0..n).all(|x| {
                            (0..n).all(|y| has(r.mul(k, i, x, y)) && has(r.mul(k, x, i, y)) && has(r.mul(k, x, y, i)))
                        })
                    })
                })
        })
        .collect()
}

/// Every partition of `0..n` as a canonical label vector.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(i + 1, n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), 0, &mut out);
    out
}

pub fn brute_congruence_count(r: &Raw) -> usize {
    let n = r.n;
    partitions(n)
        .into_iter()
        .filter(|l| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| l[a] == l[b]).collect();
            pairs.iter().all(|&(a, b)| {
                (0..n).all(|x| l[r.add[a][x]] == l[r.add[b][x]])
                    && (0..r.cubes.len()).all(|k| {
                        (0..n).all(|x| {
                            (0..n).all(|y| {
                                l[r.mul(k, a, x, y)] == l[r.mul(k, b, x, y)]
                                    && l[r.mul(k, x, a, y)] == l[r.mul(k, x, b, y)]
                                    && l[r.mul(k, x, y, a)] == l[r.mul(k, x, y, b)]
                            })
                        })
                    })
            })
        })
        .count()
}

/// Class representatives of the default-mode corpus for `n ≤ max_n`, `g ≤ max_g`.
pub fn corpus(max_n: usize, max_g: usize) -> Vec<GammaSemiring> {
    use gamma_forge_core::{enumerate_classes, SearchConfig};
    let mut out = Vec::new();
    for n in 1..=max_n {
        for g in 1..=max_g {
            let (classes, _) = enumerate_classes(&SearchConfig::new(n, g, AxiomConfig::default())).unwrap();
            out.extend(classes.into_iter().map(|c| c.representative));
        }
    }
    out
}
