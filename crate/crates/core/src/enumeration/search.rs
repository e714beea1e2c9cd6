use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::layout::{CellLayout, ZERO};
use super::{SearchConfig, SearchStats};
use crate::error::{Error, Result};
use crate::structure::{validate_additive, verify_structure, AdditiveTable, Axiom, GammaSemiring, Violation};

/// A rejected partial assignment and the law instance it falsifies.
#[derive(Clone, Debug)]
pub struct PruneWitness {
    /// Value of every `(γ, a, b, c)` cell, row-major; `None` if not yet assigned.
    pub partial: Vec<Option<u8>>,
    pub violation: Violation,
}

/// `{lhs} = {r1} + {r2}` over three cells.
#[derive(Clone, Debug)]
struct DistInstance {
    lhs: u32,
    r1: u32,
    r2: u32,
    axiom: Axiom,
    gamma: usize,
    args: [usize; 4],
}

/// `{x, y, z}_δ` where the slot `slot` of the outer product holds the value
/// of the inner cell and the other two slots hold `statics`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Expr {
    inner: u32,
    delta: usize,
    slot: usize,
    statics: [usize; 2],
}

#[derive(Clone, Debug)]
struct Equation {
    lhs: Expr,
    rhs: Expr,
    gamma: usize,
    args: [usize; 5],
}

/// Law instances indexed by the cell whose assignment completes them.
struct Constraints {
    dist_by_trigger: Vec<Vec<DistInstance>>,
    equations: Vec<Equation>,
    /// Equations whose inner cells are all assigned once this cell is.
    inner_trigger: Vec<Vec<u32>>,
    /// Equations with an outer product matching a watch key.
    watchers: Vec<Vec<u32>>,
}

impl Constraints {
    fn build(layout: &CellLayout, add: &AdditiveTable, associative: bool) -> Self {
        let n = layout.n;
        let f = layout.free_count();
        let mut dist_by_trigger: Vec<Vec<DistInstance>> = vec![Vec::new(); f];
        let mut seen = std::collections::HashSet::new();
        for gamma in 0..layout.g {
            for a in 1..n {
                for b in 1..n {
                    let ab = add.get(a, b);
                    for c in 1..n {
                        for d in 1..n {
                            let forms = [
                                (Axiom::DistributiveLeft, (ab, c, d), (a, c, d), (b, c, d), [a, b, c, d]),
                                (Axiom::DistributiveMiddle, (c, ab, d), (c, a, d), (c, b, d), [c, a, b, d]),
                                (Axiom::DistributiveRight, (c, d, ab), (c, d, a), (c, d, b), [c, d, a, b]),
                            ];
                            for (axiom, l, r1, r2, args) in forms {
                                let lhs = layout.cell(gamma, l.0, l.1, l.2);
                                let r1 = layout.cell(gamma, r1.0, r1.1, r1.2);
                                let r2 = layout.cell(gamma, r2.0, r2.1, r2.2);
                                if !seen.insert((lhs, r1.min(r2), r1.max(r2))) {
                                    continue;
                                }
                                let trigger = [lhs, r1, r2].into_iter().filter(|&x| x != ZERO).max();
                                if let Some(t) = trigger {
                                    dist_by_trigger[t as usize].push(DistInstance {
                                        lhs,
                                        r1,
                                        r2,
                                        axiom,
                                        gamma,
                                        args,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        let mut equations = Vec::new();
        let mut inner_trigger: Vec<Vec<u32>> = vec![Vec::new(); f];
        let mut watchers: Vec<Vec<u32>> = vec![Vec::new(); layout.g * 3 * n * n];
        if associative {
            let mut seen_eq = std::collections::HashSet::new();
            let expr = |gamma: usize, delta: usize, inner: (usize, usize, usize), slot: usize, statics: [usize; 2]| {
                let statics = if layout.symmetric {
                    [statics[0].min(statics[1]), statics[0].max(statics[1])]
                } else {
                    statics
                };
                Expr {
                    inner: layout.cell(gamma, inner.0, inner.1, inner.2),
                    delta,
                    slot: if layout.symmetric { 0 } else { slot },
                    statics,
                }
            };
            for gamma in 0..layout.g {
                for delta in 0..layout.g {
                    for a in 1..n {
                        for b in 1..n {
                            for c in 1..n {
                                for d in 1..n {
                                    for e in 1..n {
                                        let e1 = expr(gamma, delta, (a, b, c), 0, [d, e]);
                                        let e2 = expr(gamma, delta, (b, c, d), 1, [a, e]);
                                        let e3 = expr(gamma, delta, (c, d, e), 2, [a, b]);
                                        for (x, y) in [(e1, e2), (e2, e3)] {
                                            if x == y || !seen_eq.insert((x.min(y), x.max(y))) {
                                                continue;
                                            }
                                            let id = equations.len() as u32;
                                            let t = x.inner.max(y.inner);
                                            inner_trigger[t as usize].push(id);
                                            for ex in [x, y] {
                                                watchers[watch_key(n, ex.delta, ex.slot, ex.statics)].push(id);
                                            }
                                            equations.push(Equation {
                                                lhs: x,
                                                rhs: y,
                                                gamma,
                                                args: [a, b, c, d, e],
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for w in &mut watchers {
                w.sort_unstable();
                w.dedup();
            }
        }
        Self {
            dist_by_trigger,
            equations,
            inner_trigger,
            watchers,
        }
    }
}

fn watch_key(n: usize, delta: usize, slot: usize, statics: [usize; 2]) -> usize {
    ((delta * 3 + slot) * n + statics[0]) * n + statics[1]
}

struct Shared<'a> {
    layout: &'a CellLayout,
    add: &'a AdditiveTable,
    cfg: &'a SearchConfig,
    constraints: &'a Constraints,
    steps: AtomicU64,
    aborted: AtomicBool,
    max_witnesses: usize,
}

struct Searcher<'s, 'a> {
    shared: &'s Shared<'a>,
    vals: Vec<u8>,
    stats: SearchStats,
    found: Vec<GammaSemiring>,
    witnesses: Vec<PruneWitness>,
    /// When set, stop at this depth and record prefixes instead.
    split_depth: Option<usize>,
    prefixes: Vec<Vec<u8>>,
}

enum Stop {
    Budget,
    Invariant(Violation),
}

impl<'s, 'a> Searcher<'s, 'a> {
    fn new(shared: &'s Shared<'a>) -> Self {
        Self {
            shared,
            vals: vec![0; shared.layout.free_count()],
            stats: SearchStats::default(),
            found: Vec::new(),
            witnesses: Vec::new(),
            split_depth: None,
            prefixes: Vec::new(),
        }
    }

    #[inline]
    fn value(&self, cell: u32) -> usize {
        if cell == ZERO {
            0
        } else {
            self.vals[cell as usize] as usize
        }
    }

    /// Value of an outer-product expression if every cell it reads has an
    /// id `≤ k`.
    fn eval(&self, e: &Expr, k: usize) -> Option<usize> {
        if e.inner as usize > k {
            return None;
        }
        let v = self.vals[e.inner as usize] as usize;
        if v == 0 {
            return Some(0);
        }
        let [s0, s1] = e.statics;
        let (x, y, z) = match e.slot {
            0 => (v, s0, s1),
            1 => (s0, v, s1),
            _ => (s0, s1, v),
        };
        let cell = self.shared.layout.cell(e.delta, x, y, z);
        if cell as usize > k {
            return None;
        }
        Some(self.value(cell))
    }

    fn check_equation(&self, id: u32, k: usize) -> Option<Violation> {
        let eq = &self.shared.constraints.equations[id as usize];
        match (self.eval(&eq.lhs, k), self.eval(&eq.rhs, k)) {
            (Some(l), Some(r)) if l != r => Some(Violation {
                axiom: Axiom::Associative,
                gamma: Some(eq.gamma),
                delta: Some(eq.lhs.delta),
                witness: eq.args.to_vec(),
            }),
            _ => None,
        }
    }

    /// Every law instance completed by assigning free cell `k`.
    fn check(&self, k: usize) -> Option<Violation> {
        let c = self.shared.constraints;
        for inst in &c.dist_by_trigger[k] {
            if self.value(inst.lhs) != self.shared.add.get(self.value(inst.r1), self.value(inst.r2)) {
                return Some(Violation::ternary(inst.axiom, inst.gamma, inst.args.to_vec()));
            }
        }
        if c.equations.is_empty() {
            return None;
        }
        for &id in &c.inner_trigger[k] {
            if let Some(v) = self.check_equation(id, k) {
                return Some(v);
            }
        }
        let layout = self.shared.layout;
        let n = layout.n;
        let (delta, p, q, r) = layout.free[k];
        let keys = if layout.symmetric {
            [
                watch_key(n, delta, 0, [q, r]),
                watch_key(n, delta, 0, [p, r]),
                watch_key(n, delta, 0, [p, q]),
            ]
        } else {
            [
                watch_key(n, delta, 0, [q, r]),
                watch_key(n, delta, 1, [p, r]),
                watch_key(n, delta, 2, [p, q]),
            ]
        };
        for key in keys {
            for &id in &c.watchers[key] {
                if let Some(v) = self.check_equation(id, k) {
                    return Some(v);
                }
            }
        }
        None
    }

    fn descend(&mut self, k: usize) -> Result<(), Stop> {
        if self.split_depth == Some(k) {
            self.prefixes.push(self.vals[..k].to_vec());
            return Ok(());
        }
        if k == self.vals.len() {
            return self.complete();
        }
        let n = self.shared.layout.n as u8;
        for v in 0..n {
            self.step()?;
            self.vals[k] = v;
            if let Some(violation) = self.check(k) {
                self.stats.pruned += 1;
                if self.witnesses.len() < self.shared.max_witnesses {
                    self.witnesses.push(PruneWitness {
                        partial: self.partial(k),
                        violation,
                    });
                }
                continue;
            }
            self.descend(k + 1)?;
        }
        Ok(())
    }

    fn step(&mut self) -> Result<(), Stop> {
        self.stats.extension_steps += 1;
        if let Some(budget) = self.shared.cfg.step_budget {
            if self.shared.aborted.load(Ordering::Relaxed)
                || self.shared.steps.fetch_add(1, Ordering::Relaxed) >= budget
            {
                self.shared.aborted.store(true, Ordering::Relaxed);
                return Err(Stop::Budget);
            }
        }
        Ok(())
    }

    fn complete(&mut self) -> Result<(), Stop> {
        if self.vals.is_empty() {
            // nothing to choose: completing the empty assignment is the one step
            self.stats.extension_steps += 1;
        }
        let s = self.shared.layout.build(self.shared.add, &self.vals, self.shared.cfg.mode);
        let report = verify_structure(&s);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(Stop::Invariant(v));
        }
        self.stats.valid_found += 1;
        self.found.push(s);
        Ok(())
    }

    fn partial(&self, k: usize) -> Vec<Option<u8>> {
        self.shared
            .layout
            .cell_ref
            .iter()
            .map(|&r| match r {
                ZERO => Some(0),
                id if id as usize <= k => Some(self.vals[id as usize]),
                _ => None,
            })
            .collect()
    }
}

/// Every labeled tensor family over `add` satisfying `cfg.mode`.
///
/// Free cells are filled in order; after each assignment the distributivity
/// (and, if configured, associativity) instances that just became fully
/// determined are checked, and the branch is cut on the first failure.
/// Completed families are re-verified in full. Results come out in
/// lexicographic order of the free-cell values, independent of the worker
/// count.
pub fn generate_ternary_tables(add: &AdditiveTable, cfg: &SearchConfig) -> Result<(Vec<GammaSemiring>, SearchStats)> {
    let (found, stats, _) = generate_ternary_tables_traced(add, cfg, 0)?;
    Ok((found, stats))
}

/// [`generate_ternary_tables`], additionally returning up to `max_witnesses`
/// pruned partial assignments with the law instance each one violates.
pub fn generate_ternary_tables_traced(
    add: &AdditiveTable,
    cfg: &SearchConfig,
    max_witnesses: usize,
) -> Result<(Vec<GammaSemiring>, SearchStats, Vec<PruneWitness>)> {
    cfg.validate()?;
    if add.order() != cfg.n {
        return Err(Error::Contract(format!(
            "additive table has order {}, search configured for {}",
            add.order(),
            cfg.n
        )));
    }
    if let Some(v) = validate_additive(add).violations.into_iter().next() {
        return Err(Error::Contract(format!("additive table is not a commutative monoid: {v}")));
    }
    let started = Instant::now();
    let layout = CellLayout::new(cfg.n, cfg.g, cfg.mode.symmetric);
    let constraints = Constraints::build(&layout, add, cfg.mode.associative);
    let shared = Shared {
        layout: &layout,
        add,
        cfg,
        constraints: &constraints,
        steps: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        max_witnesses,
    };

    // Top-level work items: every surviving assignment of the first few cells.
    let depth = split_depth(cfg.n, layout.free_count());
    let mut root = Searcher::new(&shared);
    root.split_depth = Some(depth);
    let root_result = root.descend(0);
    let mut stats = root.stats.clone();
    let mut witnesses = std::mem::take(&mut root.witnesses);
    let prefixes = std::mem::take(&mut root.prefixes);

    let run = |prefix: &Vec<u8>| {
        let mut s = Searcher::new(&shared);
        s.vals[..prefix.len()].copy_from_slice(prefix);
        let r = s.descend(prefix.len());
        (r, s.stats, s.found, s.witnesses)
    };
    let outcomes: Vec<_> = if root_result.is_ok() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count)
            .build()
            .map_err(|e| Error::Contract(format!("cannot start worker pool: {e}")))?;
        pool.install(|| prefixes.par_iter().map(run).collect())
    } else {
        Vec::new()
    };

    let mut found = Vec::new();
    let mut stop = root_result.err();
    for (r, s, f, w) in outcomes {
        stats.absorb(&s);
        found.extend(f);
        witnesses.extend(w);
        if stop.is_none() {
            stop = r.err();
        }
    }
    witnesses.truncate(max_witnesses);
    stats.wall_time_s = started.elapsed().as_secs_f64();
    match stop {
        None => Ok((found, stats, witnesses)),
        Some(Stop::Budget) => Err(Error::BudgetExhausted {
            budget: cfg.step_budget.unwrap_or(0),
            stats,
        }),
        Some(Stop::Invariant(v)) => Err(Error::Invariant {
            message: format!("search completed a family that fails the full check: {v}"),
            witness: Some(v),
        }),
    }
}

/// Smallest prefix depth giving at least 64 work items, capped by the number
/// of free cells. Depends only on the problem, never on the worker count.
fn split_depth(n: usize, free: usize) -> usize {
    let mut depth = 0;
    let mut items = 1usize;
    while depth < free && items < 64 {
        items = items.saturating_mul(n);
        depth += 1;
    }
    depth
}
