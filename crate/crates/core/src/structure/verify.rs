use std::ops::ControlFlow;

use super::{AdditiveTable, Axiom, GammaSemiring, ValidityReport, Violation};

/// Checks the commutative-monoid laws with identity 0, reporting the
/// lexicographically smallest witness for each violated law.
pub fn validate_additive(table: &AdditiveTable) -> ValidityReport {
    let n = table.order();
    let mut report = ValidityReport::default();
    if let Some(pos) = table.as_slice().iter().position(|&v| v as usize >= n) {
        report
            .violations
            .push(Violation::additive(Axiom::Closure, vec![pos / n, pos % n]));
        return report;
    }
    if let Some(a) = (0..n).find(|&a| table.get(0, a) != a || table.get(a, 0) != a) {
        report.violations.push(Violation::additive(Axiom::Identity, vec![a]));
    }
    'comm: for a in 0..n {
        for b in a + 1..n {
            if table.get(a, b) != table.get(b, a) {
                report
                    .violations
                    .push(Violation::additive(Axiom::Commutativity, vec![a, b]));
                break 'comm;
            }
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table.get(table.get(a, b), c) != table.get(a, table.get(b, c)) {
                    report
                        .violations
                        .push(Violation::additive(Axiom::AdditiveAssociativity, vec![a, b, c]));
                    break 'assoc;
                }
            }
        }
    }
    report
}

/// Full axiom check of a structure; every violated instance is listed.
///
/// Closure failures stop the check early since later laws would index out
/// of range.
pub fn verify_structure(s: &GammaSemiring) -> ValidityReport {
    let mut report = validate_additive(s.additive());
    if report.has(Axiom::Closure) {
        return report;
    }
    let n = s.order();
    for (gamma, t) in s.tensors().iter().enumerate() {
        if let Some(pos) = t.as_slice().iter().position(|&v| v as usize >= n) {
            let (ab, c) = (pos / n, pos % n);
            report.violations.push(Violation::ternary(
                Axiom::Closure,
                gamma,
                vec![ab / n, ab % n, c],
            ));
        }
    }
    if report.has(Axiom::Closure) {
        return report;
    }
    let _ = ternary_laws(s, |v| {
        report.violations.push(v);
        ControlFlow::<()>::Continue(())
    });
    report
}

/// Short-circuiting variant: first violation of the full axiom set, if any.
pub(crate) fn check_structure_fast(s: &GammaSemiring) -> Option<Violation> {
    let add = validate_additive(s.additive());
    if let Some(v) = add.violations.into_iter().next() {
        return Some(v);
    }
    let n = s.order();
    for (gamma, t) in s.tensors().iter().enumerate() {
        if let Some(pos) = t.as_slice().iter().position(|&v| v as usize >= n) {
            return Some(Violation::ternary(
                Axiom::Closure,
                gamma,
                vec![pos / (n * n), (pos / n) % n, pos % n],
            ));
        }
    }
    match ternary_laws(s, ControlFlow::Break) {
        ControlFlow::Break(v) => Some(v),
        ControlFlow::Continue(()) => None,
    }
}

/// Visits every violated ternary-law instance in a fixed order.
fn ternary_laws<B>(
    s: &GammaSemiring,
    mut visit: impl FnMut(Violation) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = s.order();
    let g = s.gamma_count();
    for gamma in 0..g {
        let m = |a, b, c| s.mul(gamma, a, b, c);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if (a == 0 || b == 0 || c == 0) && m(a, b, c) != 0 {
                        visit(Violation::ternary(Axiom::Absorbing, gamma, vec![a, b, c]))?;
                    }
                }
            }
        }
    }
    for gamma in 0..g {
        let m = |a, b, c| s.mul(gamma, a, b, c);
        for a in 0..n {
            for b in 0..n {
                let ab = s.add(a, b);
                for c in 0..n {
                    for d in 0..n {
                        if m(ab, c, d) != s.add(m(a, c, d), m(b, c, d)) {
                            visit(Violation::ternary(Axiom::DistributiveLeft, gamma, vec![a, b, c, d]))?;
                        }
                        if m(c, ab, d) != s.add(m(c, a, d), m(c, b, d)) {
                            visit(Violation::ternary(Axiom::DistributiveMiddle, gamma, vec![c, a, b, d]))?;
                        }
                        if m(c, d, ab) != s.add(m(c, d, a), m(c, d, b)) {
                            visit(Violation::ternary(Axiom::DistributiveRight, gamma, vec![c, d, a, b]))?;
                        }
                    }
                }
            }
        }
    }
    if s.mode().symmetric {
        for gamma in 0..g {
            let m = |a, b, c| s.mul(gamma, a, b, c);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let v = m(a, b, c);
                        if v != m(b, a, c) || v != m(a, c, b) {
                            visit(Violation::ternary(Axiom::Symmetric, gamma, vec![a, b, c]))?;
                        }
                    }
                }
            }
        }
    }
    if s.mode().associative {
        for gamma in 0..g {
            for delta in 0..g {
                for a in 1..n {
                    for b in 1..n {
                        for c in 1..n {
                            for d in 1..n {
                                for e in 1..n {
                                    let left = s.mul(delta, s.mul(gamma, a, b, c), d, e);
                                    let mid = s.mul(delta, a, s.mul(gamma, b, c, d), e);
                                    let right = s.mul(delta, a, b, s.mul(gamma, c, d, e));
                                    if left != mid || mid != right {
                                        visit(Violation {
                                            axiom: Axiom::Associative,
                                            gamma: Some(gamma),
                                            delta: Some(delta),
                                            witness: vec![a, b, c, d, e],
                                        })?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ControlFlow::Continue(())
}
