use super::{AdditiveTable, GammaSemiring, TernaryTensor};
use crate::error::{Error, Result};
use crate::invariants::Congruence;

/// Componentwise product. The pair `(x, y)` gets index `x * n2 + y`, so
/// `(0, 0)` is index 0.
pub fn direct_product(s1: &GammaSemiring, s2: &GammaSemiring) -> Result<GammaSemiring> {
    if s1.gamma_count() != s2.gamma_count() {
        return Err(Error::Structural(format!(
            "parameter counts differ: {} vs {}",
            s1.gamma_count(),
            s2.gamma_count()
        )));
    }
    if s1.mode() != s2.mode() {
        return Err(Error::Structural(format!(
            "axiom modes differ: {} vs {}",
            s1.mode(),
            s2.mode()
        )));
    }
    let (n1, n2) = (s1.order(), s2.order());
    let split = |p: usize| (p / n2, p % n2);
    let add = AdditiveTable::from_fn(n1 * n2, |p, q| {
        let ((x1, y1), (x2, y2)) = (split(p), split(q));
        s1.add(x1, x2) * n2 + s2.add(y1, y2)
    })?;
    let tensors = (0..s1.gamma_count())
        .map(|gamma| {
            TernaryTensor::from_fn(n1 * n2, |p, q, r| {
                let ((x1, y1), (x2, y2), (x3, y3)) = (split(p), split(q), split(r));
                s1.mul(gamma, x1, x2, x3) * n2 + s2.mul(gamma, y1, y2, y3)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GammaSemiring::new(add, tensors, s1.mode())
}

/// Replaces Γ by Γ × {1, 2}: each tensor appears twice, adjacent.
pub fn duplicate_gamma(s: &GammaSemiring) -> GammaSemiring {
    let tensors = s
        .tensors()
        .iter()
        .flat_map(|t| [t.clone(), t.clone()])
        .collect();
    GammaSemiring::new(s.additive().clone(), tensors, s.mode()).expect("shapes unchanged")
}

/// Quotient by a compatible partition. Class indices become element indices.
pub fn quotient_by_congruence(s: &GammaSemiring, theta: &Congruence) -> Result<GammaSemiring> {
    if theta.order() != s.order() {
        return Err(Error::Contract(format!(
            "partition of {} elements applied to a structure of order {}",
            theta.order(),
            s.order()
        )));
    }
    if !theta.is_compatible(s) {
        return Err(Error::Contract("partition is not a congruence of the structure".into()));
    }
    let reps = theta.representatives();
    let k = reps.len();
    let cls = |x: usize| theta.class_of(x);
    let add = AdditiveTable::from_fn(k, |p, q| cls(s.add(reps[p], reps[q])))?;
    let tensors = (0..s.gamma_count())
        .map(|gamma| TernaryTensor::from_fn(k, |p, q, r| cls(s.mul(gamma, reps[p], reps[q], reps[r]))))
        .collect::<Result<Vec<_>>>()?;
    GammaSemiring::new(add, tensors, s.mode())
}

/// Restriction to a subset closed under all operations. `members` must contain
/// 0; elements are re-indexed in increasing order, so 0 stays at index 0.
pub fn subalgebra(s: &GammaSemiring, members: &[usize]) -> Result<GammaSemiring> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() != Some(&0) {
        return Err(Error::Contract("a subalgebra must contain 0".into()));
    }
    let mut index = vec![usize::MAX; s.order()];
    for (i, &m) in sorted.iter().enumerate() {
        index[m] = i;
    }
    let look = |v: usize| -> Result<usize> {
        match index[v] {
            usize::MAX => Err(Error::Contract(format!("subset not closed: produces element {v}"))),
            i => Ok(i),
        }
    };
    let k = sorted.len();
    let mut sum = Vec::with_capacity(k * k);
    for &a in &sorted {
        for &b in &sorted {
            sum.push(look(s.add(a, b))? as u8);
        }
    }
    let mut tensors = Vec::with_capacity(s.gamma_count());
    for gamma in 0..s.gamma_count() {
        let mut cube = Vec::with_capacity(k * k * k);
        for &a in &sorted {
            for &b in &sorted {
                for &c in &sorted {
                    cube.push(look(s.mul(gamma, a, b, c))? as u8);
                }
            }
        }
        tensors.push(TernaryTensor::from_flat(k, cube)?);
    }
    GammaSemiring::new(AdditiveTable::from_flat(k, sum)?, tensors, s.mode())
}
