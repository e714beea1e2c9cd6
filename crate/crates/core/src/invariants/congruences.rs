use serde::{Deserialize, Serialize};

use super::IdealSet;
use crate::error::{Error, Result};
use crate::structure::GammaSemiring;

/// Largest order for which all set partitions are scanned (Bell(8) = 4140).
pub const MAX_CONGRUENCE_ORDER: usize = 8;

/// A partition of `0..n` in restricted-growth form: classes are numbered by
/// first occurrence, so element 0 is always in class 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Congruence {
    class_of: Vec<usize>,
}

impl Congruence {
    /// Normalizes arbitrary class labels.
    pub fn from_classes(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Structural("empty partition".into()));
        }
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let class_of = labels
            .iter()
            .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
                Some(&(_, c)) => c,
                None => {
                    seen.push((l, seen.len()));
                    seen.len() - 1
                }
            })
            .collect();
        Ok(Self { class_of })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Self { class_of: vec![0; n] }
    }

    /// `a ~ b ⟺ map[a] = map[b]`.
    pub fn kernel_of(map: &[usize]) -> Self {
        Self::from_classes(map).expect("map over a nonempty domain")
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Smallest member of each class, indexed by class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.order()
    }

    pub fn is_total(&self) -> bool {
        self.num_classes() == 1
    }

    /// The class containing 0, as an element set.
    pub fn zero_class(&self) -> IdealSet {
        IdealSet::from_members(self.order(), (0..self.order()).filter(|&x| self.class_of[x] == 0))
    }

    /// Compatibility with `+` and every product. Changing one argument at a
    /// time within its class suffices, by transitivity.
    pub fn is_compatible(&self, s: &GammaSemiring) -> bool {
        let n = s.order();
        if self.order() != n {
            return false;
        }
        let reps = self.representatives();
        let same = |x: usize, y: usize| self.class_of[x] == self.class_of[y];
        for a in 0..n {
            let r = reps[self.class_of[a]];
            if r == a {
                continue;
            }
            for b in 0..n {
                if !same(s.add(a, b), s.add(r, b)) {
                    return false;
                }
            }
            for gamma in 0..s.gamma_count() {
                for b in 0..n {
                    for c in 0..n {
                        if !same(s.mul(gamma, a, b, c), s.mul(gamma, r, b, c))
                            || !same(s.mul(gamma, b, a, c), s.mul(gamma, b, r, c))
                            || !same(s.mul(gamma, b, c, a), s.mul(gamma, b, c, r))
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// All set partitions of `0..n` in restricted-growth order.
pub fn set_partitions(n: usize) -> Vec<Congruence> {
    fn rec(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Congruence>) {
        if prefix.len() == n {
            out.push(Congruence {
                class_of: prefix.clone(),
            });
            return;
        }
        for c in 0..=max + 1 {
            prefix.push(c);
            rec(prefix, max.max(c), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(&mut vec![0], 0, n, &mut out);
    }
    out
}

/// Every congruence of `s`, in restricted-growth order.
pub fn congruences(s: &GammaSemiring) -> Result<Vec<Congruence>> {
    let n = s.order();
    if n > MAX_CONGRUENCE_ORDER {
        return Err(Error::CapExceeded(format!(
            "congruence scan limited to order {MAX_CONGRUENCE_ORDER}, got {n}"
        )));
    }
    Ok(set_partitions(n).into_iter().filter(|p| p.is_compatible(s)).collect())
}

/// Bourne congruence of an ideal: `a ~ b ⟺ a + i = b + j` for some `i, j ∈ I`.
pub fn bourne_congruence(s: &GammaSemiring, ideal: IdealSet) -> Congruence {
    let n = s.order();
    let members = ideal.members();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            let related = members
                .iter()
                .any(|&i| members.iter().any(|&j| s.add(a, i) == s.add(b, j)));
            if related {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Congruence::from_classes(&labels).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{direct_product, AdditiveTable, AxiomConfig};

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate().skip(1) {
            assert_eq!(set_partitions(n).len(), b, "Bell({n})");
        }
    }

    #[test]
    fn small_orders_have_only_trivial_congruences() {
        let one = GammaSemiring::trivial(1, AxiomConfig::default());
        assert_eq!(congruences(&one).unwrap().len(), 1);
        let b = GammaSemiring::boolean(AxiomConfig::default());
        assert_eq!(congruences(&b).unwrap().len(), 2);
    }

    #[test]
    fn z3_is_simple_under_addition() {
        let z3 = GammaSemiring::zero_multiplication(AdditiveTable::cyclic(3), 1, AxiomConfig::default()).unwrap();
        let cons = congruences(&z3).unwrap();
        assert_eq!(cons.len(), 2);
        assert!(cons[0].is_total() || cons[0].is_identity());
    }

    #[test]
    fn boolean_square_projection_kernels_are_congruences() {
        let b = GammaSemiring::boolean(AxiomConfig::default());
        let bb = direct_product(&b, &b).unwrap();
        let first = Congruence::kernel_of(&[0, 0, 1, 1]);
        let second = Congruence::kernel_of(&[0, 1, 0, 1]);
        assert!(first.is_compatible(&bb));
        assert!(second.is_compatible(&bb));
        let cons = congruences(&bb).unwrap();
        assert!(cons.contains(&first) && cons.contains(&second));
    }

    #[test]
    fn normalization_puts_zero_in_class_zero() {
        let c = Congruence::from_classes(&[7, 3, 7, 9]).unwrap();
        assert_eq!(c.classes(), &[0, 1, 0, 2]);
        assert_eq!(c.representatives(), vec![0, 1, 3]);
        assert_eq!(c.zero_class().members(), vec![0, 2]);
    }

    #[test]
    fn bourne_of_zero_ideal_is_identity() {
        let s = GammaSemiring::zero_multiplication(AdditiveTable::chain_join(3), 1, AxiomConfig::default()).unwrap();
        assert!(bourne_congruence(&s, IdealSet::zero(3)).is_identity());
        // I = {0,1} in the chain: 1 ~ 0 (0+1 = 1+1) but 2 stays apart
        let c = bourne_congruence(&s, IdealSet::from_members(3, [0, 1]));
        assert_eq!(c.classes(), &[0, 0, 1]);
        assert!(c.is_compatible(&s));
    }
}
