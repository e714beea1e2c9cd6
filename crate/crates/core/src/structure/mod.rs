//! Data model for finite ternary Γ-semirings.
//!
//! Elements are the indices `0..n`, with `0` always the additive identity.
//! A structure is an additive Cayley table plus one ternary tensor per
//! parameter γ. Tables are immutable once built; every construction in this
//! module returns a fresh value.

mod construct;
mod hom;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use construct::{direct_product, duplicate_gamma, quotient_by_congruence, subalgebra};
pub use hom::{image_and_first_iso, is_homomorphism, kernel, FirstIsoWitness, HomMap};
pub use verify::{validate_additive, verify_structure};

pub(crate) use verify::check_structure_fast;

/// Index of an element. `0` is the additive identity.
pub type ElementId = u8;

/// Largest supported order; element indices must fit in [`ElementId`].
pub const MAX_ORDER: usize = 255;

/// Commutative monoid table `sum[a][b] = a + b`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveTable {
    n: usize,
    sum: Vec<ElementId>,
}

impl AdditiveTable {
    /// Builds a table from rows. Only the shape is checked here; use
    /// [`validate_additive`] for the monoid laws.
    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut sum = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "additive row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            sum.extend_from_slice(row);
        }
        Ok(Self { n, sum })
    }

    pub fn from_flat(n: usize, sum: Vec<ElementId>) -> Result<Self> {
        check_order(n)?;
        if sum.len() != n * n {
            return Err(Error::Structural(format!(
                "additive table has {} entries, expected {}",
                sum.len(),
                n * n
            )));
        }
        Ok(Self { n, sum })
    }

    /// Table of `f(a, b)` over `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        check_order(n)?;
        let mut sum = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sum.push(to_elem(f(a, b))?);
            }
        }
        Ok(Self { n, sum })
    }

    /// The join semilattice of the chain `0 < 1 < … < n-1`.
    pub fn chain_join(n: usize) -> Self {
        Self::from_fn(n, |a, b| a.max(b)).expect("order checked by caller")
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("order checked by caller")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.n + b] as usize
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.sum
    }

    pub fn rows(&self) -> Vec<Vec<ElementId>> {
        self.sum.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut sum = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                sum[perm[a] * n + perm[b]] = perm[self.get(a, b)] as ElementId;
            }
        }
        Self { n, sum }
    }
}

/// One ternary operation `{a, b, c}_γ` for a fixed γ, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryTensor {
    n: usize,
    cube: Vec<ElementId>,
}

impl TernaryTensor {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            cube: vec![0; n * n * n],
        }
    }

    pub fn from_flat(n: usize, cube: Vec<ElementId>) -> Result<Self> {
        check_order(n)?;
        if cube.len() != n * n * n {
            return Err(Error::Structural(format!(
                "ternary tensor has {} entries, expected {}",
                cube.len(),
                n * n * n
            )));
        }
        Ok(Self { n, cube })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        check_order(n)?;
        let mut cube = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cube.push(to_elem(f(a, b, c))?);
                }
            }
        }
        Ok(Self { n, cube })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        self.cube[(a * self.n + b) * self.n + c] as usize
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.cube
    }

    pub fn is_zero(&self) -> bool {
        self.cube.iter().all(|&v| v == 0)
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut cube = vec![0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let idx = (perm[a] * n + perm[b]) * n + perm[c];
                    cube[idx] = perm[self.get(a, b, c)] as ElementId;
                }
            }
        }
        Self { n, cube }
    }
}

/// Which optional axioms a structure is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxiomConfig {
    pub symmetric: bool,
    pub associative: bool,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        Self {
            symmetric: true,
            associative: false,
        }
    }
}

impl AxiomConfig {
    pub const fn new(symmetric: bool, associative: bool) -> Self {
        Self {
            symmetric,
            associative,
        }
    }

    /// Stable mode name used in cache keys and report headers.
    pub fn name(&self) -> &'static str {
        match (self.symmetric, self.associative) {
            (true, false) => "symmetric",
            (true, true) => "symmetric+associative",
            (false, false) => "plain",
            (false, true) => "associative",
        }
    }
}

impl fmt::Display for AxiomConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite ternary Γ-semiring: `(T, +)` together with `g` ternary products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaSemiring {
    add: AdditiveTable,
    tensors: Vec<TernaryTensor>,
    mode: AxiomConfig,
}

impl GammaSemiring {
    /// Assembles a structure, checking shapes only. Axioms are checked by
    /// [`verify_structure`].
    pub fn new(add: AdditiveTable, tensors: Vec<TernaryTensor>, mode: AxiomConfig) -> Result<Self> {
        if tensors.is_empty() {
            return Err(Error::Structural("at least one ternary tensor is required".into()));
        }
        if let Some(t) = tensors.iter().find(|t| t.order() != add.order()) {
            return Err(Error::Structural(format!(
                "tensor of order {} does not match additive order {}",
                t.order(),
                add.order()
            )));
        }
        Ok(Self { add, tensors, mode })
    }

    /// `{a,b,c} = 0` for every γ.
    pub fn zero_multiplication(add: AdditiveTable, g: usize, mode: AxiomConfig) -> Result<Self> {
        let n = add.order();
        Self::new(add, vec![TernaryTensor::zero(n); g], mode)
    }

    /// The one-element structure with `g` parameters.
    pub fn trivial(g: usize, mode: AxiomConfig) -> Self {
        Self::zero_multiplication(AdditiveTable::chain_join(1), g, mode)
            .expect("g >= 1 is required")
    }

    /// The two-element Boolean structure: join for `+`, meet for the product.
    pub fn boolean(mode: AxiomConfig) -> Self {
        let add = AdditiveTable::chain_join(2);
        let cube = TernaryTensor::from_fn(2, |a, b, c| a.min(b).min(c)).expect("order 2");
        Self::new(add, vec![cube], mode).expect("shapes agree")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    #[inline]
    pub fn gamma_count(&self) -> usize {
        self.tensors.len()
    }

    pub fn mode(&self) -> AxiomConfig {
        self.mode
    }

    pub fn with_mode(&self, mode: AxiomConfig) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    pub fn additive(&self) -> &AdditiveTable {
        &self.add
    }

    pub fn tensors(&self) -> &[TernaryTensor] {
        &self.tensors
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, gamma: usize, a: usize, b: usize, c: usize) -> usize {
        self.tensors[gamma].get(a, b, c)
    }

    /// Applies the relabeling `perm` (old index → new index). `perm` must be
    /// a permutation of `0..n` fixing 0.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.order());
        debug_assert_eq!(perm.first(), Some(&0));
        Self {
            add: self.add.relabel(perm),
            tensors: self.tensors.iter().map(|t| t.relabel(perm)).collect(),
            mode: self.mode,
        }
    }

    /// Same tables with the parameter order permuted: new γ `i` is old γ `perm[i]`.
    pub fn permute_gammas(&self, perm: &[usize]) -> Self {
        Self {
            add: self.add.clone(),
            tensors: perm.iter().map(|&i| self.tensors[i].clone()).collect(),
            mode: self.mode,
        }
    }
}

/// Names of the checked laws, as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Closure,
    Commutativity,
    AdditiveAssociativity,
    Identity,
    Absorbing,
    DistributiveLeft,
    DistributiveMiddle,
    DistributiveRight,
    Symmetric,
    Associative,
    PreservesAddition,
    PreservesProduct,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Closure => "closure",
            Axiom::Commutativity => "commutativity",
            Axiom::AdditiveAssociativity => "additive-associativity",
            Axiom::Identity => "identity",
            Axiom::Absorbing => "absorbing",
            Axiom::DistributiveLeft => "distributive-left",
            Axiom::DistributiveMiddle => "distributive-middle",
            Axiom::DistributiveRight => "distributive-right",
            Axiom::Symmetric => "symmetric",
            Axiom::Associative => "associative",
            Axiom::PreservesAddition => "preserves-addition",
            Axiom::PreservesProduct => "preserves-product",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed law instance. `witness` lists the element arguments
/// `(a, b, c[, d[, e]])`; `gamma` is set for ternary laws, and `delta` for the
/// coupled associativity law.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub gamma: Option<usize>,
    pub delta: Option<usize>,
    pub witness: Vec<usize>,
}

impl Violation {
    pub(crate) fn additive(axiom: Axiom, witness: Vec<usize>) -> Self {
        Self {
            axiom,
            gamma: None,
            delta: None,
            witness,
        }
    }

    pub(crate) fn ternary(axiom: Axiom, gamma: usize, witness: Vec<usize>) -> Self {
        Self {
            axiom,
            gamma: Some(gamma),
            delta: None,
            witness,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        let mut parts = Vec::new();
        if let Some(g) = self.gamma {
            parts.push(format!("γ={g}"));
        }
        if let Some(d) = self.delta {
            parts.push(format!("δ={d}"));
        }
        for (name, v) in ["a", "b", "c", "d", "e"].iter().zip(&self.witness) {
            parts.push(format!("{name}={v}"));
        }
        write!(f, " at ({})", parts.join(", "))
    }
}

/// Outcome of an axiom check: valid iff no violations were found.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Structural(format!(
            "order must be in 1..={MAX_ORDER}, got {n}"
        )));
    }
    Ok(())
}

fn to_elem(v: usize) -> Result<ElementId> {
    ElementId::try_from(v).map_err(|_| Error::Structural(format!("element {v} out of range")))
}

/// Iterates over all permutations of `0..n` that fix 0, in lexicographic order.
pub fn zero_fixing_permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut p = current.clone();
        // next lexicographic permutation of p[1..]
        let tail = &mut p[1.min(n)..];
        if let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1]) {
            let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).unwrap();
            tail.swap(i, j);
            tail[i + 1..].reverse();
            next = Some(p);
        }
        Some(current)
    })
}

/// Inverse of a permutation.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_fix_zero_and_count_factorial() {
        let perms: Vec<_> = zero_fixing_permutations(4).collect();
        assert_eq!(perms.len(), 6);
        assert!(perms.iter().all(|p| p[0] == 0));
        assert_eq!(perms[0], vec![0, 1, 2, 3]);
        assert_eq!(perms[5], vec![0, 3, 2, 1]);
        assert_eq!(zero_fixing_permutations(1).count(), 1);
        assert_eq!(zero_fixing_permutations(2).count(), 1);
    }

    #[test]
    fn shape_errors_are_structural() {
        assert!(matches!(
            AdditiveTable::from_rows(&[vec![0, 1], vec![1]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(AdditiveTable::from_rows(&[]), Err(Error::Structural(_))));
        let add = AdditiveTable::chain_join(2);
        assert!(GammaSemiring::new(add.clone(), vec![], AxiomConfig::default()).is_err());
        assert!(GammaSemiring::new(add, vec![TernaryTensor::zero(3)], AxiomConfig::default()).is_err());
    }

    #[test]
    fn violation_display_names_axiom_and_witness() {
        let v = Violation::ternary(Axiom::Absorbing, 0, vec![1, 1]);
        assert_eq!(v.to_string(), "absorbing at (γ=0, a=1, b=1)");
    }
}
