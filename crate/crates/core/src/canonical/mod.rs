//! Canonical labeling, isomorphism testing and automorphism groups.
//!
//! Isomorphisms fix 0 and never permute the parameter index γ. The
//! canonical form is the lexicographically smallest serialization over all
//! relabelings that list elements in order of an isomorphism-invariant key;
//! [`canonical_form_exhaustive`] minimizes over every 0-fixing permutation
//! instead and induces the same equivalence relation.

mod automorphism;
mod refine;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::structure::{invert_permutation, zero_fixing_permutations, GammaSemiring};

pub use automorphism::{
    additive_automorphisms, automorphism_group, automorphism_group_backtrack, automorphism_group_filtration,
    is_automorphism, orbit_partition, OrbitAction, PermGroup,
};
pub use refine::element_cells;

/// Four-byte version tag at the start of every canonical serialization.
pub const FORM_HEADER: &[u8; 4] = b"TGS1";

/// Serialization of a structure under its canonical relabeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// First 16 bytes of the SHA-256 digest, hex encoded.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(&self.bytes);
        hex::encode(&digest[..16])
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.hash())
    }
}

/// Header, `n`, `g`, the additive table row-major, then each tensor row-major
/// in γ order. One byte per entry.
pub fn serialize(s: &GammaSemiring) -> Vec<u8> {
    let n = s.order();
    let mut out = Vec::with_capacity(6 + n * n + s.gamma_count() * n * n * n);
    out.extend_from_slice(FORM_HEADER);
    out.push(n as u8);
    out.push(s.gamma_count() as u8);
    out.extend_from_slice(s.additive().as_slice());
    for t in s.tensors() {
        out.extend_from_slice(t.as_slice());
    }
    out
}

/// Writes the serialization of `s` relabeled by `perm` into `buf`, without
/// building the relabeled structure.
fn serialize_relabeled(s: &GammaSemiring, perm: &[usize], inv: &[usize], buf: &mut Vec<u8>) {
    let n = s.order();
    buf.clear();
    buf.extend_from_slice(FORM_HEADER);
    buf.push(n as u8);
    buf.push(s.gamma_count() as u8);
    for &a in inv {
        for &b in inv {
            buf.push(perm[s.add(a, b)] as u8);
        }
    }
    for gamma in 0..s.gamma_count() {
        for &a in inv {
            for &b in inv {
                for &c in inv {
                    buf.push(perm[s.mul(gamma, a, b, c)] as u8);
                }
            }
        }
    }
}

fn minimize(s: &GammaSemiring, perms: impl Iterator<Item = Vec<usize>>) -> (CanonicalForm, Vec<usize>) {
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut buf = Vec::new();
    for perm in perms {
        let inv = invert_permutation(&perm);
        serialize_relabeled(s, &perm, &inv, &mut buf);
        if best.as_ref().is_none_or(|(b, _)| buf < *b) {
            best = Some((buf.clone(), perm));
        }
    }
    let (bytes, perm) = best.expect("at least the identity permutation");
    (CanonicalForm { bytes }, perm)
}

/// Canonical form together with a relabeling that produces it.
pub fn canonical_labeling(s: &GammaSemiring) -> (CanonicalForm, Vec<usize>) {
    let cells = element_cells(s);
    minimize(s, refine::cell_respecting_permutations(&cells))
}

pub fn canonical_form(s: &GammaSemiring) -> CanonicalForm {
    canonical_labeling(s).0
}

/// Minimum over all `(n-1)!` relabelings. Slow reference path.
pub fn canonical_form_exhaustive(s: &GammaSemiring) -> CanonicalForm {
    minimize(s, zero_fixing_permutations(s.order())).0
}

/// The structure relabeled into canonical position.
pub fn canonical_representative(s: &GammaSemiring) -> GammaSemiring {
    let (_, perm) = canonical_labeling(s);
    s.relabel(&perm)
}

/// Canonical form when isomorphisms may also permute Γ.
pub fn canonical_form_gamma_permuting(s: &GammaSemiring) -> CanonicalForm {
    gamma_permutations(s.gamma_count())
        .map(|p| canonical_form(&s.permute_gammas(&p)))
        .min()
        .expect("at least one ordering")
}

fn gamma_permutations(g: usize) -> impl Iterator<Item = Vec<usize>> {
    // shift the 0-fixing generator by one slot
    zero_fixing_permutations(g + 1).map(|p| p[1..].iter().map(|x| x - 1).collect())
}

/// A 0-fixing bijection `φ` with `s1.relabel(φ) == s2`, if one exists.
pub fn isomorphism_witness(s1: &GammaSemiring, s2: &GammaSemiring) -> Result<Option<Vec<usize>>> {
    if s1.order() != s2.order() || s1.gamma_count() != s2.gamma_count() {
        return Err(Error::Structural(format!(
            "cannot compare structures of shape (n={}, g={}) and (n={}, g={})",
            s1.order(),
            s1.gamma_count(),
            s2.order(),
            s2.gamma_count()
        )));
    }
    let (f1, p1) = canonical_labeling(s1);
    let (f2, p2) = canonical_labeling(s2);
    if f1 != f2 {
        return Ok(None);
    }
    let inv2 = invert_permutation(&p2);
    let witness: Vec<usize> = p1.iter().map(|&x| inv2[x]).collect();
    debug_assert!(s1.relabel(&witness).same_tables(s2));
    Ok(Some(witness))
}

impl GammaSemiring {
    /// Equal tables, ignoring the axiom mode.
    pub fn same_tables(&self, other: &GammaSemiring) -> bool {
        self.additive() == other.additive() && self.tensors() == other.tensors()
    }
}
