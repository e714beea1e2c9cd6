//! Ideals, congruences, prime spectrum, structural entropy and the invariant
//! signature `(|T|, |Γ|, |Id|, |Con|, |Aut|, H)`.

mod congruences;
mod ideals;
mod spectrum;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::{automorphism_group, orbit_partition, OrbitAction};
use crate::error::Result;
use crate::structure::GammaSemiring;

pub use congruences::{bourne_congruence, congruences, set_partitions, Congruence, MAX_CONGRUENCE_ORDER};
pub use ideals::{generated_ideal, ideals, is_ideal, IdealSet, MAX_IDEAL_SCAN_ORDER};
pub use spectrum::{
    induced_map, is_prime, prime_ideals, radical, spectrum, spectrum_checks, InducedMap, Spectrum, SpectrumChecks,
};

/// Shannon entropy (nats) of the orbit-size distribution `p_i = |O_i| / n`.
pub fn entropy(s: &GammaSemiring, action: OrbitAction) -> f64 {
    orbit_entropy(&orbit_partition(s, action))
}

/// Entropy of a partition given as a class label per element.
///
/// Written as `ln n − (1/n) Σ |O| ln |O|` so that the all-singleton case is
/// exactly `ln n`; the single-orbit case returns exactly 0.
pub fn orbit_entropy(orbit_of: &[usize]) -> f64 {
    let n = orbit_of.len();
    let mut sizes = vec![0usize; n];
    for &o in orbit_of {
        sizes[o] += 1;
    }
    sizes.retain(|&k| k > 0);
    if sizes.len() <= 1 {
        return 0.0;
    }
    let nf = n as f64;
    let weighted: f64 = sizes.iter().map(|&k| k as f64 * (k as f64).ln()).sum();
    (nf.ln() - weighted / nf).clamp(0.0, nf.ln())
}

/// The invariant signature of a structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub n: usize,
    pub g: usize,
    pub num_ideals: usize,
    pub num_congruences: usize,
    pub aut_order: u64,
    /// Natural-log units.
    pub entropy: f64,
}

impl InvariantSignature {
    /// The six coordinates as reals, in signature order.
    pub fn to_vector(&self) -> [f64; 6] {
        [
            self.n as f64,
            self.g as f64,
            self.num_ideals as f64,
            self.num_congruences as f64,
            self.aut_order as f64,
            self.entropy,
        ]
    }
}

/// Signature with entropy taken over the full automorphism group.
pub fn signature(s: &GammaSemiring) -> Result<InvariantSignature> {
    signature_with(s, OrbitAction::FullAutomorphisms)
}

pub fn signature_with(s: &GammaSemiring, action: OrbitAction) -> Result<InvariantSignature> {
    Ok(InvariantSignature {
        n: s.order(),
        g: s.gamma_count(),
        num_ideals: ideals(s)?.len(),
        num_congruences: congruences(s)?.len(),
        aut_order: automorphism_group(s).order(),
        entropy: entropy(s, action),
    })
}

/// Only the identity and total partitions are congruences.
pub fn is_simple(s: &GammaSemiring) -> Result<bool> {
    Ok(s.order() == 1 || congruences(s)?.len() == 2)
}

/// Heuristic family label, assigned in priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TypeLabel {
    Boolean,
    Tropical,
    Modular,
    Truncated,
    Hybrid,
}

impl TypeLabel {
    pub fn name(&self) -> &'static str {
        match self {
            TypeLabel::Boolean => "BOOLEAN",
            TypeLabel::Tropical => "TROPICAL",
            TypeLabel::Modular => "MODULAR",
            TypeLabel::Truncated => "TRUNCATED",
            TypeLabel::Hybrid => "HYBRID",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            TypeLabel::Boolean,
            TypeLabel::Tropical,
            TypeLabel::Modular,
            TypeLabel::Truncated,
            TypeLabel::Hybrid,
        ]
        .into_iter()
        .find(|t| t.name() == s)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_type(s: &GammaSemiring) -> TypeLabel {
    let n = s.order();
    let idempotent = (0..n).all(|a| s.add(a, a) == a);
    let cube_idempotent = (0..s.gamma_count()).all(|gamma| (0..n).all(|a| s.mul(gamma, a, a, a) == a));
    if idempotent && cube_idempotent {
        return TypeLabel::Boolean;
    }
    let selective = (0..n).all(|a| (0..n).all(|b| s.add(a, b) == a || s.add(a, b) == b));
    if selective {
        return TypeLabel::Tropical;
    }
    let group = (0..n).all(|a| (0..n).any(|b| s.add(a, b) == 0));
    if group {
        return TypeLabel::Modular;
    }
    let truncated = (1..n).any(|top| (0..n).all(|a| s.add(a, top) == top));
    if truncated {
        return TypeLabel::Truncated;
    }
    TypeLabel::Hybrid
}
