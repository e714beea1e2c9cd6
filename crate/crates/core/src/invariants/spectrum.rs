use serde::{Deserialize, Serialize};

use super::{generated_ideal, ideals, IdealSet};
use crate::error::{Error, Result};
use crate::structure::{is_homomorphism, GammaSemiring, HomMap};

/// Proper ideal `P` such that `{a,b,c}_γ ∈ P` forces `a`, `b` or `c` into `P`.
pub fn is_prime(s: &GammaSemiring, p: IdealSet) -> bool {
    if p.is_full() {
        return false;
    }
    let n = s.order();
    for gamma in 0..s.gamma_count() {
        for a in (0..n).filter(|&a| !p.contains(a)) {
            for b in (0..n).filter(|&b| !p.contains(b)) {
                for c in (0..n).filter(|&c| !p.contains(c)) {
                    if p.contains(s.mul(gamma, a, b, c)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn prime_ideals(s: &GammaSemiring) -> Result<Vec<IdealSet>> {
    Ok(ideals(s)?.into_iter().filter(|&p| is_prime(s, p)).collect())
}

/// Intersection of all prime ideals; the whole structure when there are none.
pub fn radical(s: &GammaSemiring) -> Result<IdealSet> {
    Ok(radical_of(s.order(), &prime_ideals(s)?))
}

fn radical_of(n: usize, primes: &[IdealSet]) -> IdealSet {
    primes
        .iter()
        .fold(IdealSet::full(n), |acc, p| acc.intersect(p))
}

/// Prime spectrum with its closed-set family `{V(I) : I ideal}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub primes: Vec<IdealSet>,
    /// Distinct closed sets, each a sorted list of indices into `primes`;
    /// the family is sorted.
    pub closed_sets: Vec<Vec<usize>>,
    /// `(I, index of V(I) in closed_sets)` for every ideal `I`.
    pub ideal_closures: Vec<(IdealSet, usize)>,
}

impl Spectrum {
    /// `V(I) = {P prime : I ⊆ P}`.
    pub fn vanishing(&self, ideal: IdealSet) -> Vec<usize> {
        (0..self.primes.len())
            .filter(|&k| ideal.is_subset(&self.primes[k]))
            .collect()
    }
}

pub fn spectrum(s: &GammaSemiring) -> Result<Spectrum> {
    let all = ideals(s)?;
    let primes: Vec<IdealSet> = all.iter().copied().filter(|&p| is_prime(s, p)).collect();
    let mut spec = Spectrum {
        primes,
        closed_sets: Vec::new(),
        ideal_closures: Vec::new(),
    };
    let vs: Vec<Vec<usize>> = all.iter().map(|&i| spec.vanishing(i)).collect();
    let mut family = vs.clone();
    family.sort();
    family.dedup();
    spec.ideal_closures = all
        .iter()
        .zip(&vs)
        .map(|(&i, v)| (i, family.binary_search(v).expect("present")))
        .collect();
    spec.closed_sets = family;
    Ok(spec)
}

/// Closure properties of the closed-set family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumChecks {
    /// `V(T) = ∅` and `V({0})` is every prime.
    pub extremes_hold: bool,
    /// `V(I) ∩ V(J) = V(⟨I ∪ J⟩)` for all ideal pairs.
    pub intersection_law_holds: bool,
    /// Whether `V(I) ∪ V(J)` is again in the family, for all pairs.
    pub union_closed: bool,
}

pub fn spectrum_checks(s: &GammaSemiring, spec: &Spectrum) -> SpectrumChecks {
    let n = s.order();
    let all_primes: Vec<usize> = (0..spec.primes.len()).collect();
    let extremes_hold =
        spec.vanishing(IdealSet::full(n)).is_empty() && spec.vanishing(IdealSet::zero(n)) == all_primes;
    let mut intersection_law_holds = true;
    let mut union_closed = true;
    for (i, vi) in &spec.ideal_closures {
        for (j, vj) in &spec.ideal_closures {
            let (a, b) = (&spec.closed_sets[*vi], &spec.closed_sets[*vj]);
            let meet: Vec<usize> = a.iter().copied().filter(|k| b.contains(k)).collect();
            let joined = generated_ideal(s, IdealSet::from_mask(n, i.mask() | j.mask()));
            if meet != spec.vanishing(joined) {
                intersection_law_holds = false;
            }
            let mut union: Vec<usize> = a.iter().chain(b).copied().collect();
            union.sort_unstable();
            union.dedup();
            if spec.closed_sets.binary_search(&union).is_err() {
                union_closed = false;
            }
        }
    }
    SpectrumChecks {
        extremes_hold,
        intersection_law_holds,
        union_closed,
    }
}

/// Pullback of primes along a homomorphism `f: S → T`.
///
/// `images[k]` is the index in the source spectrum of `f⁻¹(Q_k)`, or `None`
/// when the preimage is all of `S` (which happens when `f(S) ⊆ Q_k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMap {
    pub images: Vec<Option<usize>>,
}

impl InducedMap {
    /// `(self ∘ other)(k) = self(other(k))`: apply `other` first.
    pub fn after(&self, other: &InducedMap) -> InducedMap {
        InducedMap {
            images: other
                .images
                .iter()
                .map(|k| k.and_then(|k| self.images[k]))
                .collect(),
        }
    }
}

/// Spectrum map induced by a homomorphism, checking that every proper
/// preimage of a prime is prime.
pub fn induced_map(h: &HomMap<'_>, source: &Spectrum, target: &Spectrum) -> Result<InducedMap> {
    if let Some(v) = is_homomorphism(h).violations.into_iter().next() {
        return Err(Error::Contract(format!("map is not a homomorphism: {v}")));
    }
    let n = h.source().order();
    let images = target
        .primes
        .iter()
        .map(|q| {
            let pre = IdealSet::from_members(n, (0..n).filter(|&a| q.contains(h.apply(a))));
            if pre.is_full() {
                return Ok(None);
            }
            match source.primes.binary_search(&pre) {
                Ok(k) => Ok(Some(k)),
                Err(_) => Err(Error::Invariant {
                    message: format!("preimage {pre} of prime {q} is not prime"),
                    witness: None,
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InducedMap { images })
}
