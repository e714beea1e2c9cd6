use super::{subalgebra, Axiom, GammaSemiring, ValidityReport, Violation};
use crate::canonical::isomorphism_witness;
use crate::error::{Error, Result};
use crate::invariants::{bourne_congruence, is_ideal, Congruence, IdealSet};
use crate::structure::quotient_by_congruence;

/// A map between the elements of two structures with the same parameter set.
#[derive(Clone, Debug)]
pub struct HomMap<'a> {
    source: &'a GammaSemiring,
    target: &'a GammaSemiring,
    map: Vec<usize>,
}

impl<'a> HomMap<'a> {
    /// Checks shapes and `map(0) = 0`; preservation laws are checked by
    /// [`is_homomorphism`].
    pub fn new(source: &'a GammaSemiring, target: &'a GammaSemiring, map: Vec<usize>) -> Result<Self> {
        if source.gamma_count() != target.gamma_count() {
            return Err(Error::Structural(format!(
                "parameter counts differ: {} vs {}",
                source.gamma_count(),
                target.gamma_count()
            )));
        }
        if source.mode() != target.mode() {
            return Err(Error::Structural("axiom modes differ".into()));
        }
        if map.len() != source.order() {
            return Err(Error::Structural(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::Structural(format!("map value {v} outside the target")));
        }
        if map[0] != 0 {
            return Err(Error::Structural(format!(
                "map sends the additive identity to {}",
                map[0]
            )));
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(s: &'a GammaSemiring) -> Self {
        Self {
            source: s,
            target: s,
            map: (0..s.order()).collect(),
        }
    }

    pub fn source(&self) -> &'a GammaSemiring {
        self.source
    }

    pub fn target(&self) -> &'a GammaSemiring {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Valid iff `f(a+b) = f(a)+f(b)` and `f({a,b,c}_γ) = {f(a),f(b),f(c)}_γ`
/// for all arguments and every γ.
pub fn is_homomorphism(h: &HomMap<'_>) -> ValidityReport {
    let (s, t, f) = (h.source, h.target, &h.map);
    let n = s.order();
    let mut report = ValidityReport::default();
    for a in 0..n {
        for b in 0..n {
            if f[s.add(a, b)] != t.add(f[a], f[b]) {
                report
                    .violations
                    .push(Violation::additive(Axiom::PreservesAddition, vec![a, b]));
            }
        }
    }
    for gamma in 0..s.gamma_count() {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if f[s.mul(gamma, a, b, c)] != t.mul(gamma, f[a], f[b], f[c]) {
                        report
                            .violations
                            .push(Violation::ternary(Axiom::PreservesProduct, gamma, vec![a, b, c]));
                    }
                }
            }
        }
    }
    report
}

/// `ker f = {a : f(a) = 0}`.
pub fn kernel(h: &HomMap<'_>) -> Result<IdealSet> {
    require_hom(h)?;
    let ker = IdealSet::from_members(h.source.order(), (0..h.source.order()).filter(|&a| h.map[a] == 0));
    if !is_ideal(h.source, ker) {
        return Err(Error::Invariant {
            message: format!("kernel {ker} of a homomorphism is not an ideal"),
            witness: None,
        });
    }
    Ok(ker)
}

/// The image of a homomorphism together with the quotient it is isomorphic to.
#[derive(Clone, Debug)]
pub struct FirstIsoWitness {
    /// Target elements in the image, increasing; index `i` of `image` is `image_elements[i]`.
    pub image_elements: Vec<usize>,
    pub image: GammaSemiring,
    /// Quotient of the source by the kernel congruence `f(a) = f(b)`.
    pub quotient: GammaSemiring,
    /// `iso[class] = image index`.
    pub iso: Vec<usize>,
    /// Whether the quotient by the Bourne congruence of the kernel ideal is
    /// also isomorphic to the image. Fails for maps with `ker f = {0}` that
    /// are not injective.
    pub bourne_quotient_isomorphic: bool,
}

/// Extracts `Im f` and checks it against `source / ker f`.
///
/// The quotient uses the kernel congruence (`a ~ b ⟺ f(a) = f(b)`). The
/// Bourne quotient by the kernel ideal is computed alongside and its
/// agreement reported in [`FirstIsoWitness::bourne_quotient_isomorphic`].
pub fn image_and_first_iso(h: &HomMap<'_>) -> Result<FirstIsoWitness> {
    require_hom(h)?;
    let mut image_elements = h.map.clone();
    image_elements.sort_unstable();
    image_elements.dedup();
    let image = subalgebra(h.target, &image_elements)?;

    let theta = Congruence::kernel_of(&h.map);
    let quotient = quotient_by_congruence(h.source, &theta)?;
    let iso: Vec<usize> = theta
        .representatives()
        .iter()
        .map(|&rep| image_elements.binary_search(&h.map[rep]).expect("value is in the image"))
        .collect();
    if quotient.relabel(&iso) != image {
        return Err(Error::Invariant {
            message: "induced map from the quotient to the image is not an isomorphism".into(),
            witness: None,
        });
    }

    let ker = kernel(h)?;
    let bourne = quotient_by_congruence(h.source, &bourne_congruence(h.source, ker))?;
    let bourne_quotient_isomorphic = bourne.order() == image.order() && isomorphism_witness(&bourne, &image)?.is_some();

    Ok(FirstIsoWitness {
        image_elements,
        image,
        quotient,
        iso,
        bourne_quotient_isomorphic,
    })
}

fn require_hom(h: &HomMap<'_>) -> Result<()> {
    match is_homomorphism(h).violations.into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::Contract(format!("map is not a homomorphism: {v}"))),
    }
}
