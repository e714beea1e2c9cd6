//! Enumeration, canonical labeling and invariant analytics for finite
//! commutative ternary Γ-semirings.
//!
//! A ternary Γ-semiring is a commutative monoid `(T, +, 0)` with a family of
//! ternary products `{a, b, c}_γ`, one per parameter γ, each distributive in
//! every slot and annihilated by `0`. This crate:
//!
//! * builds and checks such structures ([`structure`]),
//! * enumerates all of them for small orders ([`enumeration`]),
//! * decides isomorphism and computes automorphism groups ([`canonical`]),
//! * computes ideals, congruences, primes, entropy and signatures
//!   ([`invariants`]),
//! * runs the statistical pipeline over a classified corpus ([`analytics`]).

pub mod analytics;
pub mod canonical;
pub mod enumeration;
pub mod error;
pub mod invariants;
pub mod io;
pub mod structure;

pub use canonical::{automorphism_group, canonical_form, isomorphism_witness, CanonicalForm, PermGroup};
pub use enumeration::{
    enumerate_additive_monoids, enumerate_classes, generate_ternary_tables, naive_enumerate, sample_random,
    ClassEntry, SearchConfig, SearchStats,
};
pub use error::{Error, Result};
pub use invariants::{signature, InvariantSignature, TypeLabel};
pub use structure::{
    verify_structure, AdditiveTable, Axiom, AxiomConfig, ElementId, GammaSemiring, TernaryTensor, ValidityReport,
    Violation,
};
