mod common;

use common::*;
use gamma_forge_core::canonical::canonical_form;
use gamma_forge_core::invariants::{congruences, induced_map, is_prime, spectrum, IdealSet};
use gamma_forge_core::io::{parse_jsonl, to_json_line, write_jsonl};
use gamma_forge_core::structure::{direct_product, image_and_first_iso, is_homomorphism, kernel, HomMap};
use gamma_forge_core::{AxiomConfig, GammaSemiring};

fn sym() -> AxiomConfig {
    AxiomConfig::default()
}

fn brute_is_hom(s: &Raw, t: &Raw, f: &[usize]) -> bool {
    let n = s.n;
    (0..n).all(|a| (0..n).all(|b| f[s.add[a][b]] == t.add[f[a]][f[b]]))
        && (0..s.cubes.len()).all(|k| {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| f[s.mul(k, a, b, c)] == t.mul(k, f[a], f[b], f[c]))))
        })
}

/// Every 0-preserving map `0..n → 0..m`.
fn maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32 - 1))
        .map(|mut code| {
            let mut f = vec![0];
            for _ in 1..n {
                f.push(code % m);
                code /= m;
            }
            f
        })
        .collect()
}

#[test]
fn first_isomorphism_theorem_over_all_surjections() {
    let mut checked = 0;
    let mut bourne_agree = 0;
    let corpus = corpus(3, 2);
    let raws: Vec<Raw> = corpus.iter().map(Raw::from_structure).collect();
    for (s, rs) in corpus.iter().zip(&raws) {
        for (t, rt) in corpus.iter().zip(&raws) {
            if t.order() > s.order() || t.gamma_count() != s.gamma_count() {
                continue;
            }
            for f in maps(s.order(), t.order()) {
                let surjective = (0..t.order()).all(|y| f.contains(&y));
                if !surjective || !brute_is_hom(rs, rt, &f) {
                    continue;
                }
                let h = HomMap::new(s, t, f).unwrap();
                assert!(is_homomorphism(&h).is_valid());
                let w = image_and_first_iso(&h).unwrap();
                assert_eq!(canonical_form(&w.image), canonical_form(&w.quotient));
                assert_eq!(canonical_form(&w.image), canonical_form(t));
                checked += 1;
                bourne_agree += usize::from(w.bourne_quotient_isomorphic);
            }
        }
    }
    assert!(checked > 0);
    assert!(bourne_agree <= checked);
}

#[test]
fn homomorphism_checker_agrees_with_brute_force() {
    let corpus = corpus(3, 1);
    let raws: Vec<Raw> = corpus.iter().map(Raw::from_structure).collect();
    for (s, rs) in corpus.iter().zip(&raws).filter(|(s, _)| s.order() == 3) {
        for (t, rt) in corpus.iter().zip(&raws).filter(|(t, _)| t.order() >= 2) {
            for f in maps(3, t.order()) {
                let h = HomMap::new(s, t, f.clone()).unwrap();
                assert_eq!(is_homomorphism(&h).is_valid(), brute_is_hom(rs, rt, &f));
            }
        }
    }
}

#[test]
fn kernels_of_identity_zero_and_projection() {
    let b = GammaSemiring::boolean(sym());
    assert_eq!(kernel(&HomMap::identity(&b)).unwrap().members(), vec![0]);
    let one = GammaSemiring::trivial(1, sym());
    let zero = HomMap::new(&b, &one, vec![0, 0]).unwrap();
    assert!(kernel(&zero).unwrap().is_full());
    let w = image_and_first_iso(&zero).unwrap();
    assert_eq!(w.image.order(), 1);

    // Quotient projections for congruences whose zero class is {0, x}.
    let mut found = false;
    for s in corpus(3, 1).into_iter().filter(|s| s.order() == 3) {
        for theta in congruences(&s).unwrap() {
            let zc = theta.zero_class();
            if zc.len() != 2 {
                continue;
            }
            let q = gamma_forge_core::structure::quotient_by_congruence(&s, &theta).unwrap();
            let h = HomMap::new(&s, &q, theta.classes().to_vec()).unwrap();
            assert_eq!(kernel(&h).unwrap(), zc);
            found = true;
        }
    }
    assert!(found);
}

#[test]
fn projection_pulls_back_primes() {
    let b = GammaSemiring::boolean(sym());
    let bb = direct_product(&b, &b).unwrap();
    let proj = HomMap::new(&bb, &b, vec![0, 0, 1, 1]).unwrap();
    let pre = IdealSet::from_members(4, [0, 1]);
    assert!(is_prime(&bb, pre));
    let (sb, st) = (spectrum(&bb).unwrap(), spectrum(&b).unwrap());
    let m = induced_map(&proj, &sb, &st).unwrap();
    let zero_prime = st.primes.iter().position(|p| p.members() == vec![0]).unwrap();
    let image = m.images[zero_prime].expect("preimage is prime");
    assert_eq!(sb.primes[image], pre);
}

#[test]
fn jsonl_round_trip_is_byte_identical() {
    let mut all = corpus(3, 2);
    all.extend(corpus(4, 1));
    let text = write_jsonl(&all);
    let back = parse_jsonl(&text).unwrap();
    assert_eq!(back, all);
    assert_eq!(write_jsonl(&back), text);
    for s in &all {
        assert_eq!(to_json_line(&gamma_forge_core::io::from_json_line(&to_json_line(s), 1).unwrap()), to_json_line(s));
    }
}

#[test]
fn jsonl_errors_carry_positions() {
    let err = parse_jsonl("\n{\"n\":2}\n").unwrap_err();
    assert_eq!(err.line, 2);
    let err = parse_jsonl("{\"n\":1,\"g\":2,\"mode\":{\"symmetric\":true,\"associative\":false},\"add\":[[0]],\"tensors\":[[[[0]]]]}").unwrap_err();
    assert_eq!(err.line, 1);
    // Out-of-range entries parse and are reported by the axiom check.
    let s = parse_jsonl("{\"n\":1,\"g\":1,\"mode\":{\"symmetric\":true,\"associative\":false},\"add\":[[0]],\"tensors\":[[[[1]]]]}").unwrap();
    assert!(gamma_forge_core::verify_structure(&s[0]).has(gamma_forge_core::Axiom::Closure));
}
