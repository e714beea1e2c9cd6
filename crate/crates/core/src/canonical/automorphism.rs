use serde::{Deserialize, Serialize};

use super::element_cells;
use crate::structure::{zero_fixing_permutations, AdditiveTable, GammaSemiring};

/// Element lists are kept up to this group order.
const MAX_LISTED_ELEMENTS: u64 = 10_000;

/// Orders above this use the backtracking search instead of filtration.
const FILTRATION_MAX_ORDER: usize = 5;

/// A permutation group on `0..n` fixing 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    pub n: usize,
    /// Every non-identity element, at the sizes handled here.
    pub generators: Vec<Vec<usize>>,
    order: u64,
    /// All elements including the identity, sorted; kept when the order is at most 10⁴.
    pub elements: Option<Vec<Vec<usize>>>,
}

impl PermGroup {
    fn from_elements(n: usize, mut elements: Vec<Vec<usize>>) -> Self {
        elements.sort();
        let identity: Vec<usize> = (0..n).collect();
        let generators = elements.iter().filter(|p| **p != identity).cloned().collect();
        let order = elements.len() as u64;
        Self {
            n,
            generators,
            order,
            elements: (order <= MAX_LISTED_ELEMENTS).then_some(elements),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Orbit label of every element under the generated group, labels
    /// numbered by first occurrence.
    pub fn orbits(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &self.generators {
            for (x, &y) in g.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|x| find(&mut parent, x)).collect();
        let mut labels = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.n);
        for r in roots {
            if labels[r] == usize::MAX {
                labels[r] = next;
                next += 1;
            }
            out.push(labels[r]);
        }
        out
    }
}

/// `φ(a+b) = φ(a)+φ(b)` and `φ({a,b,c}_γ) = {φ(a),φ(b),φ(c)}_γ` everywhere.
pub fn is_automorphism(s: &GammaSemiring, perm: &[usize]) -> bool {
    let n = s.order();
    perm[0] == 0
        && preserves_addition(s.additive(), perm)
        && (0..s.gamma_count()).all(|gamma| {
            (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| perm[s.mul(gamma, a, b, c)] == s.mul(gamma, perm[a], perm[b], perm[c])))
            })
        })
}

fn preserves_addition(add: &AdditiveTable, perm: &[usize]) -> bool {
    let n = add.order();
    (0..n).all(|a| (0..n).all(|b| perm[add.get(a, b)] == add.get(perm[a], perm[b])))
}

/// Filters all `(n-1)!` 0-fixing permutations.
pub fn automorphism_group_filtration(s: &GammaSemiring) -> PermGroup {
    let elements = zero_fixing_permutations(s.order())
        .filter(|p| is_automorphism(s, p))
        .collect();
    PermGroup::from_elements(s.order(), elements)
}

/// Depth-first search over point images `1 ↦ ?, 2 ↦ ?, …`, restricted to
/// invariant cells and cut as soon as a fully mapped sum or product
/// disagrees.
pub fn automorphism_group_backtrack(s: &GammaSemiring) -> PermGroup {
    let n = s.order();
    let mut cell_of = vec![usize::MAX; n];
    for (k, cell) in element_cells(s).iter().enumerate() {
        for &x in cell {
            cell_of[x] = k;
        }
    }
    let mut image = vec![usize::MAX; n];
    image[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    let mut out = Vec::new();
    extend(s, &cell_of, 1, &mut image, &mut used, &mut out);
    PermGroup::from_elements(n, out)
}

fn extend(
    s: &GammaSemiring,
    cell_of: &[usize],
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let n = s.order();
    if next == n {
        if is_automorphism(s, image) {
            out.push(image.to_vec());
        }
        return;
    }
    for y in 1..n {
        if used[y] || cell_of[y] != cell_of[next] {
            continue;
        }
        image[next] = y;
        used[y] = true;
        if consistent(s, image, next) {
            extend(s, cell_of, next + 1, image, used, out);
        }
        used[y] = false;
        image[next] = usize::MAX;
    }
}

/// Checks every law instance whose arguments are among `0..=last` and whose
/// result is also already mapped.
fn consistent(s: &GammaSemiring, image: &[usize], last: usize) -> bool {
    let mapped = |x: usize| x <= last;
    for a in 0..=last {
        let b = last;
        let v = s.add(a, b);
        if mapped(v) && image[v] != s.add(image[a], image[b]) {
            return false;
        }
    }
    for gamma in 0..s.gamma_count() {
        for a in 0..=last {
            for b in 0..=last {
                for c in [last] {
                    for (x, y, z) in [(a, b, c), (a, c, b), (c, a, b)] {
                        let v = s.mul(gamma, x, y, z);
                        if mapped(v) && image[v] != s.mul(gamma, image[x], image[y], image[z]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The full group of 0-fixing automorphisms.
pub fn automorphism_group(s: &GammaSemiring) -> PermGroup {
    if s.order() <= FILTRATION_MAX_ORDER {
        automorphism_group_filtration(s)
    } else {
        automorphism_group_backtrack(s)
    }
}

/// Automorphisms of `(T, +)` alone.
pub fn additive_automorphisms(add: &AdditiveTable) -> PermGroup {
    let elements = zero_fixing_permutations(add.order())
        .filter(|p| preserves_addition(add, p))
        .collect();
    PermGroup::from_elements(add.order(), elements)
}

/// Symmetry group whose orbits define structural entropy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitAction {
    /// `Aut_Γ(T)`: preserves `+` and every product.
    #[default]
    FullAutomorphisms,
    /// `Aut(T, +)`: preserves `+` only.
    AdditiveAutomorphisms,
}

impl OrbitAction {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitAction::FullAutomorphisms => "full-aut",
            OrbitAction::AdditiveAutomorphisms => "additive-aut",
        }
    }
}

pub fn orbit_partition(s: &GammaSemiring, action: OrbitAction) -> Vec<usize> {
    match action {
        OrbitAction::FullAutomorphisms => automorphism_group(s).orbits(),
        OrbitAction::AdditiveAutomorphisms => additive_automorphisms(s.additive()).orbits(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{direct_product, AxiomConfig};

    fn mode() -> AxiomConfig {
        AxiomConfig::default()
    }

    #[test]
    fn small_groups() {
        assert_eq!(automorphism_group(&GammaSemiring::trivial(1, mode())).order(), 1);
        assert_eq!(automorphism_group(&GammaSemiring::boolean(mode())).order(), 1);
    }

    #[test]
    fn boolean_square_swaps_coordinates() {
        let b = GammaSemiring::boolean(mode());
        let bb = direct_product(&b, &b).unwrap();
        let group = automorphism_group(&bb);
        assert_eq!(group.order(), 2);
        // (x,y) ↦ (y,x): index 2x+y, so 1 ↔ 2
        assert_eq!(group.generators, vec![vec![0, 2, 1, 3]]);
        assert_eq!(group.orbits(), vec![0, 1, 1, 2]);
        assert_eq!(automorphism_group_backtrack(&bb), group);
    }

    #[test]
    fn z3_zero_product_is_transitive_on_nonzero() {
        let s = GammaSemiring::zero_multiplication(AdditiveTable::cyclic(3), 1, mode()).unwrap();
        let g = automorphism_group(&s);
        assert_eq!(g.order(), 2);
        assert_eq!(g.orbits(), vec![0, 1, 1]);
        assert_eq!(orbit_partition(&s, OrbitAction::AdditiveAutomorphisms), vec![0, 1, 1]);
    }

    #[test]
    fn backtrack_agrees_with_filtration_at_order_six() {
        let b = GammaSemiring::boolean(mode());
        let z3 = GammaSemiring::zero_multiplication(AdditiveTable::cyclic(3), 1, mode()).unwrap();
        let s = direct_product(&b, &z3).unwrap();
        assert_eq!(s.order(), 6);
        let fil = automorphism_group_filtration(&s);
        assert_eq!(automorphism_group_backtrack(&s), fil);
        assert_eq!(automorphism_group(&s), fil);
        assert_eq!(120 % fil.order(), 0);
    }
}
