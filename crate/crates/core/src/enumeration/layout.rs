use crate::structure::{AxiomConfig, GammaSemiring, TernaryTensor};

/// Marker for cells forced to 0 by the absorbing rule.
pub(crate) const ZERO: u32 = u32::MAX;

/// Which tensor cells are searched and how the rest are derived.
///
/// Free cells have every coordinate nonzero (the others are absorbing) and,
/// in symmetric mode, sorted coordinates `a ≤ b ≤ c`; every other cell with
/// the same multiset of coordinates copies its value. Free cells are numbered
/// γ-outermost, then lexicographically, which is also the search order.
#[derive(Clone, Debug)]
pub(crate) struct CellLayout {
    pub n: usize,
    pub g: usize,
    pub symmetric: bool,
    /// `(γ, a, b, c)` for every free cell.
    pub free: Vec<(usize, usize, usize, usize)>,
    /// Free-cell id (or [`ZERO`]) for every `(γ, a, b, c)`, row-major.
    pub cell_ref: Vec<u32>,
}

impl CellLayout {
    pub fn new(n: usize, g: usize, symmetric: bool) -> Self {
        let mut free = Vec::new();
        let mut cell_ref = vec![ZERO; g * n * n * n];
        for gamma in 0..g {
            for a in 1..n {
                for b in 1..n {
                    for c in 1..n {
                        if symmetric && !(a <= b && b <= c) {
                            continue;
                        }
                        free.push((gamma, a, b, c));
                    }
                }
            }
        }
        let layout_index = |gamma: usize, a: usize, b: usize, c: usize| ((gamma * n + a) * n + b) * n + c;
        for (id, &(gamma, a, b, c)) in free.iter().enumerate() {
            if symmetric {
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    cell_ref[layout_index(gamma, x, y, z)] = id as u32;
                }
            } else {
                cell_ref[layout_index(gamma, a, b, c)] = id as u32;
            }
        }
        Self {
            n,
            g,
            symmetric,
            free,
            cell_ref,
        }
    }

    #[inline]
    pub fn cell(&self, gamma: usize, a: usize, b: usize, c: usize) -> u32 {
        self.cell_ref[((gamma * self.n + a) * self.n + b) * self.n + c]
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Expands free-cell values into full tensors.
    pub fn tensors(&self, values: &[u8]) -> Vec<TernaryTensor> {
        let n3 = self.n * self.n * self.n;
        (0..self.g)
            .map(|gamma| {
                let cube = self.cell_ref[gamma * n3..(gamma + 1) * n3]
                    .iter()
                    .map(|&r| if r == ZERO { 0 } else { values[r as usize] })
                    .collect();
                TernaryTensor::from_flat(self.n, cube).expect("layout shape")
            })
            .collect()
    }

    pub fn build(&self, add: &crate::structure::AdditiveTable, values: &[u8], mode: AxiomConfig) -> GammaSemiring {
        GammaSemiring::new(add.clone(), self.tensors(values), mode).expect("layout shape")
    }
}

/// Cells left to choose after absorption and, if configured, symmetry.
pub fn free_cell_count(n: usize, g: usize, symmetric: bool) -> usize {
    let m = n.saturating_sub(1);
    let per_gamma = if symmetric {
        // multisets of size 3 from m elements
        m * (m + 1) * (m + 2) / 6
    } else {
        m * m * m
    };
    per_gamma * g
}
