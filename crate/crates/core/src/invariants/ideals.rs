use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::GammaSemiring;

/// Largest order for which subsets are scanned exhaustively.
pub const MAX_IDEAL_SCAN_ORDER: usize = 16;

/// A subset of `0..n` stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealSet {
    n: u8,
    mask: u64,
}

impl IdealSet {
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        Self { n: n as u8, mask }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mask = members.into_iter().fold(0u64, |m, x| m | (1 << x));
        Self::from_mask(n, mask)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_mask(n, 1)
    }

    pub fn full(n: usize) -> Self {
        Self::from_mask(n, full_mask(n))
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.order())
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.contains(x)).collect()
    }

    pub fn intersect(&self, other: &IdealSet) -> IdealSet {
        Self::from_mask(self.order(), self.mask & other.mask)
    }
}

impl fmt::Display for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Contains 0, closed under `+`, and absorbing in every slot of every product.
pub fn is_ideal(s: &GammaSemiring, set: IdealSet) -> bool {
    let n = s.order();
    if !set.contains(0) {
        return false;
    }
    let members = set.members();
    for &i in &members {
        for &j in &members {
            if !set.contains(s.add(i, j)) {
                return false;
            }
        }
    }
    for gamma in 0..s.gamma_count() {
        for &i in &members {
            for x in 0..n {
                for y in 0..n {
                    if !set.contains(s.mul(gamma, i, x, y))
                        || !set.contains(s.mul(gamma, x, i, y))
                        || !set.contains(s.mul(gamma, x, y, i))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All ideals, by scanning the subsets that contain 0; sorted by bitmask.
pub fn ideals(s: &GammaSemiring) -> Result<Vec<IdealSet>> {
    let n = s.order();
    if n > MAX_IDEAL_SCAN_ORDER {
        return Err(Error::CapExceeded(format!(
            "ideal scan limited to order {MAX_IDEAL_SCAN_ORDER}, got {n}"
        )));
    }
    Ok((0..1u64 << (n - 1))
        .map(|rest| IdealSet::from_mask(n, rest << 1 | 1))
        .filter(|&set| is_ideal(s, set))
        .collect())
}

/// Smallest ideal containing `seed`: add 0, then close under `+` and absorption.
pub fn generated_ideal(s: &GammaSemiring, seed: IdealSet) -> IdealSet {
    let n = s.order();
    let mut mask = seed.mask() | 1;
    loop {
        let set = IdealSet::from_mask(n, mask);
        let members = set.members();
        let mut next = mask;
        for &i in &members {
            for &j in &members {
                next |= 1 << s.add(i, j);
            }
            for gamma in 0..s.gamma_count() {
                for x in 0..n {
                    for y in 0..n {
                        next |= 1 << s.mul(gamma, i, x, y);
                        next |= 1 << s.mul(gamma, x, i, y);
                        next |= 1 << s.mul(gamma, x, y, i);
                    }
                }
            }
        }
        if next == mask {
            return set;
        }
        mask = next;
    }
}
