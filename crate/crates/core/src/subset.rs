//! Subsets of the generating set, encoded as bit masks over generator indices.

use std::fmt;

/// A subset of the generators of a Coxeter system.
///
/// Bit `i` is set when generator `i` (0-based) belongs to the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(rank: usize) -> Subset {
        Subset(((1u64 << rank) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        Subset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    /// Generator indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including `self` and the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(Subset(c))
        })
    }

    /// Compresses `self` (a subset of `ambient`) into the indexing of `ambient`'s
    /// own generators, where the k-th smallest member of `ambient` becomes index k.
    pub fn compress(self, ambient: Subset) -> Subset {
        debug_assert!(self.is_subset_of(ambient));
        Subset::from_indices(
            ambient
                .iter()
                .enumerate()
                .filter(|&(_, g)| self.contains(g))
                .map(|(k, _)| k),
        )
    }

    /// Inverse of [`Subset::compress`].
    pub fn expand(self, ambient: Subset) -> Subset {
        Subset::from_indices(
            ambient
                .iter()
                .enumerate()
                .filter(|&(k, _)| self.contains(k))
                .map(|(_, g)| g),
        )
    }

    /// Applies a permutation of generator indices.
    pub fn permute(self, perm: &[usize]) -> Subset {
        Subset::from_indices(self.iter().map(|i| perm[i]))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// All subsets of a set of `rank` generators, in mask order.
pub fn power_set(rank: usize) -> impl Iterator<Item = Subset> {
    (0..1u32 << rank).map(Subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = Subset::from_indices([0, 2, 3]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_round_trip() {
        let amb = Subset::from_indices([1, 3, 4]);
        let x = Subset::from_indices([1, 4]);
        assert_eq!(x.compress(amb), Subset::from_indices([0, 2]));
        assert_eq!(x.compress(amb).expand(amb), x);
    }
}
