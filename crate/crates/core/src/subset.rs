//! Subsets of a small index set, stored as a 64-bit mask.

use std::fmt;

/// Largest index set a [`Subset`] can describe.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `0..n` for `n <= 64`.
///
/// Ordering is by mask value, which is the order used everywhere a
/// "smallest" subset witness is reported.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// The whole index set `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        Subset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_ELEMENTS);
        self.0 |= 1u64 << i;
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `0..n`, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_ELEMENTS, "cannot enumerate all subsets of {n} elements");
        (0..1u64 << n).map(Subset)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a: Subset = [0, 2].into_iter().collect();
        let b = Subset::singleton(1);
        assert_eq!(a.union(b), Subset::full(3));
        assert!(a.is_disjoint(b));
        assert_eq!(a.complement(3), b);
        assert_eq!(a.to_vec(), vec![0, 2]);
        assert_eq!(a.to_string(), "{0,2}");
        assert_eq!(Subset::EMPTY.first(), None);
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!(Subset::all(3).count(), 8);
    }
}
