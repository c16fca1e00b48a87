//! Subsets of a matroid ground set, stored as a 64-bit membership mask.

use std::fmt;

/// Largest ground set a [`GroundSubset`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., n-1}` with `n <= 64`.
///
/// Iteration is always in ascending element order.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        GroundSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            GroundSubset(u64::MAX)
        } else {
            GroundSubset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        GroundSubset(1u64 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u64;
        for e in elements {
            bits |= 1u64 << e;
        }
        GroundSubset(bits)
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        GroundSubset(self.0 | 1u64 << e)
    }

    pub fn without(self, e: usize) -> Self {
        GroundSubset(self.0 & !(1u64 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GroundSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: GroundSubset) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: GroundSubset) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    /// Largest element plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_ELEMENTS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Re-index along `labels`: element `labels[i]` of `self` becomes `i`.
    /// Elements of `self` not listed in `labels` are dropped.
    pub fn compress(self, labels: &[usize]) -> GroundSubset {
        let mut out = 0u64;
        for (i, &l) in labels.iter().enumerate() {
            if self.contains(l) {
                out |= 1u64 << i;
            }
        }
        GroundSubset(out)
    }

    /// Inverse of [`compress`](Self::compress): element `i` becomes `labels[i]`.
    pub fn expand(self, labels: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(self.iter().map(|i| labels[i]))
    }

    /// All subsets of `self`, in increasing mask order (starting with the empty set).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for GroundSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        GroundSubset::from_elements(iter)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Submask enumeration of a fixed mask.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = GroundSubset;

    fn next(&mut self) -> Option<GroundSubset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing order
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(GroundSubset(cur))
    }
}
