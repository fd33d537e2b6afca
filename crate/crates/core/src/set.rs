use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on ground-set size. Elements are dense ids `0..n`, so a set fits
/// in one machine word pair and all set algebra is branch-free bit twiddling.
pub const MAX_GROUND: usize = 128;

/// The ambient ground set `{0, 1, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::GroundTooLarge(size));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::universe(self.size)
    }
}

/// A subset of the ground set, stored as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    bits: u128,
}

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet { bits: 0 };

    pub fn from_bits(bits: u128) -> Self {
        ElementSet { bits }
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn singleton(element: usize) -> Result<Self> {
        if element >= MAX_GROUND {
            return Err(Error::ElementOutOfRange {
                element,
                ground: MAX_GROUND,
            });
        }
        Ok(ElementSet { bits: 1u128 << element })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for e in elements {
            if e >= MAX_GROUND {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    ground: MAX_GROUND,
                });
            }
            bits |= 1u128 << e;
        }
        Ok(ElementSet { bits })
    }

    /// `{0, .., n-1}`.
    pub fn universe(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 0 {
            ElementSet::EMPTY
        } else if n == MAX_GROUND {
            ElementSet { bits: u128::MAX }
        } else {
            ElementSet { bits: (1u128 << n) - 1 }
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        element < MAX_GROUND && self.bits & (1u128 << element) != 0
    }

    #[must_use]
    pub fn with(&self, element: usize) -> Self {
        debug_assert!(element < MAX_GROUND);
        ElementSet { bits: self.bits | (1u128 << element) }
    }

    #[must_use]
    pub fn without(&self, element: usize) -> Self {
        debug_assert!(element < MAX_GROUND);
        ElementSet { bits: self.bits & !(1u128 << element) }
    }

    #[must_use]
    pub fn union(&self, other: Self) -> Self {
        ElementSet { bits: self.bits | other.bits }
    }

    #[must_use]
    pub fn intersection(&self, other: Self) -> Self {
        ElementSet { bits: self.bits & other.bits }
    }

    #[must_use]
    pub fn difference(&self, other: Self) -> Self {
        ElementSet { bits: self.bits & !other.bits }
    }

    pub fn intersects(&self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    pub fn is_subset_of(&self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Ascending iterator over member elements.
    pub fn iter(&self) -> ElementIter {
        ElementIter { bits: self.bits }
    }

    /// Smallest element, if any.
    pub fn min_element(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical order: lexicographic over the ascending element sequences, with a
/// strict prefix sorting before its extensions. `{1}` < `{1, 3}` < `{2}`.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct ElementIter {
    bits: u128,
}

impl Iterator for ElementIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            let e = self.bits.trailing_zeros() as usize;
            self.bits &= self.bits - 1;
            Some(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a = ElementSet::from_elements([0, 2, 5]).unwrap();
        let b = ElementSet::from_elements([2, 3]).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.contains(5));
        assert!(!a.contains(1));
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert!(a.intersects(b));
        assert!(!a.intersects(ElementSet::singleton(1).unwrap()));
        assert!(b.is_subset_of(a.union(b)));
    }

    #[test]
    fn universe_edges() {
        assert!(ElementSet::universe(0).is_empty());
        assert_eq!(ElementSet::universe(128).len(), 128);
        assert_eq!(ElementSet::universe(7).to_vec(), vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            ElementSet::singleton(128),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(GroundSet::new(129).is_err());
        assert!(GroundSet::new(128).is_ok());
    }

    #[test]
    fn canonical_order_is_lex_on_sequences() {
        let mut sets = vec![
            ElementSet::from_elements([2usize]).unwrap(),
            ElementSet::from_elements([1usize, 3]).unwrap(),
            ElementSet::from_elements([1usize]).unwrap(),
            ElementSet::from_elements([0usize, 2]).unwrap(),
        ];
        sets.sort();
        let shown: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, vec!["{0, 2}", "{1}", "{1, 3}", "{2}"]);
    }

    #[test]
    fn display_format() {
        assert_eq!(ElementSet::EMPTY.to_string(), "{}");
        assert_eq!(
            ElementSet::from_elements([4, 1]).unwrap().to_string(),
            "{1, 4}"
        );
    }
}
