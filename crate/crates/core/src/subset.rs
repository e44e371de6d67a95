//! Subsets of a small ground set `[n]` encoded as bit masks.
//!
//! Element `i` (1-based) is bit `i - 1`. The canonical order sorts subsets
//! by cardinality and then by numeric value; every serialized artifact uses it.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND_SET: usize = 16;

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(element: usize) -> Self {
        debug_assert!(element >= 1);
        SubsetMask(1 << (element - 1))
    }

    /// Builds a mask from 1-based elements, rejecting anything outside `[n]`.
    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element >= 1 && self.0 & (1 << (element - 1)) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn with(self, element: usize) -> Self {
        SubsetMask(self.0 | (1 << (element - 1)))
    }

    pub fn without(self, element: usize) -> Self {
        SubsetMask(self.0 & !(1 << (element - 1)))
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize + 1);
            bits &= bits - 1;
        }
        out
    }

    /// Order by (cardinality, numeric value).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }

    /// Collapses `[n]` minus `removed` onto `[n-1]`, preserving element order.
    pub fn remove_element_reindex(self, removed: usize) -> Self {
        let low_mask = (1u32 << (removed - 1)) - 1;
        let low = self.0 & low_mask;
        let high = (self.0 >> removed) << (removed - 1);
        SubsetMask(low | high)
    }

    /// Inverse of [`remove_element_reindex`](Self::remove_element_reindex) for
    /// masks that do not contain `removed`.
    pub fn insert_gap(self, removed: usize) -> Self {
        let low_mask = (1u32 << (removed - 1)) - 1;
        let low = self.0 & low_mask;
        let high = (self.0 & !low_mask) << 1;
        SubsetMask(low | high)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

pub fn check_ground_set(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::GroundSetOutOfRange { n, min, max });
    }
    Ok(())
}

/// All subsets of `[n]` in canonical order.
pub fn canonical_subsets(n: usize) -> Vec<SubsetMask> {
    let mut all: Vec<SubsetMask> = (0..1u32 << n).map(SubsetMask).collect();
    all.sort();
    all
}

/// Subsets of `[n]` of cardinality `k`, increasing numeric value.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<SubsetMask> {
    (0..1u32 << n)
        .map(SubsetMask)
        .filter(|s| s.len() == k)
        .collect()
}

/// Subsets of `mask`, including the empty set and `mask` itself.
pub fn submasks(mask: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let full = mask.0;
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some(((cur | !full).wrapping_add(1)) & full)
        };
        Some(SubsetMask(cur))
    })
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_cardinality_then_value() {
        let order = canonical_subsets(3);
        let bits: Vec<u32> = order.iter().map(|s| s.0).collect();
        assert_eq!(bits, vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn reindex_roundtrip() {
        for bits in 0..32u32 {
            let s = SubsetMask(bits);
            for removed in 1..=5 {
                if s.contains(removed) {
                    continue;
                }
                let r = s.remove_element_reindex(removed);
                assert_eq!(r.len(), s.len());
                assert_eq!(r.insert_gap(removed), s);
            }
        }
        // {1,3,4} without 2 -> {1,2,3}
        assert_eq!(SubsetMask(0b1101).remove_element_reindex(2), SubsetMask(0b111));
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<_> = submasks(SubsetMask(0b101)).collect();
        assert_eq!(subs, vec![SubsetMask(0), SubsetMask(1), SubsetMask(4), SubsetMask(5)]);
        assert_eq!(submasks(SubsetMask(0)).count(), 1);
    }

    #[test]
    fn elements_and_errors() {
        assert_eq!(SubsetMask(0b1010).elements(), vec![2, 4]);
        assert!(SubsetMask::from_elements(&[0], 3).is_err());
        assert!(SubsetMask::from_elements(&[4], 3).is_err());
        assert_eq!(SubsetMask::from_elements(&[3, 1], 3).unwrap(), SubsetMask(0b101));
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
    }
}
