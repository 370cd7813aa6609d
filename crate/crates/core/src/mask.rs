use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a single-word mask can hold.
pub const MAX_N: u32 = 64;

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSize(n))
    }
}

/// Mask with bits `0..n` set, i.e. the ground set `[n]`.
pub fn ground_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]`; element `i` lives in bit `i - 1`.
///
/// Ordering is the canonical family order: cardinality first, then the raw
/// mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// Builds a mask from 1-based elements. Elements must lie in `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elems {
            if e == 0 || e > MAX_N {
                return Err(Error::ElementOutOfRange { elem: e, n: MAX_N });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// The interval `[a, b]`, empty when `a > b`.
    pub fn interval(a: u32, b: u32) -> Self {
        if a > b || b == 0 {
            return SubsetMask::EMPTY;
        }
        let a = a.max(1);
        SubsetMask(ground_bits(b) & !ground_bits(a - 1))
    }

    /// The full ground set `[n]`.
    pub fn full(n: u32) -> Self {
        SubsetMask(ground_bits(n))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, elem: u32) -> bool {
        (1..=MAX_N).contains(&elem) && self.0 >> (elem - 1) & 1 == 1
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    pub const fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Highest element, or 0 for the empty set.
    pub const fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Relabels every element `i` to `i + by`. Fails if the result leaves `[64]`.
    pub fn shift_up(self, by: u32) -> Result<SubsetMask> {
        if self.is_empty() || by == 0 {
            return Ok(self);
        }
        let top = self.max_element() + by;
        if top > MAX_N {
            return Err(Error::ElementOutOfRange { elem: top, n: MAX_N });
        }
        Ok(SubsetMask(self.0 << by))
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `k`-subsets of `[g]` in ascending mask order (Gosper's hack).
pub fn k_subsets(g: u32, k: u32) -> KSubsets {
    let next = if k > g || g > MAX_N {
        None
    } else {
        Some(ground_bits(k))
    };
    KSubsets { g, next }
}

pub struct KSubsets {
    g: u32,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur.wrapping_add(low);
            if ripple == 0 {
                // carried out of bit 63
                None
            } else {
                let ones = ((cur ^ ripple) >> 2) >> low.trailing_zeros();
                let nxt = ripple | ones;
                (nxt & !ground_bits(self.g) == 0).then_some(nxt)
            }
        };
        Some(SubsetMask(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_cardinality_then_value() {
        let a = SubsetMask::from_bits(0b100);
        let b = SubsetMask::from_bits(0b011);
        assert!(a < b);
        assert!(SubsetMask::EMPTY < a);
    }

    #[test]
    fn gosper_counts_match_binomials() {
        assert_eq!(k_subsets(5, 2).count(), 10);
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![SubsetMask::EMPTY]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 63).count(), 64);
        let v: Vec<_> = k_subsets(4, 2).map(|m| m.bits()).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    #[test]
    fn interval_and_display() {
        assert_eq!(SubsetMask::interval(3, 5).to_string(), "{3,4,5}");
        assert!(SubsetMask::interval(4, 3).is_empty());
        assert_eq!(SubsetMask::full(64).len(), 64);
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }

    #[test]
    fn shift_keeps_within_ground() {
        let s = SubsetMask::from_elements([1, 2]).unwrap();
        assert_eq!(s.shift_up(3).unwrap().to_string(), "{4,5}");
        assert!(SubsetMask::from_elements([64]).unwrap().shift_up(1).is_err());
    }
}
