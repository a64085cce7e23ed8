use std::fmt;
use std::ops::{BitAnd, BitOr, BitOrAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::table::Element;

/// A subset of a universe of at most 64 elements, one bit per element.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole universe `{0, .., k-1}`.
    #[inline]
    pub fn full(k: usize) -> Self {
        debug_assert!(k <= 64);
        if k == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << k) - 1)
        }
    }

    #[inline]
    pub fn singleton(x: Element) -> Self {
        debug_assert!(x < 64);
        SubsetMask(1u64 << x)
    }

    #[inline]
    pub fn contains(self, x: Element) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Element) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    #[inline]
    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Element)
    }

    #[inline]
    pub fn max(self) -> Option<Element> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as Element)
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// True when every member is `< k`.
    #[inline]
    pub fn fits(self, k: usize) -> bool {
        self.is_subset(SubsetMask::full(k))
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Element;

    #[inline]
    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Element;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for SubsetMask {
    type Item = Element;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Element> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut mask = SubsetMask::EMPTY;
        for x in iter {
            mask.insert(x);
        }
        mask
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;

    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitOrAssign for SubsetMask {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;

    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

// Serialized as the ascending list of members.
impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<Element>::deserialize(deserializer)?;
        let mut mask = SubsetMask::EMPTY;
        for x in members {
            if x >= 64 {
                return Err(D::Error::custom(format!("element {x} exceeds 63")));
            }
            mask.insert(x);
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_singletons() {
        assert_eq!(SubsetMask::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(SubsetMask::full(64).len(), 64);
        assert_eq!(SubsetMask::full(0), SubsetMask::EMPTY);
        assert!(SubsetMask::singleton(5).contains(5));
        assert!(!SubsetMask::singleton(5).contains(4));
        assert!(!SubsetMask::full(64).contains(64));
    }

    #[test]
    fn set_algebra() {
        let a: SubsetMask = [0, 2].into_iter().collect();
        let b: SubsetMask = [2, 3].into_iter().collect();
        assert_eq!((a | b).to_vec(), vec![0, 2, 3]);
        assert_eq!((a & b).to_vec(), vec![2]);
        assert!(SubsetMask::singleton(2).is_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.min(), Some(0));
        assert_eq!(b.max(), Some(3));
        assert_eq!(SubsetMask::EMPTY.min(), None);
        assert_eq!(format!("{a}"), "{0,2}");
    }

    #[test]
    fn serde_as_sorted_list() {
        let a: SubsetMask = [4, 1].into_iter().collect();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,4]");
        let back: SubsetMask = serde_json::from_str("[4,1,1]").unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<SubsetMask>("[64]").is_err());
    }
}
