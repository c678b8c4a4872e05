//! Carrier subsets as single-word bit vectors.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

/// Index of a carrier element, `0..order`. Display names live on the table.
pub type CarrierIndex = usize;

/// Largest carrier order an [`ElementSet`] can represent.
pub const MAX_ORDER: usize = 64;

/// A subset of a carrier of order at most 64; bit `i` is element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(i: CarrierIndex) -> Self {
        debug_assert!(i < MAX_ORDER);
        ElementSet(1u64 << i)
    }

    /// `{0, .., order-1}`.
    #[inline]
    pub fn full(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        if order == MAX_ORDER {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << order) - 1)
        }
    }

    #[inline]
    pub fn contains(self, i: CarrierIndex) -> bool {
        i < MAX_ORDER && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: CarrierIndex) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: CarrierIndex) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<CarrierIndex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True when every member is below `order`.
    #[inline]
    pub fn fits(self, order: usize) -> bool {
        self.is_subset(ElementSet::full(order))
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every non-empty subset of `{0, .., order-1}`, in increasing numeric order.
    pub fn nonempty_subsets(order: usize) -> impl Iterator<Item = ElementSet> {
        let top = ElementSet::full(order).0;
        (1..=top).map(ElementSet)
    }
}

impl FromIterator<CarrierIndex> for ElementSet {
    fn from_iter<I: IntoIterator<Item = CarrierIndex>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = CarrierIndex;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Members in increasing index order.
#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = CarrierIndex;

    #[inline]
    fn next(&mut self) -> Option<CarrierIndex> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl BitOr for ElementSet {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitOrAssign for ElementSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for ElementSet {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl BitAndAssign for ElementSet {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for ElementSet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
