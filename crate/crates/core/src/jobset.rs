//! Fixed-width job sets.
//!
//! Every solver state is a subset of the job set, so the representation is a
//! single `u64` bit mask. Instances are therefore limited to [`MAX_JOBS`] jobs,
//! which is far above what any exponential-time solver here can handle.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use serde::{Deserialize, Serialize};

/// Largest supported job count.
pub const MAX_JOBS: usize = 64;

/// A subset of the jobs `0..n`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JobSet(u64);

impl JobSet {
    pub const EMPTY: JobSet = JobSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_JOBS);
        if n >= MAX_JOBS {
            JobSet(u64::MAX)
        } else {
            JobSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_JOBS);
        JobSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        JobSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_JOBS && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    #[must_use]
    pub fn with(self, v: usize) -> Self {
        JobSet(self.0 | 1u64 << v)
    }

    #[inline]
    #[must_use]
    pub fn without(self, v: usize) -> Self {
        JobSet(self.0 & !(1u64 << v))
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
    pub fn is_subset(self, other: JobSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: JobSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: JobSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Every subset of `self` with exactly `k` members.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = JobSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

/// Iterator over the members of a [`JobSet`].
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

/// Iterator over all subsets of a universe, in increasing bit-mask order.
#[derive(Clone)]
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = JobSet;

    fn next(&mut self) -> Option<JobSet> {
        let cur = self.next?;
        // Standard "next submask" step: increment within the universe's bits.
        self.next = if cur == self.universe {
            None
        } else {
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(JobSet(cur))
    }
}

impl IntoIterator for JobSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for JobSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = JobSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl BitOr for JobSet {
    type Output = JobSet;
    fn bitor(self, rhs: JobSet) -> JobSet {
        JobSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for JobSet {
    fn bitor_assign(&mut self, rhs: JobSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for JobSet {
    type Output = JobSet;
    fn bitand(self, rhs: JobSet) -> JobSet {
        JobSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for JobSet {
    fn bitand_assign(&mut self, rhs: JobSet) {
        self.0 &= rhs.0;
    }
}

impl Sub for JobSet {
    type Output = JobSet;
    fn sub(self, rhs: JobSet) -> JobSet {
        JobSet(self.0 & !rhs.0)
    }
}

/// Complement within all 64 bits; intersect with [`JobSet::full`] to stay in range.
impl Not for JobSet {
    type Output = JobSet;
    fn not(self) -> JobSet {
        JobSet(!self.0)
    }
}

impl fmt::Debug for JobSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for JobSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_iter() {
        assert_eq!(JobSet::full(0), JobSet::EMPTY);
        assert_eq!(JobSet::full(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(JobSet::full(64).len(), 64);
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let u: JobSet = [1, 4, 6].into_iter().collect();
        let subs: Vec<JobSet> = u.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], JobSet::EMPTY);
        assert!(subs.iter().all(|s| s.is_subset(u)));
        let mut sorted = subs.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert_eq!(JobSet::EMPTY.subsets().count(), 1);
        assert_eq!(u.subsets_of_size(2).count(), 3);
    }

    #[test]
    fn display_lists_members() {
        let s: JobSet = [0, 3].into_iter().collect();
        assert_eq!(s.to_string(), "{0,3}");
        assert_eq!(format!("{s:?}"), "{0, 3}");
    }

    proptest! {
        #[test]
        fn set_algebra_matches_membership(a in any::<u64>(), b in any::<u64>(), v in 0usize..64) {
            let (x, y) = (JobSet::from_bits(a), JobSet::from_bits(b));
            prop_assert_eq!((x | y).contains(v), x.contains(v) || y.contains(v));
            prop_assert_eq!((x & y).contains(v), x.contains(v) && y.contains(v));
            prop_assert_eq!((x - y).contains(v), x.contains(v) && !y.contains(v));
            prop_assert_eq!(x.with(v).contains(v), true);
            prop_assert_eq!(x.without(v).contains(v), false);
            prop_assert_eq!(x.iter().count(), x.len());
            prop_assert!((x & y).is_subset(x));
        }
    }
}
