//! Exact cost arithmetic.
//!
//! Public results are always [`ExactCost`] (arbitrary precision). Internally the
//! dynamic programs are generic over [`Weight`] so that instances whose largest
//! possible total fits in 127 bits run on `u128`.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative integer cost; never rounded. Serialized as a decimal string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactCost(BigUint);

impl Serialize for ExactCost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ExactCost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<BigUint>()
            .map(ExactCost)
            .map_err(serde::de::Error::custom)
    }
}

impl ExactCost {
    pub fn zero() -> Self {
        ExactCost(<BigUint as num_traits::Zero>::zero())
    }

    pub fn new(value: BigUint) -> Self {
        ExactCost(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    /// `k * t`, the contribution of a job with time `t` and coefficient `k`.
    pub fn scaled(t: &BigUint, k: u64) -> Self {
        ExactCost(t * k)
    }
}

impl From<u64> for ExactCost {
    fn from(v: u64) -> Self {
        ExactCost(BigUint::from(v))
    }
}

impl From<u128> for ExactCost {
    fn from(v: u128) -> Self {
        ExactCost(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCost {
    fn from(v: BigUint) -> Self {
        ExactCost(v)
    }
}

impl Add for ExactCost {
    type Output = ExactCost;
    fn add(self, rhs: ExactCost) -> ExactCost {
        ExactCost(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactCost> for ExactCost {
    type Output = ExactCost;
    fn add(self, rhs: &'a ExactCost) -> ExactCost {
        ExactCost(self.0 + &rhs.0)
    }
}

impl AddAssign<&ExactCost> for ExactCost {
    fn add_assign(&mut self, rhs: &ExactCost) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for ExactCost {
    fn sum<I: Iterator<Item = ExactCost>>(iter: I) -> Self {
        iter.fold(ExactCost::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExactCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for ExactCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Scalar used inside the dynamic programs.
pub(crate) trait Weight: Clone + Ord + Send + Sync + fmt::Debug {
    fn zero() -> Self;
    /// `self + w * k`.
    fn add_scaled(&self, w: &Self, k: u64) -> Self;
    fn to_exact(&self) -> ExactCost;
}

impl Weight for u128 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn add_scaled(&self, w: &Self, k: u64) -> Self {
        self + w * k as u128
    }
    fn to_exact(&self) -> ExactCost {
        ExactCost::from(*self)
    }
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_scaled(&self, w: &Self, k: u64) -> Self {
        self + w * k
    }
    fn to_exact(&self) -> ExactCost {
        ExactCost(self.clone())
    }
}

/// Per-job processing times in the narrowest representation that cannot
/// overflow for any ordering.
#[derive(Clone, Debug)]
pub(crate) enum Weights {
    Narrow(Vec<u128>),
    Wide(Vec<BigUint>),
}

impl Weights {
    /// Every total is at most `n * sum(t)`; use `u128` when that bound fits in 127 bits.
    pub(crate) fn for_times(times: &[BigUint]) -> Self {
        let n = times.len() as u64;
        let sum: BigUint = times.iter().sum();
        let bound = sum * n.max(1);
        if bound.bits() <= 127 {
            Weights::Narrow(times.iter().map(|t| t.to_u128().expect("fits")).collect())
        } else {
            Weights::Wide(times.to_vec())
        }
    }
}
