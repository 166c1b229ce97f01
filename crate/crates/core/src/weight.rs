//! Exact non-negative integer weights.
//!
//! Every instance is scaled to integers at ingestion, so all solver
//! arithmetic is integer addition and comparison. The backing integer is
//! 256 bits wide: adversarial geometric instances scale by `4^63` and their
//! totals no longer fit in 128 bits.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use ruint::aliases::U256;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact, non-negative integer weight (or cost).
///
/// `+` and `-` panic on overflow and underflow. Instances are checked at
/// construction so that no optimal-cost computation can overflow.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(U256);

impl Weight {
    pub const ZERO: Weight = Weight(U256::ZERO);
    pub const MAX: Weight = Weight(U256::MAX);

    pub fn new(v: u64) -> Self {
        Weight(U256::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(self, rhs: Weight) -> Option<Weight> {
        self.0.checked_add(rhs.0).map(Weight)
    }

    pub fn checked_sub(self, rhs: Weight) -> Option<Weight> {
        self.0.checked_sub(rhs.0).map(Weight)
    }

    pub fn checked_mul(self, rhs: Weight) -> Option<Weight> {
        self.0.checked_mul(rhs.0).map(Weight)
    }

    pub fn checked_mul_u64(self, k: u64) -> Option<Weight> {
        self.0.checked_mul(U256::from(k)).map(Weight)
    }

    /// Multiplication by a small constant; used for threshold tests such as
    /// `7·w ≥ 3·W`. Panics on overflow.
    pub fn times(self, k: u64) -> Weight {
        self.checked_mul_u64(k).expect("weight overflow")
    }

    pub fn checked_pow(self, exp: u32) -> Option<Weight> {
        self.0.checked_pow(U256::from(exp)).map(Weight)
    }

    /// Nearest `f64`; for logging and size estimates only.
    pub fn to_f64(&self) -> f64 {
        self.0.as_limbs().iter().rev().fold(0.0, |acc, &limb| acc * 18_446_744_073_709_551_616.0 + limb as f64)
    }

    /// `None` when the value does not fit in 256 bits.
    pub fn from_biguint(v: &BigUint) -> Option<Weight> {
        U256::try_from_le_slice(&v.to_bytes_le()).map(Weight)
    }

    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_le(&self.0.to_le_bytes_vec())
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(self.0).ok()
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight::new(v)
    }
}

impl From<u32> for Weight {
    fn from(v: u32) -> Self {
        Weight::new(v as u64)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        self.checked_add(rhs).expect("weight overflow")
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self.checked_sub(rhs).expect("weight underflow")
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.copied().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Weight {
    type Err = ruint::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        U256::from_str_radix(s, 10).map(Weight)
    }
}

// Weights travel through JSON as decimal strings; most exceed 2^53.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = Weight::new(40);
        let b = Weight::new(2);
        assert_eq!((a + b).to_string(), "42");
        assert_eq!(a - b, Weight::new(38));
        assert_eq!(a.times(3), Weight::new(120));
        assert_eq!([a, b].iter().sum::<Weight>(), Weight::new(42));
    }

    #[test]
    fn wide_values_round_trip() {
        let big = Weight::new(4).checked_pow(63).unwrap();
        assert_eq!(big.to_biguint(), BigUint::from(4u32).pow(63));
        assert_eq!(Weight::from_biguint(&big.to_biguint()), Some(big));
        let parsed: Weight = big.to_string().parse().unwrap();
        assert_eq!(parsed, big);
        assert!((big.to_f64() - 2f64.powi(126)).abs() / 2f64.powi(126) < 1e-12);
    }

    #[test]
    #[should_panic(expected = "underflow")]
    fn subtraction_underflow_panics() {
        let _ = Weight::new(1) - Weight::new(2);
    }

    #[test]
    fn overflow_is_detected() {
        assert_eq!(Weight::MAX.checked_add(Weight::new(1)), None);
        assert!(Weight::from_biguint(&(BigUint::from(1u32) << 256)).is_none());
    }
}
