//! Exact integer scalars for the integral linear algebra.
//!
//! Elimination code is written once against [`ExactInt`] and instantiated
//! at `i64` for speed. Every arithmetic step is checked; on overflow the
//! caller reruns the same routine at [`BigInt`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

/// Fixed-width arithmetic overflowed; retry at arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
    fn from_i64(v: i64) -> Self;
    fn to_bigint(&self) -> BigInt;

    fn add_checked(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other).ok_or(Overflow)
    }

    fn sub_checked(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).ok_or(Overflow)
    }

    fn mul_checked(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).ok_or(Overflow)
    }

    /// `self - factor * other`
    fn sub_mul(&self, factor: &Self, other: &Self) -> Result<Self, Overflow> {
        self.sub_checked(&factor.mul_checked(other)?)
    }

    fn neg_checked(&self) -> Result<Self, Overflow> {
        Self::zero().sub_checked(self)
    }
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
