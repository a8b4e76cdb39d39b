//! Scalar fields used by the linear algebra layer.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A field in which Gaussian elimination can be carried out.
///
/// Exact types report a pivot as usable iff it is nonzero; floating point
/// types use a small absolute tolerance instead.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when `self` must be treated as zero during elimination.
    fn negligible(&self) -> bool;

    /// Embed a small integer.
    fn from_i64(v: i64) -> Self;
}

impl Field for Ratio<i64> {
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Field for Ratio<i128> {
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

impl Field for Ratio<BigInt> {
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

impl Field for f64 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for f32 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-4
    }
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}
