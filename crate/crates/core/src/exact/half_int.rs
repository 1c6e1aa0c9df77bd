//! Exact half-integer arithmetic.

use std::fmt;
use std::ops::{Add, Sub};

/// An integer or half-integer, stored as twice its value.
///
/// Exponents and gamma/beta arguments in this crate live on the lattice
/// `{..., -1/2, 0, 1/2, 1, ...}`; doubling keeps all arithmetic in `i64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    /// The value `doubled / 2`.
    pub const fn from_doubled(doubled: i64) -> Self {
        Self { doubled }
    }

    pub const fn from_int(value: i64) -> Self {
        Self { doubled: 2 * value }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The exact integer value, when there is one.
    pub const fn as_integer(self) -> Option<i64> {
        if self.doubled % 2 == 0 {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}
