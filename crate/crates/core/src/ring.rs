//! Minimal commutative-ring interface shared by the determinant routines.
//! Every operation is checked: `None` means the fixed-width representation
//! overflowed, so callers can retry with arbitrary precision.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Option<Self>;
    fn rsub(&self, o: &Self) -> Option<Self>;
    fn rmul(&self, o: &Self) -> Option<Self>;

    fn rneg(&self) -> Option<Self> {
        Self::zero().rsub(self)
    }
}

/// Integer rings: `i128` (checked) and `BigInt`.
pub trait IntRing: Ring {
    /// Exact quotient, `None` when `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// `Some(±1)` for units.
    fn unit_sign(&self) -> Option<i8>;
    fn to_bigint(&self) -> BigInt;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn radd(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn rsub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn rmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl IntRing for i128 {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if *o == 0 || self % o != 0 {
            return None;
        }
        self.checked_div(*o)
    }
    fn unit_sign(&self) -> Option<i8> {
        match *self {
            1 => Some(1),
            -1 => Some(-1),
            _ => None,
        }
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn rsub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn rmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

impl IntRing for BigInt {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn unit_sign(&self) -> Option<i8> {
        if self.abs().is_one() {
            Some(if self.is_negative() { -1 } else { 1 })
        } else {
            None
        }
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Narrows a big integer into `i128`, if it fits.
pub fn narrow(v: &BigInt) -> Option<i128> {
    v.to_i128()
}
