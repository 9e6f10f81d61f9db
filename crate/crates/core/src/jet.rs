//! Second-order Taylor data at `t = 1`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::ring::{IntRing, Ring};

/// Value, first and second derivative of a function at `t = 1`.
///
/// Arithmetic is that of `Z[s]/(s^3)` written in derivative form, so products
/// follow the Leibniz rule `(fg)'' = f''g + 2f'g' + fg''`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Jet<T = BigInt> {
    pub d0: T,
    pub d1: T,
    pub d2: T,
}

impl<T> Jet<T> {
    pub fn new(d0: T, d1: T, d2: T) -> Self {
        Self { d0, d1, d2 }
    }
}

impl<T: Ring> Jet<T> {
    pub fn constant(c: T) -> Self {
        Self::new(c, T::zero(), T::zero())
    }

    /// Jet of `a + b*t`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::new(T::from_i64(a + b), T::from_i64(b), T::zero())
    }

    fn checked_mul(&self, o: &Self) -> Option<Self> {
        let d0 = self.d0.rmul(&o.d0)?;
        let d1 = self.d1.rmul(&o.d0)?.radd(&self.d0.rmul(&o.d1)?)?;
        let cross = self.d1.rmul(&o.d1)?;
        let d2 = self.d2.rmul(&o.d0)?.radd(&cross.radd(&cross)?)?.radd(&self.d0.rmul(&o.d2)?)?;
        Some(Self::new(d0, d1, d2))
    }
}

impl<T: IntRing> Jet<T> {
    /// Multiplicative inverse when the value at 1 is a unit.
    ///
    /// With `u = d0 = ±1`: `(1/f)' = -f'` and `(1/f)'' = 2u f'^2 - f''`.
    pub fn inverse(&self) -> Option<Self> {
        self.d0.unit_sign()?;
        let d1 = self.d1.rneg()?;
        let sq = self.d1.rmul(&self.d1)?;
        let d2 = self.d0.rmul(&sq.radd(&sq)?)?.rsub(&self.d2)?;
        Some(Self::new(self.d0.clone(), d1, d2))
    }

    pub fn to_big(&self) -> Jet<BigInt> {
        Jet::new(self.d0.to_bigint(), self.d1.to_bigint(), self.d2.to_bigint())
    }
}

impl Jet<BigInt> {
    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("big integers do not overflow")
    }
}

impl<T: Ring> Ring for Jet<T> {
    fn zero() -> Self {
        Self::constant(T::zero())
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(T::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.d0.is_zero() && self.d1.is_zero() && self.d2.is_zero()
    }
    fn radd(&self, o: &Self) -> Option<Self> {
        Some(Self::new(self.d0.radd(&o.d0)?, self.d1.radd(&o.d1)?, self.d2.radd(&o.d2)?))
    }
    fn rsub(&self, o: &Self) -> Option<Self> {
        Some(Self::new(self.d0.rsub(&o.d0)?, self.d1.rsub(&o.d1)?, self.d2.rsub(&o.d2)?))
    }
    fn rmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jet(a: i128, b: i128, c: i128) -> Jet<i128> {
        Jet::new(a, b, c)
    }

    #[test]
    fn linear_terms() {
        // 1 - t at 1: value 0, slope -1
        assert_eq!(Jet::<i128>::linear(1, -1), jet(0, -1, 0));
        // t * t = t^2: (1, 2, 2)
        let t = Jet::<i128>::linear(0, 1);
        assert_eq!(t.rmul(&t).unwrap(), jet(1, 2, 2));
    }

    #[test]
    fn overflow_is_reported() {
        let big = jet(i128::MAX, 0, 0);
        assert!(big.rmul(&jet(2, 0, 0)).is_none());
    }

    proptest! {
        #[test]
        fn inverse_of_unit_jets(u in prop::bool::ANY, b in -50i128..50, c in -50i128..50) {
            let f = jet(if u { 1 } else { -1 }, b, c);
            let g = f.inverse().unwrap();
            prop_assert_eq!(f.rmul(&g).unwrap(), Jet::one());
        }

        #[test]
        fn non_units_have_no_inverse(a in 2i128..20, b in -5i128..5) {
            prop_assert!(jet(a, b, 0).inverse().is_none());
        }
    }
}
