//! Exact Laurent polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::jet::Jet;

/// `sum c_e t^e` over integer exponents. Zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial: {0}")]
pub struct PolyParseError(pub String);

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Polynomial in `t` from ascending coefficients starting at `t^0`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, c)| (e as i64, c.clone())))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `p(t) -> p(1/t)`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value and first two derivatives at `t = 1`.
    pub fn jet_at_one(&self) -> Jet<BigInt> {
        let mut j = Jet::new(BigInt::zero(), BigInt::zero(), BigInt::zero());
        for (&e, c) in &self.terms {
            j.d0 += c;
            j.d1 += c * e;
            j.d2 += c * e * (e - 1);
        }
        j
    }

    /// True when `p(t) = p(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Coefficients as `(exponent, value)` pairs, ascending.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c.clone())).collect()
    }

    /// Writes the polynomial with a custom rendering of `t^e`.
    pub(crate) fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        var: impl Fn(i64) -> Option<String>,
    ) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let body = match var(e) {
                None => mag.to_string(),
                Some(v) if mag.is_one() => v,
                Some(v) => format!("{mag}*{v}"),
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, |e| match e {
            0 => None,
            1 => Some("t".into()),
            e => Some(format!("t^{e}")),
        })
    }
}

impl FromStr for LaurentPolynomial {
    type Err = PolyParseError;

    /// Parses the text form written by `Display`, e.g. `t - 1 + t^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError("empty input".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let err = || PolyParseError(s.to_string());
        let bytes: Vec<char> = compact.chars().collect();
        let mut out = Self::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i] != '+' && !(bytes[i] == '-' && i > start && bytes[i - 1] != '^') {
                i += 1;
            }
            let term: String = bytes[start..i].iter().collect();
            if term.is_empty() {
                return Err(err());
            }
            let (coeff, exp) = match term.split_once('t') {
                None => (term.parse::<BigInt>().map_err(|_| err())?, 0),
                Some((c, rest)) => {
                    let coeff = match c {
                        "" => BigInt::one(),
                        _ => c.strip_suffix('*').ok_or_else(err)?.parse::<BigInt>().map_err(|_| err())?,
                    };
                    let exp = match rest {
                        "" => 1,
                        _ => rest.strip_prefix('^').ok_or_else(err)?.parse::<i64>().map_err(|_| err())?,
                    };
                    (coeff, exp)
                }
            };
            out.add_term(exp, sign * coeff);
        }
        Ok(out)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Serializes a big integer as a JSON number when it is exactly
/// representable in a double, and as a decimal string otherwise.
pub fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    const SAFE: i64 = 1 << 53;
    match c.to_i64() {
        Some(v) if v.abs() <= SAFE => serde_json::Value::from(v),
        _ => serde_json::Value::String(c.to_string()),
    }
}

pub fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trefoil() -> LaurentPolynomial {
        LaurentPolynomial::from_terms([(1, 1), (0, -1), (-1, 1)])
    }

    #[test]
    fn display_format() {
        assert_eq!(trefoil().to_string(), "t - 1 + t^-1");
        let fig8 = LaurentPolynomial::from_terms([(1, -1), (0, 3), (-1, -1)]);
        assert_eq!(fig8.to_string(), "-t + 3 - t^-1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(LaurentPolynomial::from_terms([(2, 2), (-3, -5)]).to_string(), "2*t^2 - 5*t^-3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["t - 1 + t^-1", "-t + 3 - t^-1", "1", "0", "2*t^2 - 5*t^-3", "-7"] {
            let p: LaurentPolynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("t - 1 + t^-1".parse::<LaurentPolynomial>().unwrap(), trefoil());
        assert!("".parse::<LaurentPolynomial>().is_err());
        assert!("t^".parse::<LaurentPolynomial>().is_err());
        assert!("3x".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn arithmetic() {
        let t = trefoil();
        let sq = &t * &t;
        assert_eq!(sq, LaurentPolynomial::from_terms([(2, 1), (1, -2), (0, 3), (-1, -2), (-2, 1)]));
        assert!((&t - &t).is_zero());
        assert_eq!(t.eval_at_one(), BigInt::one());
        assert!(t.is_symmetric());
        assert_eq!(t.shift(1), LaurentPolynomial::from_terms([(2, 1), (1, -1), (0, 1)]));
        assert_eq!(t.pow(2), sq);
    }

    #[test]
    fn second_derivative_gives_casson() {
        // t - 1 + 1/t has second derivative 2 at t = 1
        assert_eq!(trefoil().jet_at_one().d2, BigInt::from(2));
    }

    #[test]
    fn json_numbers() {
        assert_eq!(bigint_to_json(&BigInt::from(5)), serde_json::json!(5));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(bigint_to_json(&big), serde_json::json!("123456789012345678901234567890"));
        assert_eq!(bigint_from_json(&bigint_to_json(&big)), Some(big));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        proptest::collection::vec((-4i64..5, -6i64..7), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            let back: LaurentPolynomial = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn product_jets_follow_leibniz(a in arb_poly(), b in arb_poly()) {
            let (ja, jb) = (a.jet_at_one(), b.jet_at_one());
            prop_assert_eq!((&a * &b).jet_at_one(), ja.mul(&jb));
        }
    }
}
