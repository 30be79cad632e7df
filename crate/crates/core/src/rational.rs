use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use thiserror::Error;

/// An exact fraction, always held in lowest terms with a positive denominator.
///
/// Arithmetic is checked: an `i128` overflow panics instead of wrapping. Parsed
/// inputs are limited to the `i64` range, which keeps every quantity the game
/// produces comfortably inside `i128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i128>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational")]
    Empty,
    #[error("invalid integer in rational: {0:?}")]
    InvalidInteger(alloc::string::String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Returns `None` when `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Option<Self> {
        if denom == 0 {
            None
        } else {
            Some(Rational(Ratio::new(numer, denom)))
        }
    }

    pub fn integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    /// `numer / denom`, panicking on a zero denominator. For literals.
    pub fn frac(numer: i128, denom: i128) -> Self {
        Self::new(numer, denom).expect("zero denominator")
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True for values in the closed unit interval.
    pub fn is_probability(&self) -> bool {
        !self.is_negative() && *self <= Self::ONE
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Decimal rendering rounded half away from zero to `places` digits.
    pub fn to_decimal_string(&self, places: usize) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;

        let negative = self.is_negative();
        let numer = self.numer().unsigned_abs();
        let denom = self.denom().unsigned_abs();
        let scale = 10u128
            .checked_pow(places as u32)
            .expect("decimal precision too large");
        let scaled = numer
            .checked_mul(scale)
            .and_then(|v| v.checked_add(denom / 2))
            .expect("rational overflow in decimal rendering")
            / denom;
        let (int_part, frac_part) = (scaled / scale, scaled % scale);
        let mut out = String::new();
        if negative && scaled != 0 {
            out.push('-');
        }
        let _ = write!(out, "{int_part}");
        if places > 0 {
            let _ = write!(out, ".{frac_part:0places$}");
        }
        out
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_sub(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        self.0.checked_div(&rhs.0).map(Rational)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Self::integer(value.into())
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("rational overflow")
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("rational overflow")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("rational overflow")
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational");
        self.checked_div(&rhs).expect("rational overflow")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> core::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// `a/b` in lowest terms, or just `a` when the denominator is one.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `a/b` or `a`, with `a` and `b` in the `i64` range.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let parse = |part: &str| {
            part.parse::<i64>()
                .map_err(|_| ParseRationalError::InvalidInteger(part.into()))
        };
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (parse(n)?, parse(d)?),
            None => (parse(s)?, 1),
        };
        Rational::new(numer.into(), denom.into()).ok_or(ParseRationalError::ZeroDenominator)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <alloc::string::String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::frac(6, -8);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 4);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::frac(4, 2).to_string(), "2");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::frac(3, 4));
        assert_eq!("2/6".parse::<Rational>().unwrap(), Rational::frac(1, 3));
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::ONE);
        assert_eq!("-1/2".parse::<Rational>().unwrap(), Rational::frac(-1, 2));
        assert_eq!("1/0".parse::<Rational>(), Err(ParseRationalError::ZeroDenominator));
        assert_eq!("".parse::<Rational>(), Err(ParseRationalError::Empty));
        assert!("0.5".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!(" 1/2".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering_rounds() {
        assert_eq!(Rational::frac(2, 3).to_decimal_string(9), "0.666666667");
        assert_eq!(Rational::frac(1, 3).to_decimal_string(9), "0.333333333");
        assert_eq!(Rational::ONE.to_decimal_string(3), "1.000");
        assert_eq!(Rational::frac(-1, 8).to_decimal_string(2), "-0.13");
        assert_eq!(Rational::frac(5, 4).to_decimal_string(0), "1");
    }

    #[test]
    fn unit_interval() {
        assert!(Rational::ZERO.is_probability());
        assert!(Rational::ONE.is_probability());
        assert!(!Rational::frac(5, 4).is_probability());
        assert!(!Rational::frac(-1, 4).is_probability());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let r = Rational::frac(n.into(), d.into());
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }

        #[test]
        fn field_identities(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Rational::frac(a.into(), b.into());
            let y = Rational::frac(c.into(), d.into());
            prop_assert_eq!(x + y - y, x);
            prop_assert_eq!(x * y, y * x);
            if !y.is_zero() {
                prop_assert_eq!(x / y * y, x);
            }
            prop_assert!(x.denom() > 0);
        }
    }
}
