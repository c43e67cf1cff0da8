//! Numeric modes.
//!
//! Every geometric type is generic over a [`Scalar`]. [`Rational`] gives
//! exact arithmetic (no L2 pieces, since their distances are irrational in
//! general); `f64` covers every piece model and compares with a fixed
//! absolute tolerance of [`FLOAT_TOLERANCE`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used in exact mode.
pub type Rational = num_rational::BigRational;

/// Absolute tolerance for point and distance comparisons in float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Exact,
    Float,
}

impl Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Exact => f.write_str("exact"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for NumericMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(NumericMode::Exact),
            "float" => Ok(NumericMode::Float),
            other => Err(format!("unknown numeric mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` as a scalar")]
pub struct ParseScalarError {
    pub input: String,
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: NumericMode;

    fn zero() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(value: &Rational) -> Self;
    fn abs(&self) -> Self;
    /// Square root when representable in this mode.
    fn sqrt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Exact value, when the scalar carries one.
    fn to_rational(&self) -> Option<Rational>;
    fn parse_decimal(s: &str) -> Result<Self, ParseScalarError>;
    fn to_decimal_string(&self) -> String;

    /// Equality in the mode's sense: exact for rationals, within
    /// [`FLOAT_TOLERANCE`] for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn is_negligible(&self) -> bool {
        self.approx_eq(&Self::zero())
    }

    /// `self <= other` up to the mode's tolerance.
    fn approx_le(&self, other: &Self) -> bool {
        self <= other || self.approx_eq(other)
    }

    /// `self < other` beyond the mode's tolerance.
    fn definitely_lt(&self, other: &Self) -> bool {
        self < other && !self.approx_eq(other)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &num * &num == *self.numer() && &den * &den == *self.denom() {
            Some(Rational::new(num, den))
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn parse_decimal(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s).ok_or_else(|| ParseScalarError { input: s.to_owned() })
    }

    fn to_decimal_string(&self) -> String {
        format_rational(self)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn zero() -> Self {
        0.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn parse_decimal(s: &str) -> Result<Self, ParseScalarError> {
        let t = s.trim();
        if let Some(r) = parse_rational(t) {
            return Ok(Scalar::from_rational(&r));
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseScalarError { input: s.to_owned() })
    }

    fn to_decimal_string(&self) -> String {
        let v = if *self == 0.0 { 0.0 } else { *self };
        format!("{v}")
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }
}

/// Parses `p/q` or a plain decimal such as `-1.25` or `.5`, with an
/// optional exponent (`1.5e-3`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Terminating decimal when the reduced denominator is `2^a 5^b`,
/// otherwise `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer();
    let negative = digits.is_negative();
    let mut s = digits.abs().to_string();
    if s.len() <= places {
        s = format!("{}{}", "0".repeat(places + 1 - s.len()), s);
    }
    let (int_part, frac_part) = s.split_at(s.len() - places);
    format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac_part)
}

/// Lowest common multiple of the denominators of `values`.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("1.5"), Some(q(3, 2)));
        assert_eq!(parse_rational("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1.5e2"), Some(q(150, 1)));
        assert_eq!(parse_rational("2e-1"), Some(q(1, 5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn formats_terminating_and_repeating() {
        assert_eq!(format_rational(&q(9, 2)), "4.5");
        assert_eq!(format_rational(&q(-1, 8)), "-0.125");
        assert_eq!(format_rational(&q(1, 3)), "1/3");
        assert_eq!(format_rational(&q(12, 1)), "12");
        assert_eq!(format_rational(&q(1, 20)), "0.05");
    }

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(Scalar::sqrt(&q(25, 4)), Some(q(5, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
    }

    #[test]
    fn float_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 5e-10)));
        assert!(!1.0f64.approx_eq(&(1.0 + 5e-9)));
        assert!(1.0f64.approx_le(&(1.0 - 5e-10)));
        assert!(!1.0f64.definitely_lt(&(1.0 + 5e-10)));
    }

    #[test]
    fn lcm_of_denominators_works() {
        let vals = [q(1, 4), q(1, 6), q(3, 1)];
        assert_eq!(lcm_of_denominators(vals.iter()), BigInt::from(12));
    }

    proptest::proptest! {
        #[test]
        fn decimal_round_trip(n in -100_000i64..100_000, e in 0u32..6) {
            let r = q(n, 2i64.pow(e) * 5i64.pow(e / 2));
            let s = format_rational(&r);
            proptest::prop_assert_eq!(parse_rational(&s), Some(r));
        }
    }
}
