//! Scalar field abstraction: exact rationals by default, `f64` for sweeps
//! where rounding is acceptable.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Relative factor of the approximate-mode tolerance.
pub const APPROX_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Default zero threshold for data whose entries are bounded by `max_abs`.
pub fn default_tolerance(max_abs: f64) -> f64 {
    APPROX_RELATIVE_TOLERANCE * (1.0 + max_abs)
}

/// A field element usable as a structure constant.
///
/// Exact implementations ignore tolerances entirely; approximate ones treat
/// anything within the tolerance as zero.
pub trait Scalar: Num + Signed + Clone + Debug + PartialOrd + Send + Sync + 'static {
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn is_negligible(&self, tol: f64) -> bool;

    /// Square root if it exists in this field.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Serializable form: `"p/q"` strings for rationals, numbers for floats.
    fn to_json(&self) -> serde_json::Value;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&rat(n, d))
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let s = v.sqrt();
    (&s * &s == *v).then_some(s)
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Canonical text form: reduced `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest absolute value in a collection, as `f64`.
pub fn max_abs<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> f64 {
    values
        .into_iter()
        .map(|v| v.to_f64().abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-8, 4)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rat(9, 25).sqrt_checked(), Some(rat(3, 5)));
        assert_eq!(rat(2, 1).sqrt_checked(), None);
        assert_eq!(rat(-1, 4).sqrt_checked(), None);
        assert_eq!(Rational::zero().sqrt_checked(), Some(Rational::zero()));
        assert_eq!(4.0f64.sqrt_checked(), Some(2.0));
    }

    #[test]
    fn negligibility() {
        assert!(!rat(1, 1_000_000_000).is_negligible(1.0));
        assert!(1e-12f64.is_negligible(default_tolerance(1.0)));
        assert!(!1e-6f64.is_negligible(default_tolerance(1.0)));
    }
}
