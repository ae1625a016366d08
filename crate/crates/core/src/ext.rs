//! Exact extended nonnegative rationals.
//!
//! [`ExtRational`] is either a finite nonnegative rational (always kept in
//! lowest terms by `num-rational`) or the absorbing top element `inf`.
//! Suprema, infima, sums and midpoints never leave the type, which is all
//! the function-space machinery needs.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build a rational from a numerator and a positive denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p`, `p/q` or a decimal-free integer into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Render a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// How `0 * inf` is resolved when scaling.
///
/// `Upper` keeps multiplication continuous for the upper topology
/// (`0 * inf = 0`), `Lower` for the lower topology (`0 * inf = inf`).
/// `Interval` admits no continuous extension, so the ambiguous products
/// are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Upper,
    Lower,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn inf() -> Self {
        ExtRational::Infinite
    }

    /// A finite value; negative inputs are rejected.
    pub fn finite(r: Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidRational(format_rational(&r)));
        }
        Ok(ExtRational::Finite(r))
    }

    pub fn from_int(n: u64) -> Self {
        ExtRational::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: u64, den: u64) -> Self {
        ExtRational::Finite(rat(num as i64, den as i64))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Midpoint of two finite values; `None` if either is infinite.
    pub fn midpoint(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => {
                Some(ExtRational::Finite((a + b) / Rational::from_integer(2.into())))
            }
            _ => None,
        }
    }

    /// Scale by a nonnegative extended scalar under the given convention.
    pub fn scale(&self, scalar: &ExtRational, mode: ScalarMode) -> Result<Self> {
        use ExtRational::*;
        match (scalar, self) {
            (Finite(s), Finite(v)) => Ok(Finite(s * v)),
            (Infinite, Finite(v)) | (Finite(v), Infinite) if v.is_zero() => match mode {
                ScalarMode::Upper => Ok(ExtRational::zero()),
                ScalarMode::Lower => Ok(Infinite),
                ScalarMode::Interval => Err(Error::UndefinedProduct(format!("{scalar} * {self}"))),
            },
            (Infinite, _) if mode == ScalarMode::Interval => Err(Error::UndefinedProduct(format!("{scalar} * {self}"))),
            _ => Ok(Infinite),
        }
    }

    /// Truncated subtraction on finite values, `inf - r = inf`.
    pub fn saturating_sub(&self, r: &Rational) -> Self {
        match self {
            ExtRational::Finite(v) => {
                let d = v - r;
                if d.is_negative() {
                    ExtRational::zero()
                } else {
                    ExtRational::Finite(d)
                }
            }
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        debug_assert!(!r.is_negative());
        ExtRational::Finite(r)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a ExtRational> for &'a ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        }
    }
}

impl Sum for ExtRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtRational::zero(), |acc, v| acc + v)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => f.write_str(&format_rational(r)),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(ExtRational::Infinite);
        }
        ExtRational::finite(parse_rational(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    #[test]
    fn infinity_absorbs_addition() {
        assert_eq!(v("3/4") + ExtRational::inf(), ExtRational::inf());
        assert_eq!(ExtRational::inf() + ExtRational::zero(), ExtRational::inf());
        assert_eq!(v("1/2") + v("1/3"), v("5/6"));
    }

    #[test]
    fn parsing_normalizes_to_lowest_terms() {
        assert_eq!(v("2/4").to_string(), "1/2");
        assert_eq!(v("6/3").to_string(), "2");
        assert_eq!(v("inf").to_string(), "inf");
        assert!("-1".parse::<ExtRational>().is_err());
        assert!("1/0".parse::<ExtRational>().is_err());
        assert!("x".parse::<ExtRational>().is_err());
    }

    #[test]
    fn ordering_puts_infinity_on_top() {
        assert!(v("1000") < ExtRational::inf());
        assert!(v("1/3") < v("1/2"));
        assert_eq!(v("0").max(v("inf")), ExtRational::inf());
    }

    #[test]
    fn scalar_modes_resolve_zero_times_infinity() {
        let zero = ExtRational::zero();
        let inf = ExtRational::inf();
        assert_eq!(inf.scale(&zero, ScalarMode::Upper).unwrap(), zero);
        assert_eq!(inf.scale(&zero, ScalarMode::Lower).unwrap(), inf);
        assert!(inf.scale(&zero, ScalarMode::Interval).is_err());
        assert!(v("2").scale(&inf, ScalarMode::Interval).is_err());
        assert_eq!(v("2").scale(&v("3/2"), ScalarMode::Interval).unwrap(), v("3"));
        assert_eq!(v("2").scale(&inf, ScalarMode::Upper).unwrap(), inf);
    }

    #[test]
    fn midpoint_and_truncated_subtraction() {
        assert_eq!(v("4").midpoint(&v("2")), Some(v("3")));
        assert_eq!(v("inf").midpoint(&v("2")), None);
        assert_eq!(v("1/4").saturating_sub(&rat(1, 2)), v("0"));
        assert_eq!(v("inf").saturating_sub(&rat(1, 2)), v("inf"));
    }
}
