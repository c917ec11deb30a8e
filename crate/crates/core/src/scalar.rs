//! Scalar fields for the linear algebra and matrix code.
//!
//! The exact code paths (cohomology reconstruction, ping-pong certificates)
//! are instantiated with [`BigRational`]; the floating point instances exist
//! for quick exploratory runs and use a tolerance for zero tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field usable by the generic algorithms.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Zero test used for pivoting. Exact for rational types.
    fn is_negligible(&self) -> bool;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Whether the arithmetic is exact. Rank and kernel results over an
    /// inexact field are only as trustworthy as the tolerance.
    const EXACT: bool;
}

/// An ordered field, needed for trace comparisons and circle orderings.
pub trait OrderedField: Field + PartialOrd {
    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// A square root inside the field, when one exists. Floating point
    /// types always return one for nonnegative input.
    fn try_sqrt(&self) -> Option<Self>;
}

fn exact_sqrt_bigint(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    const EXACT: bool = true;
}
impl OrderedField for BigRational {
    fn try_sqrt(&self) -> Option<Self> {
        let n = exact_sqrt_bigint(self.numer())?;
        let d = exact_sqrt_bigint(self.denom())?;
        Some(BigRational::new(n, d))
    }
}

impl Field for Ratio<i64> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.to_i64().expect("integer does not fit in i64"))
    }
    const EXACT: bool = true;
}
impl OrderedField for Ratio<i64> {
    fn try_sqrt(&self) -> Option<Self> {
        let root = |n: i64| {
            if n < 0 {
                return None;
            }
            let r = n.sqrt();
            (r * r == n).then_some(r)
        };
        Some(Ratio::new(root(*self.numer())?, root(*self.denom())?))
    }
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    const EXACT: bool = false;
}
impl OrderedField for f64 {
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Field for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
    const EXACT: bool = false;
}
impl OrderedField for f32 {
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
