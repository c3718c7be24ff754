//! Exact rationals. Backed by `num_rational::BigRational`, which keeps values
//! in lowest terms with a positive denominator.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer (`-3`) or a fraction (`7/8`, `-1/2`). Surrounding
/// whitespace is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let err = || Error::ParseRational(trimmed.to_string());
    if trimmed.is_empty() {
        return Err(err());
    }
    match trimmed.split_once('/') {
        None => BigInt::from_str(trimmed).map(Rational::from_integer).map_err(|_| err()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `p/q`, or just `p` for integers.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Raises `base` to a small non-negative power.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
