//! Exact integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient. Zero whenever `k < 0` or `k > n` (also for `n < 0`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(sum parts)! / prod(parts!)`; zero if any part is negative.
pub fn multinomial(parts: &[i64]) -> BigInt {
    if parts.iter().any(|&p| p < 0) {
        return BigInt::zero();
    }
    let mut total = 0;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Converts a rational known to be integral; fails loudly otherwise.
pub fn to_integer(value: &Rational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Internal(format!("{what} evaluated to the non-integer {value}")))
    }
}

/// Canonical decimal rendering: `p` or `p/q` with `q > 0` in lowest terms.
pub fn rational_string(value: &Rational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
