//! Arbitrary-precision rational scalars and small exact-arithmetic helpers.
//!
//! Every exact computation in this crate runs over [`Rational`]. Values are
//! always fully reduced with a positive denominator; that normalization is
//! inherited from `num_rational::BigRational` and preserved by every
//! operation, so equality is plain structural equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rat: zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The four field operations, for the checked dispatcher below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies one field operation, reporting division by zero as an error.
pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational> {
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Sub => Ok(a - b),
        RatOp::Mul => Ok(a * b),
        RatOp::Div => {
            if b.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(a / b)
            }
        }
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// The rising product `k (k+1) ... (k+l)`, with `l + 1` factors. Panics if `k == 0`.
pub fn rising_product(k: u64, l: u64) -> BigInt {
    assert!(k >= 1, "rising_product: k must be positive");
    let mut acc = BigInt::one();
    for i in k..=k + l {
        acc *= BigInt::from(i);
    }
    acc
}

/// Canonical text form `numerator/denominator`, denominator always present
/// and positive, any sign on the numerator. Zero renders as `0/1`.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a plain integer, normalizing sign and common factors.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(Error::InvalidRational(s.to_string()));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// True if `r` is strictly negative.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
