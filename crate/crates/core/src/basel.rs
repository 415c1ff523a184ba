//! Exact evaluation of `sum 1/k^2` and its accelerated central form.
//!
//! The shift identity of the symmetric recurrence telescopes `1/k^2` into
//! rising-product terms plus a remainder, and summing the telescoped terms
//! rearranges the series into `sum 1/k^2 = 3 sum ((k-1)!)^2 / (2k)!`. The
//! accelerated terms shrink geometrically (ratio below 1/4), so thirty of
//! them already pin the limit to a dozen decimal digits, while the raw
//! series needs a thousand terms for six. Everything here is exact; decimal
//! strings are produced at a requested number of significant digits with
//! round-half-even.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{factorial, Rational};

/// Significant digits used for the tallies' decimal rendering.
pub const DECIMAL_DIGITS: usize = 30;

/// Result of an exact partial summation.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTally {
    /// Number of terms summed.
    pub terms_used: usize,
    /// The partial sum, exact.
    pub exact_sum: Rational,
    /// `exact_sum` rendered to [`DECIMAL_DIGITS`] significant digits.
    pub decimal_value: String,
}

impl SeriesTally {
    fn new(terms_used: usize, exact_sum: Rational) -> Self {
        let decimal_value = decimal_string(&exact_sum, DECIMAL_DIGITS);
        SeriesTally {
            terms_used,
            exact_sum,
            decimal_value,
        }
    }
}

/// `sum_{k=1..=n} 1/k^2`, exact. `n >= 1`.
pub fn basel_partial_sum(n: usize) -> SeriesTally {
    assert!(n >= 1, "at least one term");
    let mut sum = Rational::zero();
    for k in 1..=n as u64 {
        sum += Rational::new(BigInt::one(), BigInt::from(k) * BigInt::from(k));
    }
    SeriesTally::new(n, sum)
}

/// One term of the accelerated series: `((k-1)!)^2 / (2k)!` for `k >= 1`.
pub fn central_term(k: u64) -> Rational {
    assert!(k >= 1, "terms start at k = 1");
    let f = factorial(k - 1);
    Rational::new(&f * &f, factorial(2 * k))
}

/// `sum_{k=1..=n} ((k-1)!)^2 / (2k)!`, exact. `n >= 1`.
pub fn central_partial_sum(n: usize) -> SeriesTally {
    assert!(n >= 1, "at least one term");
    let mut sum = Rational::zero();
    for k in 1..=n as u64 {
        sum += central_term(k);
    }
    SeriesTally::new(n, sum)
}

/// The telescoping remainder `r_{k,l} = l! / (k^2 (k+1) (k+2) ... (k+l))`.
/// `l = 0` gives back `1/k^2`.
pub fn remainder(k: u64, l: u64) -> Rational {
    assert!(k >= 1, "k starts at 1");
    let mut den = BigInt::from(k) * BigInt::from(k);
    for i in 1..=l {
        den *= BigInt::from(k + i);
    }
    Rational::new(factorial(l), den)
}

/// Verifies, exactly, the telescoped form of one series term:
/// `1/k^2 = sum_{l=1..=k} (l-1)!/(k (k+1) ... (k+l)) + r_{k,k}`.
pub fn telescoping_identity_check(k: u64) -> bool {
    assert!(k >= 1, "k starts at 1");
    let mut sum = remainder(k, k);
    for l in 1..=k {
        let mut den = BigInt::from(k);
        for i in 1..=l {
            den *= BigInt::from(k + i);
        }
        sum += Rational::new(factorial(l - 1), den);
    }
    sum == remainder(k, 0)
}

/// The accelerated estimate `3 * central_partial_sum(n)`, exact.
pub fn factor_three_partial_check(n: usize) -> Rational {
    central_partial_sum(n).exact_sum * Rational::from_integer(BigInt::from(3))
}

/// 50 decimal places of pi: standard digits (OEIS A000796), stored scaled
/// by 10^50.
const PI_SCALED_DIGITS: &str = "314159265358979323846264338327950288419716939937510";

/// The reference value of pi as an exact rational, accurate to 5e-51.
pub fn pi_reference() -> Rational {
    let numer: BigInt = PI_SCALED_DIGITS.parse().expect("constant digits parse");
    Rational::new(numer, BigInt::from(10).pow(50))
}

/// `pi^2 / 6` built from [`pi_reference`], accurate to about 1e-50.
pub fn pi_squared_over_six() -> Rational {
    let pi = pi_reference();
    &pi * &pi / Rational::from_integer(BigInt::from(6))
}

/// Decimal rendering of the accelerated estimate after `n` terms.
pub fn pi_squared_over_six_estimate(n: usize) -> String {
    decimal_string(&factor_three_partial_check(n), DECIMAL_DIGITS)
}

/// True if `p/q >= 10^e` for positive `p`, `q`.
fn ge_pow10(p: &BigInt, q: &BigInt, e: i64) -> bool {
    if e >= 0 {
        *p >= q * BigInt::from(10).pow(e as u32)
    } else {
        p * BigInt::from(10).pow((-e) as u32) >= *q
    }
}

/// Renders `r` in positional decimal notation with `sig_digits` significant
/// digits, rounding half to even. No exponent notation is used: values are
/// padded with zeros as needed on either side of the point.
pub fn decimal_string(r: &Rational, sig_digits: usize) -> String {
    assert!(sig_digits >= 1, "at least one digit");
    if r.is_zero() {
        return "0".to_string();
    }
    let p = r.numer().abs();
    let q = r.denom().clone();
    // decimal exponent: 10^e <= |r| < 10^{e+1}
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    while !ge_pow10(&p, &q, e) {
        e -= 1;
    }
    while ge_pow10(&p, &q, e + 1) {
        e += 1;
    }
    // scale so the rounded integer has exactly sig_digits digits
    let shift = sig_digits as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&p * BigInt::from(10).pow(shift as u32), q)
    } else {
        (p, &q * BigInt::from(10).pow((-shift) as u32))
    };
    let mut n = &num / &den;
    let rem = &num - &n * &den;
    let twice = &rem * BigInt::from(2);
    if twice > den || (twice == den && n.clone() % BigInt::from(2) == BigInt::one()) {
        n += BigInt::one();
    }
    if n == BigInt::from(10).pow(sig_digits as u32) {
        n = BigInt::from(10).pow(sig_digits as u32 - 1);
        e += 1;
    }
    let digits = n.to_string();
    debug_assert_eq!(digits.len(), sig_digits);
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    if e >= sig_digits as i64 - 1 {
        out.push_str(&digits);
        for _ in 0..e - (sig_digits as i64 - 1) {
            out.push('0');
        }
    } else if e >= 0 {
        let split = (e + 1) as usize;
        out.push_str(&digits[..split]);
        out.push('.');
        out.push_str(&digits[split..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}
