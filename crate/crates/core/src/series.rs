//! Truncated formal power series over an exact (or floating) scalar.
//!
//! A [`PowerSeries`] stores the coefficients of `x^0 ..= x^n` for its
//! truncation order `n`. Coefficients beyond the truncation order are
//! *unknown*, not zero, so every operation returns the smallest truncation
//! order its inputs actually determine: elementwise for sums, the minimum of
//! the input orders for products and composition. Constructors accept
//! explicitly padded coefficient vectors when higher-order terms are known to
//! be true zeros (for instance when a polynomial is viewed as a series).
//!
//! A series also carries a [`Parity`] flag. `Even`/`Odd` promise that the
//! banned coefficients are exact zeros; the flag propagates through the
//! algebra and lets callers assert structural facts (a symmetric scheme's
//! multiplier has only even powers) without rescanning coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_fraction_string, Rational};
use crate::Scalar;

/// Parity promise for the coefficient pattern of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// No promise.
    Any,
    /// All odd-index coefficients are zero.
    Even,
    /// All even-index coefficients (including the constant) are zero.
    Odd,
}

impl Parity {
    fn flip(self) -> Parity {
        match self {
            Parity::Any => Parity::Any,
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn of_sum(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Any
        }
    }

    fn of_product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Even, Parity::Even) | (Parity::Odd, Parity::Odd) => Parity::Even,
            (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => Parity::Odd,
            _ => Parity::Any,
        }
    }

    /// Parity of `outer(inner)` given the parities of the two series.
    fn of_composition(outer: Parity, inner: Parity) -> Parity {
        match inner {
            Parity::Odd => outer,
            Parity::Even => Parity::Even,
            Parity::Any => Parity::Any,
        }
    }

    fn shifted(self, m: usize) -> Parity {
        if m.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }

    fn allows(self, index: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => index.is_multiple_of(2),
            Parity::Odd => index % 2 == 1,
        }
    }
}

/// Formal power series truncated at a known order.
#[derive(Debug, Clone)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
    parity: Parity,
}

/// Equality compares coefficients (and hence truncation orders) only; the
/// parity flag is bookkeeping, not data.
impl<T: PartialEq> PartialEq for PowerSeries<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Scalar> PowerSeries<T> {
    /// Wraps a coefficient vector (index = power), checking the parity claim.
    /// `coeffs.len()` must be at least 1; the truncation order is `len - 1`.
    pub fn new(coeffs: Vec<T>, parity: Parity) -> Result<Self> {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant coefficient"
        );
        for (index, c) in coeffs.iter().enumerate() {
            if !parity.allows(index) && !c.is_zero() {
                return Err(Error::ParityViolation { index });
            }
        }
        Ok(PowerSeries { coeffs, parity })
    }

    /// Wraps a coefficient vector with no parity promise.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant coefficient"
        );
        PowerSeries {
            coeffs,
            parity: Parity::Any,
        }
    }

    /// The constant series `c` known through `x^order`.
    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        PowerSeries {
            coeffs,
            parity: Parity::Any,
        }
    }

    /// The zero series known through `x^order`.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
            parity: Parity::Any,
        }
    }

    /// The unit series known through `x^order`.
    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series `x` known through `x^order`. Panics if `order == 0`.
    pub fn identity(order: usize) -> Self {
        assert!(
            order >= 1,
            "the identity series needs truncation order >= 1"
        );
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[1] = T::one();
        PowerSeries {
            coeffs,
            parity: Parity::Odd,
        }
    }

    /// Highest power whose coefficient is known.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All known coefficients, index = power.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The parity promise attached to this series.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Coefficient of `x^n`. Panics beyond the truncation order: those
    /// coefficients are unknown, not zero.
    pub fn coeff(&self, n: usize) -> &T {
        assert!(
            n < self.coeffs.len(),
            "coefficient {n} is beyond truncation order {}",
            self.coeffs.len() - 1
        );
        &self.coeffs[n]
    }

    /// Forgets coefficients above `order`. Panics if `order` exceeds the
    /// current truncation order (unknown coefficients cannot be invented).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.truncation_order(),
            "cannot extend truncation order {} to {order}",
            self.truncation_order()
        );
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            parity: self.parity,
        }
    }

    /// Maps each coefficient. `f` must send zero to zero, otherwise the
    /// retained parity promise would be wrong.
    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> PowerSeries<U> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            parity: self.parity,
        }
    }

    /// True if every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum, truncated at the shorter input.
    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.truncation_order().min(rhs.truncation_order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
            .collect();
        PowerSeries {
            coeffs,
            parity: self.parity.of_sum(rhs.parity),
        }
    }

    /// Difference, truncated at the shorter input.
    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.truncation_order().min(rhs.truncation_order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
            .collect();
        PowerSeries {
            coeffs,
            parity: self.parity.of_sum(rhs.parity),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            parity: self.parity,
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &T) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            parity: self.parity,
        }
    }

    /// Cauchy product, truncated at the shorter input.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.truncation_order().min(rhs.truncation_order());
        let mut coeffs = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] =
                    coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        PowerSeries {
            coeffs,
            parity: self.parity.of_product(rhs.parity),
        }
    }

    /// Substitutes `inner` for the variable. `inner` must have zero constant
    /// term; the result is truncated at the shorter input, since coefficients
    /// of the composite beyond `inner`'s order depend on unknown data.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let n = self.truncation_order().min(inner.truncation_order());
        let inner_cut = inner.truncate(n);
        // Horner from the top coefficient down; outer coefficients beyond n
        // only feed powers x^{>n} because inner has positive valuation.
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner_cut);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        acc.parity = Parity::of_composition(self.parity, inner.parity);
        Ok(acc)
    }

    /// Multiplicative inverse. Requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.truncation_order();
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = T::one() / self.coeffs[0].clone();
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                acc = acc + self.coeffs[k].clone() * inv[m - k].clone();
            }
            inv[m] = -(acc / self.coeffs[0].clone());
        }
        Ok(PowerSeries {
            coeffs: inv,
            parity: if self.parity == Parity::Even {
                Parity::Even
            } else {
                Parity::Any
            },
        })
    }

    /// Compositional inverse: the series `r` with `r(self(x)) = x`. Requires
    /// zero constant term and nonzero linear term. For formal series that
    /// left inverse is also the right inverse, which the tests verify
    /// directly by composing in both orders.
    pub fn revert(&self) -> Result<Self> {
        let n = self.truncation_order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotRevertible);
        }
        // powers[k] holds self^k; its x^m coefficient is the m-th entry of a
        // lower-triangular system with diagonal (linear term)^k.
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(Self::one(n));
        for _ in 1..=n {
            let next = powers.last().unwrap().mul(self);
            powers.push(next);
        }
        let mut rev = vec![T::zero(); n + 1];
        for m in 1..=n {
            let mut acc = if m == 1 { T::one() } else { T::zero() };
            for k in 1..m {
                acc = acc - rev[k].clone() * powers[k].coeffs[m].clone();
            }
            rev[m] = acc / powers[m].coeffs[m].clone();
        }
        Ok(PowerSeries {
            coeffs: rev,
            parity: if self.parity == Parity::Odd {
                Parity::Odd
            } else {
                Parity::Any
            },
        })
    }

    /// Divides by `x^m`, checking that the low-order coefficients really
    /// vanish. The truncation order drops by `m`.
    pub fn shift_divide(&self, m: usize) -> Result<Self> {
        assert!(
            m <= self.truncation_order(),
            "shift exceeds truncation order"
        );
        for (index, c) in self.coeffs[..m].iter().enumerate() {
            if !c.is_zero() {
                return Err(Error::ShiftRemainder { index });
            }
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[m..].to_vec(),
            parity: self.parity.shifted(m),
        })
    }

    /// Multiplies by `x^m`. The truncation order grows by `m`, since every
    /// new coefficient is determined by a known one.
    pub fn shift_multiply(&self, m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries {
            coeffs,
            parity: self.parity.shifted(m),
        }
    }

    /// Substitutes `c * x` for the variable: coefficient `n` picks up `c^n`.
    pub fn scale_variable(&self, c: &T) -> Self {
        let mut pow = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let scaled = a.clone() * pow.clone();
                pow = pow.clone() * c.clone();
                scaled
            })
            .collect();
        PowerSeries {
            coeffs,
            parity: self.parity,
        }
    }

    /// Evaluates the truncated series as a polynomial in `x` by Horner's rule.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

/// Serialization shape for an exact series: the truncation order plus one
/// canonical `num/den` string per coefficient, index = power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub truncation_order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesJson {
    pub fn from_series(s: &PowerSeries<Rational>) -> Self {
        SeriesJson {
            truncation_order: s.truncation_order(),
            coeffs: s.coeffs().iter().map(to_fraction_string).collect(),
        }
    }

    pub fn to_series(&self) -> Result<PowerSeries<Rational>> {
        if self.coeffs.len() != self.truncation_order + 1 {
            return Err(Error::SeriesShape(
                "coefficient count does not match truncation_order",
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries::from_coeffs(coeffs))
    }
}
