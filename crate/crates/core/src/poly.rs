//! Dense univariate polynomials, used for stencil weights and for the
//! Chebyshev recurrence where degrees are exact data rather than truncation
//! artifacts.

use crate::series::PowerSeries;
use crate::Scalar;

/// Polynomial with coefficients indexed by power. Invariant: the highest
/// stored coefficient is nonzero; the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Wraps a coefficient vector, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero beyond the degree (a polynomial, unlike a
    /// truncated series, knows all its coefficients).
    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }

    /// Substitutes `inner` for the variable (exact, no truncation).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// Views the polynomial as a series truncated at `order`. Coefficients up
    /// to `order` beyond the degree are true zeros; coefficients of the
    /// polynomial above `order`, if any, are dropped.
    pub fn to_series(&self, order: usize) -> PowerSeries<T> {
        let coeffs = (0..=order).map(|i| self.coeff(i)).collect();
        PowerSeries::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int, Rational};

    fn poly(v: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(v.iter().map(|&n| rat_int(n)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert!(poly(&[0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 1]);
        assert_eq!(p.mul(&p), poly(&[1, 2, 1]));
        assert_eq!(p.add(&poly(&[-1, -1])), Polynomial::zero());
        assert_eq!(p.sub(&poly(&[1])), poly(&[0, 1]));
        assert_eq!(
            poly(&[0, 1, 2]).scale(&rat(1, 2)),
            Polynomial::new(vec![rat_int(0), rat(1, 2), rat_int(1)])
        );
    }

    #[test]
    fn eval_and_compose_agree() {
        // p(q(x)) evaluated at 2 equals p evaluated at q(2)
        let p = poly(&[1, -3, 2]);
        let q = poly(&[0, 1, 1]);
        let x = rat_int(2);
        assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
    }

    #[test]
    fn to_series_pads_with_true_zeros() {
        let s = poly(&[-2, 0, 1]).to_series(4);
        assert_eq!(
            s.coeffs(),
            &[rat_int(-2), rat_int(0), rat_int(1), rat_int(0), rat_int(0)]
        );
        assert_eq!(
            poly(&[1, 1, 1]).to_series(1).coeffs(),
            &[rat_int(1), rat_int(1)]
        );
    }
}
