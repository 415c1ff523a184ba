//! Determinant route to the symmetric scheme's series coefficients.
//!
//! Requiring the interpolant to reproduce shifts by `1..=k` steps turns the
//! first `k` coefficients of the multiplier into the solution of a linear
//! system whose matrix has entries `i^{2m}`, a transposed Vandermonde in the
//! squares `1, 4, ..., k^2` scaled by column factorials. Cramer's rule then
//! writes the leading coefficient as a quotient of two determinants, and
//! both have closed product forms. The quotient collapses to the same
//! `-2 ((k-1)!)^2 / (2k)!` the substitution solver produces, which the tests
//! verify both through the closed products and through literal determinant
//! evaluation.

use num_bigint::BigInt;

use crate::matrix::ExactMatrix;
use crate::rational::{factorial, Rational};

/// The `k x k` system matrix: row `i`, column `m` holds `i^{2m}` for
/// `i, m = 1..=k`.
pub fn vandermonde_matrix(k: usize) -> ExactMatrix<Rational> {
    assert!(k >= 1, "system size starts at 1");
    let mut entries = Vec::with_capacity(k * k);
    for i in 1..=k {
        for m in 1..=k {
            entries.push(Rational::from_integer(BigInt::from(i).pow(2 * m as u32)));
        }
    }
    ExactMatrix::new(k, k, entries)
}

/// The `(k-1) x (k-1)` minor left after deleting the first column and the
/// last row: row `i = 1..=k-1`, column `m = 2..=k`, entry `i^{2m}`.
pub fn numerator_minor_matrix(k: usize) -> ExactMatrix<Rational> {
    assert!(k >= 1, "system size starts at 1");
    let n = k - 1;
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for m in 2..=k {
            entries.push(Rational::from_integer(BigInt::from(i).pow(2 * m as u32)));
        }
    }
    ExactMatrix::new(n, n, entries)
}

/// Closed form for `det(vandermonde_matrix(k))`:
/// `(k!)^2 * prod_{1 <= i < j <= k} (j^2 - i^2)`.
pub fn vandermonde_denominator(k: usize) -> Rational {
    assert!(k >= 1, "system size starts at 1");
    let mut acc = factorial(k as u64);
    acc = &acc * &acc;
    for i in 1..=k {
        for j in i + 1..=k {
            acc *= BigInt::from((j * j - i * i) as u64);
        }
    }
    Rational::from_integer(acc)
}

/// Closed form for the numerator determinant of the leading unknown. It
/// carries the cofactor sign, so it equals `-det(numerator_minor_matrix(k))`:
/// `-((k-1)!)^4 * prod_{1 <= i < j <= k-1} (j^2 - i^2)`.
pub fn numerator_leading_minor(k: usize) -> Rational {
    assert!(k >= 1, "system size starts at 1");
    let f = factorial(k as u64 - 1);
    let mut acc = -(&f * &f * &f * &f);
    for i in 1..k {
        for j in i + 1..k {
            acc *= BigInt::from((j * j - i * i) as u64);
        }
    }
    Rational::from_integer(acc)
}

/// Leading series coefficient by Cramer's rule: the closed-form numerator
/// over the closed-form denominator.
pub fn coefficient_via_cramer(k: usize) -> Rational {
    numerator_leading_minor(k) / vandermonde_denominator(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modified_eq::verlet_closed_coefficient;
    use crate::rational::{rat, rat_int};

    #[test]
    fn small_matrices() {
        let v1 = vandermonde_matrix(1);
        assert_eq!(*v1.at(0, 0), rat_int(1));
        let v2 = vandermonde_matrix(2);
        assert_eq!(*v2.at(1, 0), rat_int(4));
        assert_eq!(*v2.at(1, 1), rat_int(16));
        let m3 = numerator_minor_matrix(3);
        assert_eq!(*m3.at(0, 0), rat_int(1));
        assert_eq!(*m3.at(1, 0), rat_int(16));
        assert_eq!(*m3.at(1, 1), rat_int(64));
        assert_eq!(m3.determinant().unwrap(), rat_int(48));
    }

    #[test]
    fn closed_forms_match_literal_determinants() {
        for k in 1..=6 {
            assert_eq!(
                vandermonde_denominator(k),
                vandermonde_matrix(k).determinant().unwrap(),
                "denominator mismatch at k = {k}"
            );
            assert_eq!(
                numerator_leading_minor(k),
                -numerator_minor_matrix(k).determinant().unwrap(),
                "minor mismatch at k = {k}"
            );
        }
    }

    #[test]
    fn example_values() {
        assert_eq!(vandermonde_denominator(1), rat_int(1));
        assert_eq!(vandermonde_denominator(3), rat_int(4320));
        assert_eq!(numerator_leading_minor(1), rat_int(-1));
        assert_eq!(numerator_leading_minor(3), rat_int(-48));
        assert_eq!(coefficient_via_cramer(1), rat_int(-1));
        assert_eq!(coefficient_via_cramer(2), rat(-1, 12));
        assert_eq!(coefficient_via_cramer(3), rat(-1, 90));
    }

    #[test]
    fn quotient_collapses_to_the_factorial_form() {
        for k in 1..=12u64 {
            assert_eq!(
                coefficient_via_cramer(k as usize),
                verlet_closed_coefficient(k)
            );
        }
    }

    #[test]
    fn coefficients_are_negative_and_increase_toward_zero() {
        let mut prev: Option<Rational> = None;
        for k in 1..=12 {
            let c = coefficient_via_cramer(k);
            assert!(c < rat_int(0));
            if let Some(p) = prev {
                assert!(c > p, "magnitude must shrink with k");
            }
            prev = Some(c);
        }
    }
}
