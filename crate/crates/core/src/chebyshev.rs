//! Exact shift identity for the symmetric two-step recurrence.
//!
//! Solutions of `x_{j+1} = (2 - h^2) x_j - x_{j-1}` satisfy, for every
//! shift `k`, the polynomial identity
//! `x_{j-k} + x_{j+k} = 2 T_k(1 - h^2/2) x_j`
//! with `T_k` the degree-`k` Chebyshev polynomial of the first kind. The
//! weight `2 T_k(1 - h^2/2)` is an even polynomial in `h` of degree `2k`
//! with leading coefficient `(-1)^k`. At `h = 1` the recurrence weight is
//! `2 - h^2 = 1` and every solution is 6-periodic; both facts are checked
//! here over exact rationals.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rat, rat_int, Rational};

/// Chebyshev polynomial of the first kind, by the three-term recurrence.
pub fn chebyshev_poly(k: usize) -> Polynomial<Rational> {
    let mut prev = Polynomial::constant(rat_int(1));
    if k == 0 {
        return prev;
    }
    let y = Polynomial::new(vec![rat_int(0), rat_int(1)]);
    let mut cur = y.clone();
    let two_y = y.scale(&rat_int(2));
    for _ in 1..k {
        let next = two_y.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// The shift-`k` stencil weight `2 T_k(1 - h^2/2)` as a polynomial in `h`.
pub fn stencil_weight_polynomial(k: usize) -> Polynomial<Rational> {
    let argument = Polynomial::new(vec![rat_int(1), rat_int(0), rat(-1, 2)]);
    chebyshev_poly(k).compose(&argument).scale(&rat_int(2))
}

/// True if the weight polynomial has exact degree `2k` with leading
/// coefficient `(-1)^k`.
pub fn leading_term_check(k: usize) -> bool {
    let w = stencil_weight_polynomial(k);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    w.degree() == Some(2 * k) && w.coeff(2 * k) == rat_int(sign)
}

/// Exact trajectory of the two-step recurrence at step size `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    h: Rational,
    values: Vec<Rational>,
}

impl DiscreteSolution {
    /// Wraps an externally built sequence. Panics if fewer than two values.
    pub fn new(h: Rational, values: Vec<Rational>) -> Self {
        assert!(
            values.len() >= 2,
            "a two-step sequence needs at least two values"
        );
        DiscreteSolution { h, values }
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Runs `x_{j+1} = (2 - h^2) x_j - x_{j-1}` from the two seeds for `steps`
/// further values (`steps >= 1`), so the result holds `steps + 2` entries.
pub fn solve_recurrence(
    h: &Rational,
    x0: Rational,
    x1: Rational,
    steps: usize,
) -> DiscreteSolution {
    assert!(steps >= 1, "at least one step");
    let weight = rat_int(2) - h * h;
    let mut values = Vec::with_capacity(steps + 2);
    values.push(x0);
    values.push(x1);
    for j in 1..=steps {
        let next = &weight * &values[j] - &values[j - 1];
        values.push(next);
    }
    DiscreteSolution {
        h: h.clone(),
        values,
    }
}

/// Checks `x_{j-k} + x_{j+k} = 2 T_k(1 - h^2/2) x_j` at every interior
/// index of the sequence, exactly. Errors if no index has both neighbours.
pub fn stencil_sum_identity_check(sol: &DiscreteSolution, k: usize) -> Result<bool> {
    assert!(k >= 1, "shift must be positive");
    let n = sol.values.len();
    if n < 2 * k + 1 {
        return Err(Error::SequenceTooShort);
    }
    let weight = stencil_weight_polynomial(k).eval(sol.h());
    for j in k..n - k {
        let lhs = &sol.values[j - k] + &sol.values[j + k];
        let rhs = &weight * &sol.values[j];
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if every solution at step `h` repeats with the given period over
/// the given span. Linearity reduces the check to the two basis seeds
/// (1, 0) and (0, 1). Requires `span >= 2 * period` so the comparison sees
/// at least one full period against another.
pub fn periodicity_check(h: &Rational, period: usize, span: usize) -> bool {
    assert!(period >= 1, "period must be positive");
    assert!(span >= 2 * period, "span must cover two periods");
    for (x0, x1) in [(rat_int(1), rat_int(0)), (rat_int(0), rat_int(1))] {
        let sol = solve_recurrence(h, x0, x1, span);
        let v = sol.values();
        for j in 0..v.len() - period {
            if v[j] != v[j + period] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(chebyshev_poly(0).coeffs(), &[rat_int(1)]);
        assert_eq!(chebyshev_poly(1).coeffs(), &[rat_int(0), rat_int(1)]);
        assert_eq!(
            chebyshev_poly(2).coeffs(),
            &[rat_int(-1), rat_int(0), rat_int(2)]
        );
        assert_eq!(
            chebyshev_poly(5).coeffs(),
            &[
                rat_int(0),
                rat_int(5),
                rat_int(0),
                rat_int(-20),
                rat_int(0),
                rat_int(16)
            ]
        );
    }

    #[test]
    fn endpoint_values() {
        for k in 0..=20 {
            let t = chebyshev_poly(k);
            assert_eq!(t.eval(&rat_int(1)), rat_int(1));
            assert_eq!(
                t.eval(&rat_int(-1)),
                rat_int(if k % 2 == 0 { 1 } else { -1 })
            );
        }
    }

    #[test]
    fn weight_polynomial_shape() {
        // k = 1: 2 (1 - h^2/2) = 2 - h^2
        assert_eq!(
            stencil_weight_polynomial(1).coeffs(),
            &[rat_int(2), rat_int(0), rat_int(-1)]
        );
        for k in 1..=10 {
            assert!(leading_term_check(k), "leading term fails at k = {k}");
            let w = stencil_weight_polynomial(k);
            for (i, c) in w.coeffs().iter().enumerate() {
                if i % 2 == 1 {
                    assert!(c == &rat_int(0), "odd power h^{i} appears at k = {k}");
                }
            }
        }
    }

    #[test]
    fn unit_step_solution_cycles() {
        let sol = solve_recurrence(&rat_int(1), rat_int(1), rat(1, 2), 10);
        let expected: Vec<Rational> = [
            (1, 1),
            (1, 2),
            (-1, 2),
            (-1, 1),
            (-1, 2),
            (1, 2),
            (1, 1),
            (1, 2),
            (-1, 2),
            (-1, 1),
            (-1, 2),
            (1, 2),
        ]
        .iter()
        .map(|&(n, d)| rat(n, d))
        .collect();
        assert_eq!(sol.values(), &expected[..]);
    }

    #[test]
    fn identity_holds_on_generic_solutions() {
        for h in [rat_int(1), rat(1, 2), rat(1, 10)] {
            let sol = solve_recurrence(&h, rat(2, 3), rat(-1, 5), 30);
            for k in 1..=4 {
                assert!(stencil_sum_identity_check(&sol, k).unwrap());
            }
        }
    }

    #[test]
    fn identity_rejects_a_corrupted_sequence() {
        let sol = solve_recurrence(&rat(1, 2), rat_int(1), rat_int(1), 12);
        let mut values = sol.values().to_vec();
        values[5] += rat(1, 7);
        let bad = DiscreteSolution::new(rat(1, 2), values);
        assert!(!stencil_sum_identity_check(&bad, 2).unwrap());
    }

    #[test]
    fn too_short_sequences_error() {
        let sol = solve_recurrence(&rat_int(1), rat_int(1), rat_int(0), 1);
        assert!(matches!(
            stencil_sum_identity_check(&sol, 2),
            Err(Error::SequenceTooShort)
        ));
    }

    #[test]
    fn unit_step_is_six_periodic_and_not_five_periodic() {
        assert!(periodicity_check(&rat_int(1), 6, 30));
        assert!(!periodicity_check(&rat_int(1), 5, 30));
        assert!(!periodicity_check(&rat(1, 2), 6, 30));
    }

    proptest! {
        #[test]
        fn solutions_are_linear_in_the_seeds(a in -9i64..=9, c in -9i64..=9) {
            let h = rat(1, 3);
            let basis0 = solve_recurrence(&h, rat_int(1), rat_int(0), 15);
            let basis1 = solve_recurrence(&h, rat_int(0), rat_int(1), 15);
            let combo = solve_recurrence(&h, rat_int(a), rat_int(c), 15);
            for j in 0..combo.values().len() {
                let mix = rat_int(a) * &basis0.values()[j] + rat_int(c) * &basis1.values()[j];
                prop_assert_eq!(&combo.values()[j], &mix);
            }
            prop_assert!(stencil_sum_identity_check(&combo, 3).unwrap());
        }
    }
}
