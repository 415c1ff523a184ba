//! Modified-equation derivation for linear difference schemes.
//!
//! A stencil `sum_s a_s(h) x_{j+s} = 0` discretizes a linear flow. Seeking a
//! continuous interpolant `x(t)` with `x' = S(h) x` (first-order schemes) or
//! `x'' = S(h) x` (symmetric second-order schemes), where `S` is a power
//! series in the step size `h`, turns the stencil into one linear condition
//! per power of `h`: shifting by `s` steps multiplies the solution by
//! `exp(s h S)` in the first-order case and contributes
//! `2 sum_m (s h)^{2m} S^m / (2m)!` per symmetric pair in the second-order
//! case. The conditions are triangular in the unknown coefficients of `S`,
//! so each one is solved by a single exact division.
//!
//! Two independent routes to the same coefficients live alongside the
//! substitution solver: a closed form per coefficient and, for the symmetric
//! scheme, the arcsine series built by compositional reversion of the sine
//! series. The test suites compare all routes coefficient by coefficient.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factorial, rat, rat_int, Rational};
use crate::series::{Parity, PowerSeries};

/// Differential order of the flow a stencil discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeOrder {
    /// `x' = S x`: one-step schemes on offsets {0, 1}.
    First,
    /// `x'' = S x`: symmetric multi-step schemes.
    Second,
}

/// The two stencils studied throughout this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Explicit one-step scheme for `x' = -x`.
    Euler,
    /// Symmetric two-step scheme for `x'' = -x`.
    Verlet,
}

impl SchemeKind {
    pub fn stencil(self) -> Stencil {
        match self {
            SchemeKind::Euler => Stencil::euler(),
            SchemeKind::Verlet => Stencil::verlet(),
        }
    }

    /// Derives the multiplier by order-by-order substitution.
    pub fn derive(self, order: usize) -> Result<ModifiedEquationSeries> {
        match self {
            SchemeKind::Euler => derive_first_order(&Stencil::euler(), order),
            SchemeKind::Verlet => derive_second_order_symmetric(&Stencil::verlet(), order),
        }
    }

    /// Assembles the multiplier from the per-coefficient closed form.
    pub fn closed_form(self, order: usize) -> PowerSeries<Rational> {
        match self {
            SchemeKind::Euler => {
                let coeffs = (0..=order as u64).map(euler_closed_coefficient).collect();
                PowerSeries::from_coeffs(coeffs)
            }
            SchemeKind::Verlet => {
                let mut coeffs = vec![rat_int(0); order + 1];
                let mut k = 1u64;
                while 2 * k - 2 <= order as u64 {
                    coeffs[(2 * k - 2) as usize] = verlet_closed_coefficient(k);
                    k += 1;
                }
                PowerSeries::new(coeffs, Parity::Even).expect("even pattern by construction")
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Euler => "euler",
            SchemeKind::Verlet => "verlet",
        }
    }
}

/// Linear difference stencil: offset `s` maps to the polynomial weight
/// `a_s(h)` on `x_{j+s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    terms: BTreeMap<i64, Polynomial<Rational>>,
    scheme_order: SchemeOrder,
}

impl Stencil {
    /// Wraps a weight map. Zero polynomials are dropped; the map must keep
    /// at least one term.
    pub fn new(terms: BTreeMap<i64, Polynomial<Rational>>, scheme_order: SchemeOrder) -> Self {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        assert!(!terms.is_empty(), "stencil needs at least one nonzero term");
        Stencil {
            terms,
            scheme_order,
        }
    }

    /// `x_{j+1} - x_j + h x_j = 0`, the explicit one-step scheme for `x' = -x`.
    pub fn euler() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1, Polynomial::constant(rat_int(1)));
        terms.insert(0, Polynomial::new(vec![rat_int(-1), rat_int(1)]));
        Stencil::new(terms, SchemeOrder::First)
    }

    /// `x_{j+1} - 2 x_j + x_{j-1} + h^2 x_j = 0`, the symmetric two-step
    /// scheme for `x'' = -x`.
    pub fn verlet() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1, Polynomial::constant(rat_int(1)));
        terms.insert(-1, Polynomial::constant(rat_int(1)));
        terms.insert(
            0,
            Polynomial::new(vec![rat_int(-2), rat_int(0), rat_int(1)]),
        );
        Stencil::new(terms, SchemeOrder::Second)
    }

    pub fn terms(&self) -> &BTreeMap<i64, Polynomial<Rational>> {
        &self.terms
    }

    pub fn scheme_order(&self) -> SchemeOrder {
        self.scheme_order
    }

    /// True if the weight at `-s` equals the weight at `s` for every offset.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(s, p)| self.terms.get(&-s) == Some(p))
    }

    fn weight(&self, offset: i64) -> Polynomial<Rational> {
        self.terms
            .get(&offset)
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }
}

/// A derived modified equation: the flow order and the series multiplier
/// `S(h)` with `x' = S x` or `x'' = S x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedEquationSeries {
    scheme_order: SchemeOrder,
    multiplier: PowerSeries<Rational>,
}

impl ModifiedEquationSeries {
    pub fn scheme_order(&self) -> SchemeOrder {
        self.scheme_order
    }

    pub fn multiplier(&self) -> &PowerSeries<Rational> {
        &self.multiplier
    }

    pub fn into_multiplier(self) -> PowerSeries<Rational> {
        self.multiplier
    }
}

/// `sum_n (h S)^n / n!` truncated at `trunc`; `hs` must carry that order.
fn exp_sum(hs: &PowerSeries<Rational>, trunc: usize) -> PowerSeries<Rational> {
    let mut acc = PowerSeries::one(trunc);
    let mut pow = PowerSeries::one(trunc);
    for n in 1..=trunc as u64 {
        pow = pow.mul(hs);
        if pow.is_zero() {
            break;
        }
        let inv_fact = rat_int(1) / Rational::from_integer(factorial(n));
        acc = acc.add(&pow.scale(&inv_fact));
    }
    acc
}

/// `sum_m v^m / (2m)!` truncated at `trunc`; `v` has valuation >= 2, so the
/// loop ends once the powers leave the window.
fn even_shift_sum(v: &PowerSeries<Rational>, trunc: usize) -> PowerSeries<Rational> {
    let mut acc = PowerSeries::one(trunc);
    let mut pow = PowerSeries::one(trunc);
    let mut m = 1u64;
    loop {
        pow = pow.mul(v);
        if pow.is_zero() {
            break;
        }
        let inv_fact = rat_int(1) / Rational::from_integer(factorial(2 * m));
        acc = acc.add(&pow.scale(&inv_fact));
        m += 1;
    }
    acc
}

/// Shapes `s * x^m` at exactly `trunc`, requiring the input to carry enough
/// known coefficients.
fn shift_to(s: &PowerSeries<Rational>, m: usize, trunc: usize) -> PowerSeries<Rational> {
    let shifted = s.shift_multiply(m);
    assert!(
        shifted.truncation_order() >= trunc,
        "multiplier carries too few coefficients for this truncation"
    );
    shifted.truncate(trunc)
}

fn first_order_condition(
    stencil: &Stencil,
    s: &PowerSeries<Rational>,
    trunc: usize,
) -> PowerSeries<Rational> {
    let hs = shift_to(s, 1, trunc);
    let growth = exp_sum(&hs, trunc);
    let a1 = stencil.weight(1).to_series(trunc);
    let a0 = stencil.weight(0).to_series(trunc);
    a1.mul(&growth).add(&a0)
}

fn symmetric_condition(
    stencil: &Stencil,
    s: &PowerSeries<Rational>,
    trunc: usize,
) -> PowerSeries<Rational> {
    let h2s = shift_to(s, 2, trunc);
    let mut acc = stencil.weight(0).to_series(trunc);
    for (&offset, weight) in stencil.terms.iter().filter(|(o, _)| **o > 0) {
        let v = h2s.scale(&rat_int(offset * offset));
        let pair = even_shift_sum(&v, trunc);
        acc = acc.add(&weight.to_series(trunc).mul(&pair).scale(&rat_int(2)));
    }
    acc
}

/// Substitutes the interpolant driven by `multiplier` into the stencil and
/// returns the resulting series in `h` through `trunc`. A correct multiplier
/// of order `n` zeroes every coefficient through `h^{n+1}`. The multiplier
/// must carry at least `trunc - 1` (first-order) or `trunc - 2`
/// (second-order) coefficients; second-order stencils must be symmetric.
pub fn substitution_residual(
    stencil: &Stencil,
    multiplier: &PowerSeries<Rational>,
    trunc: usize,
) -> Result<PowerSeries<Rational>> {
    match stencil.scheme_order {
        SchemeOrder::First => {
            check_first_order_shape(stencil)?;
            Ok(first_order_condition(stencil, multiplier, trunc))
        }
        SchemeOrder::Second => {
            if !stencil.is_symmetric() {
                return Err(Error::AsymmetricStencil);
            }
            Ok(symmetric_condition(stencil, multiplier, trunc))
        }
    }
}

fn check_first_order_shape(stencil: &Stencil) -> Result<()> {
    if stencil.scheme_order != SchemeOrder::First {
        return Err(Error::InconsistentScheme("expected a first-order stencil"));
    }
    if stencil.terms.keys().any(|&s| s != 0 && s != 1) {
        return Err(Error::InconsistentScheme(
            "one-step derivation allows offsets 0 and 1 only",
        ));
    }
    if !stencil.terms.contains_key(&1) {
        return Err(Error::InconsistentScheme("offset 1 is missing"));
    }
    Ok(())
}

/// Derives the multiplier of a one-step scheme through `h^order`. Each new
/// coefficient is fixed by one condition: the coefficient of `h^{m+1}` in
/// the substituted stencil, which depends linearly on `s_m` with the factor
/// `a_1(0)` and otherwise only on earlier coefficients.
pub fn derive_first_order(stencil: &Stencil, order: usize) -> Result<ModifiedEquationSeries> {
    check_first_order_shape(stencil)?;
    let lambda = stencil.weight(1).coeff(0);
    if lambda.is_zero() {
        return Err(Error::InconsistentScheme(
            "offset-1 weight vanishes at h = 0",
        ));
    }
    if !(stencil.weight(1).coeff(0) + stencil.weight(0).coeff(0)).is_zero() {
        return Err(Error::InconsistentScheme("weights do not cancel at h^0"));
    }
    let mut coeffs = vec![rat_int(0); order + 1];
    for m in 0..=order {
        let s = PowerSeries::from_coeffs(coeffs.clone());
        let condition = first_order_condition(stencil, &s, m + 1);
        coeffs[m] = -(condition.coeff(m + 1) / &lambda);
    }
    Ok(ModifiedEquationSeries {
        scheme_order: SchemeOrder::First,
        multiplier: PowerSeries::from_coeffs(coeffs),
    })
}

/// Derives the multiplier of a symmetric scheme through `h^order` (`order`
/// even; the multiplier is an even series). The coefficient of `h^{2i+2}`
/// in the substituted stencil depends linearly on `s_{2i}` with the factor
/// `sum_{s>0} a_s(0) s^2`; odd coefficients must vanish on their own, which
/// is checked as the solve proceeds.
pub fn derive_second_order_symmetric(
    stencil: &Stencil,
    order: usize,
) -> Result<ModifiedEquationSeries> {
    if stencil.scheme_order != SchemeOrder::Second {
        return Err(Error::InconsistentScheme("expected a second-order stencil"));
    }
    if !order.is_multiple_of(2) {
        return Err(Error::OddTruncationOrder(order));
    }
    if !stencil.is_symmetric() {
        return Err(Error::AsymmetricStencil);
    }
    let at_zero: Rational = stencil.terms.values().map(|p| p.coeff(0)).sum();
    if !at_zero.is_zero() {
        return Err(Error::InconsistentScheme("weights do not cancel at h^0"));
    }
    let lambda: Rational = stencil
        .terms
        .iter()
        .filter(|(o, _)| **o > 0)
        .map(|(&o, p)| p.coeff(0) * rat_int(o * o))
        .sum();
    if lambda.is_zero() {
        return Err(Error::InconsistentScheme(
            "offset weights give no leading signal",
        ));
    }
    let mut coeffs = vec![rat_int(0); order + 1];
    for i in 0..=order / 2 {
        let s = PowerSeries::from_coeffs(coeffs.clone());
        let condition = symmetric_condition(stencil, &s, 2 * i + 2);
        if !condition.coeff(2 * i + 1).is_zero() {
            return Err(Error::InconsistentScheme(
                "odd-order terms persist; an even multiplier cannot cancel them",
            ));
        }
        coeffs[2 * i] = -(condition.coeff(2 * i + 2) / &lambda);
    }
    let multiplier = PowerSeries::new(coeffs, Parity::Even).expect("even pattern by construction");
    Ok(ModifiedEquationSeries {
        scheme_order: SchemeOrder::Second,
        multiplier,
    })
}

/// Closed form for the one-step scheme: the coefficient of `h^k` is
/// `-1/(k+1)`, i.e. `h S = log(1 - h)`.
pub fn euler_closed_coefficient(k: u64) -> Rational {
    rat_int(-1) / rat_int(k as i64 + 1)
}

/// Closed form for the symmetric scheme: the coefficient of `h^{2k-2}` is
/// `-2 ((k-1)!)^2 / (2k)!` for `k >= 1`; odd powers vanish.
pub fn verlet_closed_coefficient(k: u64) -> Rational {
    assert!(k >= 1, "coefficient index starts at 1");
    let num = factorial(k - 1);
    let num = &num * &num * (-2);
    Rational::new(num, factorial(2 * k))
}

/// sin x through `order`, the reversion seed for the arcsine route.
fn sin_series(order: usize) -> PowerSeries<Rational> {
    let mut coeffs = vec![rat_int(0); order + 1];
    let mut k = 1usize;
    while k <= order {
        let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
        coeffs[k] = rat_int(sign) / Rational::from_integer(factorial(k as u64));
        k += 2;
    }
    PowerSeries::new(coeffs, Parity::Odd).expect("odd pattern by construction")
}

/// `(arcsin(h/2))^2` through `h^order` (`order` even), built by reverting
/// the sine series and squaring. No closed form enters this path.
pub fn arcsin_sq_via_reversion(order: usize) -> PowerSeries<Rational> {
    assert!(order.is_multiple_of(2), "even truncation order required");
    let window = order + 2;
    let arcsin = sin_series(window)
        .revert()
        .expect("sine series has unit linear term");
    let half = arcsin.scale_variable(&rat(1, 2));
    half.mul(&half).truncate(order)
}

/// `(arcsin(h/2))^2` from its known expansion: the coefficient of `h^{2k}`
/// is `((k-1)!)^2 / (2 (2k)!)`.
pub fn arcsin_sq_expansion(order: usize) -> PowerSeries<Rational> {
    assert!(order.is_multiple_of(2), "even truncation order required");
    let mut coeffs = vec![rat_int(0); order + 1];
    let mut k = 1u64;
    while 2 * k <= order as u64 {
        let num = factorial(k - 1);
        coeffs[2 * k as usize] = Rational::new(&num * &num, factorial(2 * k) * 2);
        k += 1;
    }
    PowerSeries::new(coeffs, Parity::Even).expect("even pattern by construction")
}

/// The symmetric scheme's multiplier through the arcsine route:
/// `S(h) = -(2/h arcsin(h/2))^2 = -4 (arcsin(h/2))^2 / h^2`, computed by
/// series reversion. Independent of the substitution solver.
pub fn arcsine_multiplier(order: usize) -> PowerSeries<Rational> {
    assert!(order.is_multiple_of(2), "even truncation order required");
    let window = order + 2;
    let arcsin = sin_series(window)
        .revert()
        .expect("sine series has unit linear term");
    let half = arcsin.scale_variable(&rat(1, 2));
    let squared = half.mul(&half);
    squared
        .shift_divide(2)
        .expect("squared arcsine has valuation 2")
        .scale(&rat_int(-4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_multiplier_low_orders() {
        let got = derive_first_order(&Stencil::euler(), 2).unwrap();
        assert_eq!(got.scheme_order(), SchemeOrder::First);
        assert_eq!(
            got.multiplier().coeffs(),
            &[rat_int(-1), rat(-1, 2), rat(-1, 3)]
        );
        let tiny = derive_first_order(&Stencil::euler(), 0).unwrap();
        assert_eq!(tiny.multiplier().coeffs(), &[rat_int(-1)]);
    }

    #[test]
    fn euler_matches_closed_form() {
        let got = derive_first_order(&Stencil::euler(), 12).unwrap();
        for k in 0..=12u64 {
            assert_eq!(
                *got.multiplier().coeff(k as usize),
                euler_closed_coefficient(k)
            );
        }
        assert_eq!(SchemeKind::Euler.closed_form(12), *got.multiplier());
    }

    #[test]
    fn verlet_multiplier_low_orders() {
        let got = derive_second_order_symmetric(&Stencil::verlet(), 4).unwrap();
        assert_eq!(
            got.multiplier().coeffs(),
            &[
                rat_int(-1),
                rat_int(0),
                rat(-1, 12),
                rat_int(0),
                rat(-1, 90)
            ]
        );
        assert_eq!(got.multiplier().parity(), Parity::Even);
        let tiny = derive_second_order_symmetric(&Stencil::verlet(), 0).unwrap();
        assert_eq!(tiny.multiplier().coeffs(), &[rat_int(-1)]);
    }

    #[test]
    fn verlet_closed_coefficient_examples() {
        assert_eq!(verlet_closed_coefficient(1), rat_int(-1));
        assert_eq!(verlet_closed_coefficient(2), rat(-1, 12));
        assert_eq!(verlet_closed_coefficient(3), rat(-1, 90));
    }

    #[test]
    fn verlet_matches_closed_form() {
        let got = derive_second_order_symmetric(&Stencil::verlet(), 14).unwrap();
        for k in 1..=8u64 {
            assert_eq!(
                *got.multiplier().coeff((2 * k - 2) as usize),
                verlet_closed_coefficient(k)
            );
        }
        assert_eq!(SchemeKind::Verlet.closed_form(14), *got.multiplier());
    }

    #[test]
    fn arcsine_route_examples() {
        assert_eq!(arcsine_multiplier(0).coeffs(), &[rat_int(-1)]);
        let derived = derive_second_order_symmetric(&Stencil::verlet(), 10).unwrap();
        assert_eq!(arcsine_multiplier(10), *derived.multiplier());
        assert_eq!(arcsine_multiplier(4).parity(), Parity::Even);
    }

    #[test]
    fn arcsin_sq_expansions_agree() {
        let e = arcsin_sq_expansion(10);
        assert_eq!(*e.coeff(2), rat(1, 4));
        assert_eq!(*e.coeff(4), rat(1, 48));
        assert_eq!(*e.coeff(6), rat(1, 360));
        assert_eq!(e, arcsin_sq_via_reversion(10));
    }

    #[test]
    fn residual_vanishes_through_order_plus_one() {
        let euler = derive_first_order(&Stencil::euler(), 6).unwrap();
        let r = substitution_residual(&Stencil::euler(), euler.multiplier(), 7).unwrap();
        assert!(r.is_zero());
        let verlet = derive_second_order_symmetric(&Stencil::verlet(), 6).unwrap();
        let r = substitution_residual(&Stencil::verlet(), verlet.multiplier(), 7).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn residual_detects_a_wrong_coefficient() {
        let mut coeffs = derive_first_order(&Stencil::euler(), 4)
            .unwrap()
            .into_multiplier()
            .coeffs()
            .to_vec();
        coeffs[3] = rat(1, 7);
        let wrong = PowerSeries::from_coeffs(coeffs);
        let r = substitution_residual(&Stencil::euler(), &wrong, 5).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn higher_order_runs_extend_lower_ones() {
        let long = derive_first_order(&Stencil::euler(), 8).unwrap();
        let short = derive_first_order(&Stencil::euler(), 3).unwrap();
        assert_eq!(long.multiplier().truncate(3), *short.multiplier());
        let long = derive_second_order_symmetric(&Stencil::verlet(), 8).unwrap();
        let short = derive_second_order_symmetric(&Stencil::verlet(), 4).unwrap();
        assert_eq!(long.multiplier().truncate(4), *short.multiplier());
    }

    #[test]
    fn scheme_validation_errors() {
        let r = derive_first_order(&Stencil::verlet(), 4);
        assert!(matches!(r, Err(Error::InconsistentScheme(_))));

        let r = derive_second_order_symmetric(&Stencil::verlet(), 3);
        assert!(matches!(r, Err(Error::OddTruncationOrder(3))));

        let mut terms = BTreeMap::new();
        terms.insert(1, Polynomial::constant(rat_int(1)));
        terms.insert(-1, Polynomial::constant(rat_int(2)));
        terms.insert(
            0,
            Polynomial::new(vec![rat_int(-3), rat_int(0), rat_int(1)]),
        );
        let lopsided = Stencil::new(terms, SchemeOrder::Second);
        assert!(!lopsided.is_symmetric());
        assert!(matches!(
            derive_second_order_symmetric(&lopsided, 4),
            Err(Error::AsymmetricStencil)
        ));

        // one-step stencil that does not cancel on constants at h = 0
        let mut terms = BTreeMap::new();
        terms.insert(1, Polynomial::constant(rat_int(1)));
        terms.insert(0, Polynomial::new(vec![rat_int(-2), rat_int(1)]));
        let bad = Stencil::new(terms, SchemeOrder::First);
        assert!(matches!(
            derive_first_order(&bad, 2),
            Err(Error::InconsistentScheme(_))
        ));

        // offset outside {0, 1}
        let mut terms = BTreeMap::new();
        terms.insert(2, Polynomial::constant(rat_int(1)));
        terms.insert(0, Polynomial::new(vec![rat_int(-1), rat_int(1)]));
        let wide = Stencil::new(terms, SchemeOrder::First);
        assert!(matches!(
            derive_first_order(&wide, 2),
            Err(Error::InconsistentScheme(_))
        ));
    }

    #[test]
    fn stencil_shapes() {
        assert!(Stencil::verlet().is_symmetric());
        assert!(!Stencil::euler().is_symmetric());
        assert_eq!(Stencil::euler().scheme_order(), SchemeOrder::First);
        assert_eq!(SchemeKind::Euler.stencil(), Stencil::euler());
        assert_eq!(SchemeKind::Verlet.name(), "verlet");
    }

    #[test]
    fn sine_series_shape() {
        let s = sin_series(7);
        assert_eq!(
            s.coeffs(),
            &[
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat(-1, 6),
                rat_int(0),
                rat(1, 120),
                rat_int(0),
                rat(-1, 5040)
            ]
        );
    }
}
