//! Exact-arithmetic engine for modified equations of linear difference
//! schemes.
//!
//! A one-step or symmetric two-step discretization of a linear flow can be
//! read backwards: the discrete sequence is the exact sampling of a nearby
//! continuous equation whose right-hand side is a power series in the step
//! size. This crate derives that series with arbitrary-precision rational
//! coefficients and cross-checks it through independent routes:
//!
//! * order-by-order substitution of a series ansatz into the stencil
//!   ([`modified_eq::derive_first_order`],
//!   [`modified_eq::derive_second_order_symmetric`]);
//! * Cramer's rule on the Vandermonde-type system the ansatz produces,
//!   with closed-form determinant products ([`cramer`]);
//! * series reversion of the sine series, giving the arcsine closed form for
//!   the symmetric second-order scheme ([`modified_eq::arcsine_multiplier`]).
//!
//! The [`chebyshev`] module checks the exact polynomial identity behind the
//! two-step scheme and its 6-periodicity at unit step; [`basel`] evaluates
//! the series acceleration that identity implies for `sum 1/k^2`; and
//! [`simulate`] carries the exact results into `f64` plots and residual
//! order measurements.
//!
//! The algebra kernels ([`series::PowerSeries`], [`poly::Polynomial`],
//! [`matrix::ExactMatrix`]) are generic over the scalar: [`Rational`] for
//! every exact computation, `f64` where plotting wants floats.

use std::ops::Neg;

use num_traits::Num;

pub mod basel;
pub mod chebyshev;
pub mod cramer;
pub mod error;
pub mod matrix;
pub mod modified_eq;
pub mod poly;
pub mod rational;
pub mod series;
pub mod simulate;

/// Scalar bound for all generic algebra in this crate: a commutative ring
/// with one, negation, and division where the algorithms demand it. Blanket
/// implemented; `Rational` and `f64` are the two instantiations used here.
pub trait Scalar: Num + Clone + Neg<Output = Self> {}

impl<T: Num + Clone + Neg<Output = T>> Scalar for T {}

pub use error::{Error, Result};
pub use rational::Rational;

/// Exact power series, the crate's working currency.
pub type RationalSeries = series::PowerSeries<Rational>;

/// Floating-point series, used on the plotting side.
pub type FloatSeries = series::PowerSeries<f64>;
