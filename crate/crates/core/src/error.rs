//! Crate-wide error type.

use std::fmt;

/// Errors reported by the exact-arithmetic and simulation layers.
#[derive(Debug)]
pub enum Error {
    /// Rational division with a zero divisor.
    DivisionByZero,
    /// A rational literal could not be parsed as `p/q` or a plain integer.
    InvalidRational(String),
    /// Series construction declared a parity its coefficients violate.
    ParityViolation { index: usize },
    /// Composition requires the inner series to have zero constant term.
    CompositionConstantTerm,
    /// Multiplicative inversion requires a nonzero constant term.
    NotInvertible,
    /// Compositional reversion requires zero constant and nonzero linear term.
    NotRevertible,
    /// Division by the variable found a nonzero coefficient below the shift.
    ShiftRemainder { index: usize },
    /// Matrix operation on a non-square matrix.
    NonSquareMatrix { rows: usize, cols: usize },
    /// Matrix construction with rows of unequal length.
    RaggedMatrix,
    /// The stencil fails the consistency conditions of its scheme order.
    InconsistentScheme(&'static str),
    /// A second-order derivation was asked for on an asymmetric stencil.
    AsymmetricStencil,
    /// A second-order derivation was asked for at an odd truncation order.
    OddTruncationOrder(usize),
    /// A serialized series had inconsistent shape data.
    SeriesShape(&'static str),
    /// The sequence is too short to test the identity at any interior index.
    SequenceTooShort,
    /// Step size outside (0, 2), where the discrete frequency is defined.
    StepSizeOutOfRange(f64),
    /// The residual grid must hold at least four strictly decreasing steps.
    BadResidualGrid(&'static str),
    /// The residual at the smallest step drowned in rounding noise.
    ResidualBelowNoise { h: f64 },
    /// Writing an output file failed.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidRational(s) => {
                write!(
                    f,
                    "cannot parse {s:?} as a rational (expected p/q or an integer)"
                )
            }
            Error::ParityViolation { index } => {
                write!(
                    f,
                    "coefficient at index {index} violates the declared parity"
                )
            }
            Error::CompositionConstantTerm => {
                write!(
                    f,
                    "composition needs an inner series with zero constant term"
                )
            }
            Error::NotInvertible => {
                write!(
                    f,
                    "series with zero constant term has no multiplicative inverse"
                )
            }
            Error::NotRevertible => write!(
                f,
                "reversion needs a zero constant term and a nonzero linear term"
            ),
            Error::ShiftRemainder { index } => {
                write!(
                    f,
                    "cannot divide by the variable: nonzero coefficient at index {index}"
                )
            }
            Error::NonSquareMatrix { rows, cols } => {
                write!(f, "determinant of a non-square matrix ({rows}x{cols})")
            }
            Error::RaggedMatrix => write!(f, "matrix rows have unequal lengths"),
            Error::InconsistentScheme(why) => write!(f, "inconsistent stencil: {why}"),
            Error::AsymmetricStencil => {
                write!(f, "second-order derivation requires a symmetric stencil")
            }
            Error::OddTruncationOrder(n) => {
                write!(
                    f,
                    "symmetric derivation requires an even truncation order, got {n}"
                )
            }
            Error::SeriesShape(why) => write!(f, "malformed series data: {why}"),
            Error::SequenceTooShort => {
                write!(
                    f,
                    "sequence too short to evaluate the identity at any interior index"
                )
            }
            Error::StepSizeOutOfRange(h) => {
                write!(f, "step size {h} outside (0, 2)")
            }
            Error::BadResidualGrid(why) => write!(f, "bad residual grid: {why}"),
            Error::ResidualBelowNoise { h } => write!(
                f,
                "residual at h = {h} is below the rounding-noise floor; use larger steps"
            ),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
