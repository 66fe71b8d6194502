//! Exact scalar, interval and polynomial primitives.
//!
//! Everything in the crate is computed over [`Rational`]; there is no floating
//! point on any decision path. Floats only appear when rendering pictures.

mod interval;
mod poly;
mod rational;
mod union;

pub use interval::Interval;
pub use poly::{IntegerPolynomial, DEFAULT_MAX_BISECTIONS};
pub use rational::{fmt_rational, parse_rational, rat, Rational};
pub use rational::to_f64;
pub(crate) use rational::{max_of, min_of, pow};
pub use union::{union_complement_in, union_normalize, IntervalUnion};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    ReversedInterval { lo: String, hi: String },
    #[error("cannot parse rational literal {0:?}")]
    Parse(String),
    #[error("polynomial has no coefficients or a zero leading coefficient")]
    ZeroPolynomial,
    #[error("precision must be positive")]
    NonPositivePrecision,
    #[error("no real root found in {window}")]
    NoRootFound { window: String },
    #[error("bisection depth {depth} exhausted before reaching the requested precision")]
    DepthExhausted { depth: usize },
}
