//! The three-map iterated function system
//!
//! ```text
//! f1(x) = λx,   f2(x) = λx + c − λ,   f3(x) = λx + 1 − λ
//! ```
//!
//! with attractor `K ⊂ [0, 1]`, together with the finite objects used to
//! approximate it: codings ([`Word`]), basic intervals, windows and the
//! level-`n` covers `G_n`.

mod cover;
mod params;
mod word;

pub use cover::{
    basic_intervals, build_cover, build_cover_with, children, child_intervals, endpoint_samples, Cover,
    CoverBuilder, Window, DEFAULT_MAX_LEVEL,
};
pub use params::{param_violation, validate_params, IfsParams, ParamViolation};
pub use word::{word_interval, Symbol, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IfsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(ParamViolation),
    #[error("invalid coding symbol {0:?}; expected 1, 2 or 3")]
    BadSymbol(char),
    #[error("window [{a}, {b}] at level {level} is not bounded by basic-interval endpoints")]
    BadWindow { a: String, b: String, level: usize },
    #[error("level {level} is below the window base level {base}")]
    LevelBelowBase { level: usize, base: usize },
    #[error("level {level} exceeds the depth cap {cap}")]
    LevelAboveCap { level: usize, cap: usize },
    #[error("no windows supplied")]
    NoWindows,
}
