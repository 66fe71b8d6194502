use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ifs::{param_violation, IfsParams};
use crate::numerics::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionLabel {
    InvalidParams,
    NecessaryFails,
    Brown,
    Gray,
    Orange,
    Blue,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 6] = [
        RegionLabel::InvalidParams,
        RegionLabel::NecessaryFails,
        RegionLabel::Brown,
        RegionLabel::Gray,
        RegionLabel::Orange,
        RegionLabel::Blue,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::InvalidParams => "invalid",
            RegionLabel::NecessaryFails => "necessary_fails",
            RegionLabel::Brown => "brown",
            RegionLabel::Gray => "gray",
            RegionLabel::Orange => "orange",
            RegionLabel::Blue => "blue",
        }
    }

    /// True for the four labels inside the covered region.
    pub fn is_covered(self) -> bool {
        matches!(self, RegionLabel::Brown | RegionLabel::Gray | RegionLabel::Orange | RegionLabel::Blue)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown region label {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NecessaryCondition {
    /// `(1 − λ)² ≤ c`.
    pub holds: bool,
    /// `2λ < (1 − λ)²`, i.e. `λ < 2 − √3`: no admissible `c` can satisfy the
    /// condition for this `λ`.
    pub strong_obstruction: bool,
}

pub fn necessary_condition(p: &IfsParams) -> NecessaryCondition {
    let d2 = p.d() * p.d();
    let two_lambda = p.lambda() + p.lambda();
    NecessaryCondition {
        holds: d2 <= *p.c(),
        strong_obstruction: two_lambda < d2,
    }
}

/// `λ² − 3λ + 1 ≤ 0`, i.e. `λ ≥ (3 − √5)/2` on `(0, 1)`.
pub(crate) fn brown_condition(lambda: &Rational) -> bool {
    lambda * lambda - lambda * Rational::from_integer(3.into()) + Rational::one() <= Rational::zero()
}

/// `c ≤ λ² + λ/(1 − λ)`, cleared of the denominator.
pub(crate) fn gray_condition(lambda: &Rational, c: &Rational) -> bool {
    let d = Rational::one() - lambda;
    c * &d <= lambda * lambda * &d + lambda
}

/// `(c − λ²)(1 − λ) ≤ c²`.
pub(crate) fn orange_condition(lambda: &Rational, c: &Rational) -> bool {
    (c - lambda * lambda) * (Rational::one() - lambda) <= c * c
}

/// Classifies a raw parameter pair. Every decision is an exact sign test.
pub fn classify(lambda: &Rational, c: &Rational) -> RegionLabel {
    if param_violation(lambda, c).is_some() {
        return RegionLabel::InvalidParams;
    }
    let d = Rational::one() - lambda;
    if c < &(&d * &d) {
        RegionLabel::NecessaryFails
    } else if brown_condition(lambda) {
        RegionLabel::Brown
    } else if gray_condition(lambda, c) {
        RegionLabel::Gray
    } else if orange_condition(lambda, c) {
        RegionLabel::Orange
    } else {
        RegionLabel::Blue
    }
}

pub fn classify_params(p: &IfsParams) -> RegionLabel {
    classify(p.lambda(), p.c())
}
