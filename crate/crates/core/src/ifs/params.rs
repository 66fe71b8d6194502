use std::fmt;

use num::{One, Zero};

use super::word::Symbol;
use super::IfsError;
use crate::numerics::{fmt_rational, Rational};

/// Why a `(λ, c)` pair does not define an admissible IFS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamViolation {
    /// `λ ∉ (0, 1)`.
    LambdaOutOfRange,
    /// `c < λ`: `f2(I)` would leave `[0, 1]`.
    CBelowLambda,
    /// `c > 2λ`: `f1(I)` and `f2(I)` are disjoint.
    CAboveTwiceLambda,
    /// `c ≥ 1 − λ`: `f2(I)` meets `f3(I)`.
    TouchesThirdMap,
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LambdaOutOfRange => "lambda must lie in (0, 1)",
            Self::CBelowLambda => "c < lambda",
            Self::CAboveTwiceLambda => "c > 2*lambda",
            Self::TouchesThirdMap => "c >= 1 - lambda",
        })
    }
}

/// First violated admissibility inequality, or `None` when
/// `λ ≤ c ≤ 2λ` and `c + λ < 1` (with `0 < λ < 1`).
pub fn param_violation(lambda: &Rational, c: &Rational) -> Option<ParamViolation> {
    let one = Rational::one();
    if lambda <= &Rational::zero() || lambda >= &one {
        Some(ParamViolation::LambdaOutOfRange)
    } else if c < lambda {
        Some(ParamViolation::CBelowLambda)
    } else if c > &(lambda * Rational::from_integer(2.into())) {
        Some(ParamViolation::CAboveTwiceLambda)
    } else if c + lambda >= one {
        Some(ParamViolation::TouchesThirdMap)
    } else {
        None
    }
}

/// Validated IFS parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IfsParams {
    lambda: Rational,
    c: Rational,
    d: Rational,
}

pub fn validate_params(lambda: &Rational, c: &Rational) -> Result<IfsParams, IfsError> {
    IfsParams::new(lambda.clone(), c.clone())
}

impl IfsParams {
    pub fn new(lambda: Rational, c: Rational) -> Result<Self, IfsError> {
        if let Some(v) = param_violation(&lambda, &c) {
            return Err(IfsError::InvalidParams(v));
        }
        let d = Rational::one() - &lambda;
        Ok(Self { lambda, c, d })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `d = 1 − λ`, the left endpoint of `f3(I)`.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// Translation part of `f_s`.
    pub fn translation(&self, s: Symbol) -> Rational {
        match s {
            Symbol::One => Rational::zero(),
            Symbol::Two => &self.c - &self.lambda,
            Symbol::Three => self.d.clone(),
        }
    }

    pub fn apply(&self, s: Symbol, x: &Rational) -> Rational {
        &self.lambda * x + self.translation(s)
    }

    pub(crate) fn translations(&self) -> [Rational; 3] {
        Symbol::ALL.map(|s| self.translation(s))
    }
}

impl fmt::Display for IfsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(lambda={}, c={})", fmt_rational(&self.lambda), fmt_rational(&self.c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn admissibility_examples() {
        assert!(validate_params(&rat(1, 3), &rat(4, 9)).is_ok());
        assert_eq!(
            validate_params(&rat(1, 3), &rat(1, 4)),
            Err(IfsError::InvalidParams(ParamViolation::CBelowLambda))
        );
        assert_eq!(
            validate_params(&rat(2, 5), &rat(17, 20)),
            Err(IfsError::InvalidParams(ParamViolation::CAboveTwiceLambda))
        );
        assert_eq!(
            validate_params(&rat(2, 5), &rat(3, 5)),
            Err(IfsError::InvalidParams(ParamViolation::TouchesThirdMap))
        );
        assert_eq!(
            validate_params(&rat(1, 1), &rat(1, 1)),
            Err(IfsError::InvalidParams(ParamViolation::LambdaOutOfRange))
        );
    }

    #[test]
    fn boundary_cases_are_admissible() {
        // c = λ and c = 2λ are both allowed
        assert!(validate_params(&rat(1, 3), &rat(1, 3)).is_ok());
        assert!(validate_params(&rat(1, 4), &rat(1, 2)).is_ok());
    }

    #[test]
    fn derived_d() {
        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        assert_eq!(p.d(), &rat(2, 3));
        assert_eq!(p.translations(), [rat(0, 1), rat(1, 9), rat(2, 3)]);
    }
}
