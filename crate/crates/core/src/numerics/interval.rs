use std::fmt;

use num::{Signed, Zero};

use super::rational::{fmt_rational, max_of, min_of};
use super::{NumericsError, Rational};

/// Closed interval `[lo, hi]` with exact rational endpoints. Point intervals
/// are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, NumericsError> {
        if lo > hi {
            return Err(NumericsError::ReversedInterval {
                lo: fmt_rational(&lo),
                hi: fmt_rational(&hi),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Callers guarantee `lo <= hi`.
    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn unit() -> Self {
        Self { lo: Rational::zero(), hi: num::One::one() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Closed intervals that share at least one point.
    pub fn meets(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = max_of(&self.lo, &other.lo);
        let hi = min_of(&self.hi, &other.hi);
        (lo <= hi).then(|| Interval::new_unchecked(lo.clone(), hi.clone()))
    }

    /// Image under `x -> scale * x + shift` for `scale >= 0`.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> Interval {
        debug_assert!(!scale.is_negative());
        Interval::new_unchecked(scale * &self.lo + shift, scale * &self.hi + shift)
    }

    pub fn scale(&self, factor: &Rational) -> Interval {
        self.affine(factor, &Rational::zero())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}
