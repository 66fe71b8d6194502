use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::{Signed, Zero};

use super::{Interval, NumericsError, Rational};

/// Default cap on bisection steps in [`IntegerPolynomial::isolate_smallest_root`].
pub const DEFAULT_MAX_BISECTIONS: usize = 256;

/// Univariate polynomial with integer coefficients, constant term first.
/// The leading coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new<I, T>(coefficients: I) -> Result<Self, NumericsError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coefficients: Vec<BigInt> = coefficients.into_iter().map(Into::into).collect();
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            return Err(NumericsError::ZeroPolynomial);
        }
        Ok(Self { coefficients })
    }

    /// `x^n + x^2 - 4x + 1`.
    pub fn alpha_family(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n.max(2) + 1];
        c[0] += 1;
        c[1] -= 4;
        c[2] += 1;
        c[n] += 1;
        Self::new(c).expect("leading coefficient is nonzero")
    }

    /// `x^n - 3x + 1`.
    pub fn beta_family(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n.max(1) + 1];
        c[0] += 1;
        c[1] -= 3;
        c[n] += 1;
        Self::new(c).expect("leading coefficient is nonzero")
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    fn sturm_chain(&self) -> Vec<Vec<Rational>> {
        let p: Vec<Rational> = self.coefficients.iter().cloned().map(Rational::from_integer).collect();
        let dp: Vec<Rational> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        let mut chain = vec![p];
        if dp.iter().all(Zero::is_zero) {
            return chain;
        }
        chain.push(dp);
        loop {
            let n = chain.len();
            let rem = poly_rem(&chain[n - 2], &chain[n - 1]);
            if rem.is_empty() {
                break;
            }
            chain.push(rem.into_iter().map(|c| -c).collect());
        }
        chain
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    fn roots_in(chain: &[Vec<Rational>], a: &Rational, b: &Rational) -> usize {
        sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
    }

    /// Encloses the smallest real root of `self` in `window` to within
    /// `precision`, certified by Sturm root counts at rational bisection points.
    ///
    /// On success the returned interval `[a, b]` satisfies `b - a <= precision`
    /// and contains exactly one root of `self`. When a bisection point is an
    /// exact rational root the degenerate interval `[r, r]` is returned.
    pub fn isolate_smallest_root(
        &self,
        window: &Interval,
        precision: &Rational,
    ) -> Result<Interval, NumericsError> {
        self.isolate_smallest_root_with_depth(window, precision, DEFAULT_MAX_BISECTIONS)
    }

    pub fn isolate_smallest_root_with_depth(
        &self,
        window: &Interval,
        precision: &Rational,
        max_depth: usize,
    ) -> Result<Interval, NumericsError> {
        if !precision.is_positive() {
            return Err(NumericsError::NonPositivePrecision);
        }
        if self.eval(window.lo()).is_zero() {
            return Ok(Interval::point(window.lo().clone()));
        }
        let chain = self.sturm_chain();
        let no_root = || NumericsError::NoRootFound { window: window.to_string() };
        if Self::roots_in(&chain, window.lo(), window.hi()) == 0 {
            return Err(no_root());
        }
        // Invariant: p(a) != 0 and the smallest root in the window lies in (a, b].
        let mut a = window.lo().clone();
        let mut b = window.hi().clone();
        for _ in 0..=max_depth {
            let count = Self::roots_in(&chain, &a, &b);
            if count == 1 && self.eval(&b).is_zero() {
                return Ok(Interval::point(b));
            }
            if count == 1 && &b - &a <= *precision {
                return Ok(Interval::new_unchecked(a, b));
            }
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            if Self::roots_in(&chain, &a, &mid) >= 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        Err(NumericsError::DepthExhausted { depth: max_depth })
    }
}

fn poly_rem(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem: Vec<Rational> = num.to_vec();
    let dlead = den.last().expect("nonempty divisor");
    let ddeg = den.len() - 1;
    while rem.len() > ddeg {
        let lead = rem.last().expect("nonempty") / dlead;
        let shift = rem.len() - 1 - ddeg;
        for (k, d) in den.iter().enumerate() {
            rem[shift + k] -= &lead * d;
        }
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    rem
}

fn eval_rational(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn sign_variations(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval_rational(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_mag = k == 0 || mag != BigInt::from(1);
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
