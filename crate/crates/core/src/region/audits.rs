//! Randomised audits of the auxiliary parameter inequalities.
//!
//! Each audit draws rational samples from a seeded generator, so runs are
//! reproducible, and decides every inequality exactly.

use num::bigint::BigInt;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::brown_condition;
use super::RegionError;
use crate::numerics::{fmt_rational, rat, Interval, Rational};

/// Resolution of sampled rationals inside a range.
const GRID: i64 = 1 << 24;

/// λ-range used by an audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditRange {
    /// `2 − √3 ≤ λ < (3 − √5)/2`, tested by the signs of `λ² − 4λ + 1` and
    /// `λ² − 3λ + 1`.
    NonBrownPurple,
    /// An explicit closed interval, sampled uniformly on a dyadic grid.
    Explicit(Interval),
}

fn sample_in(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let k: i64 = rng.gen_range(0..=GRID);
    lo + (hi - lo) * rat(k, GRID)
}

/// `λ² − 4λ + 1 ≤ 0`, i.e. `λ ≥ 2 − √3` on `(0, 1)`.
fn above_lower_threshold(lambda: &Rational) -> bool {
    lambda * lambda - lambda * Rational::from_integer(BigInt::from(4)) + Rational::one() <= Rational::zero()
}

fn sample_lambda(rng: &mut ChaCha8Rng, range: &AuditRange) -> Rational {
    match range {
        AuditRange::Explicit(iv) => sample_in(rng, iv.lo(), iv.hi()),
        AuditRange::NonBrownPurple => loop {
            // 0.26 < 2 − √3 and 0.39 > (3 − √5)/2
            let l = sample_in(rng, &rat(26, 100), &rat(39, 100));
            if above_lower_threshold(&l) && !brown_condition(&l) {
                return l;
            }
        },
    }
}

fn counterexample(lambda: &Rational, c: &Rational, detail: &str) -> RegionError {
    RegionError::CounterexampleFound {
        lambda: fmt_rational(lambda),
        c: fmt_rational(c),
        detail: detail.to_string(),
    }
}

/// Samples admissible `(λ, c)` with `(1 − λ)² ≤ c` and checks `1 − 2c ≤ λ` and
/// `(1 − c)/2 ≤ λ`. Returns the number of samples checked.
pub fn threshold_implications_check(samples: usize, seed: u64) -> Result<usize, RegionError> {
    if samples == 0 {
        return Err(RegionError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Rational::one();
    let two = rat(2, 1);
    let mut checked = 0;
    while checked < samples {
        let lambda = sample_in(&mut rng, &rat(1, 100), &rat(1, 2));
        let d = &one - &lambda;
        let c_lo = crate::numerics::max_of(&lambda, &(&d * &d)).clone();
        let c_hi = crate::numerics::min_of(&(&lambda * &two), &d).clone();
        if c_lo >= c_hi {
            continue;
        }
        let c = sample_in(&mut rng, &c_lo, &c_hi);
        if c >= d {
            continue;
        }
        if &one - &two * &c > lambda {
            return Err(counterexample(&lambda, &c, "1 - 2c > lambda"));
        }
        if (&one - &c) / &two > lambda {
            return Err(counterexample(&lambda, &c, "(1 - c)/2 > lambda"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `c(1 − λ + λc) − (c − λ²)(1 − λ²)`, which factors as
/// `λ(c² + (λ − 1)c + λ − λ³)`.
fn gray_gap(lambda: &Rational, c: &Rational) -> Rational {
    let one = Rational::one();
    let l2 = lambda * lambda;
    c * (&one - lambda + lambda * c) - (c - &l2) * (&one - &l2)
}

fn gray_quadratic(lambda: &Rational, c: &Rational) -> Rational {
    c * c + (lambda - Rational::one()) * c + lambda - lambda * lambda * lambda
}

/// `(λ − 1)² − 4(λ − λ³)`, equal to `(λ − 1)(4λ² + 5λ − 1)`.
fn gray_discriminant(lambda: &Rational) -> Rational {
    let lm1 = lambda - Rational::one();
    &lm1 * &lm1 - rat(4, 1) * (lambda - lambda * lambda * lambda)
}

/// Audits `c(1 − λ + λc) > (c − λ²)(1 − λ²)` for `λ` in the non-brown covered
/// range and `c ∈ (0, 1)`, together with the negativity of its discriminant.
pub fn gray_window_inequality(samples: usize, seed: u64) -> Result<usize, RegionError> {
    gray_window_inequality_on(samples, seed, &AuditRange::NonBrownPurple)
}

/// [`gray_window_inequality`] over an arbitrary λ-range. The discriminant is
/// negative only for `λ > (√41 − 5)/8 ≈ 0.1754`, so wide ranges can fail.
pub fn gray_window_inequality_on(samples: usize, seed: u64, range: &AuditRange) -> Result<usize, RegionError> {
    if samples == 0 {
        return Err(RegionError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let lambda = sample_lambda(&mut rng, range);
        let c = sample_in(&mut rng, &Rational::zero(), &Rational::one());
        let gap = gray_gap(&lambda, &c);
        let q = gray_quadratic(&lambda, &c);
        // two evaluations of the same quantity must agree
        if gap != &lambda * &q {
            return Err(counterexample(&lambda, &c, "factorisation mismatch"));
        }
        if gray_discriminant(&lambda) >= Rational::zero() {
            return Err(counterexample(&lambda, &c, "discriminant is not negative"));
        }
        if q <= Rational::zero() {
            return Err(counterexample(&lambda, &c, "c^2 + (lambda - 1)c + lambda - lambda^3 <= 0"));
        }
    }
    Ok(samples)
}

/// Audits `c² > (c − λ)(1 − λ)` for `λ` in the non-brown covered range and
/// `c ∈ [λ, 2λ]`, the discriminant `(1 − λ)² − 4(λ − λ²) < 0`, and the guard
/// `(c − λ)² ≤ λ`.
pub fn blue_window_inequality(samples: usize, seed: u64) -> Result<usize, RegionError> {
    if samples == 0 {
        return Err(RegionError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Rational::one();
    for _ in 0..samples {
        let lambda = sample_lambda(&mut rng, &AuditRange::NonBrownPurple);
        let c = sample_in(&mut rng, &lambda, &(&lambda + &lambda));
        let d = &one - &lambda;
        let disc = &d * &d - rat(4, 1) * (&lambda - &lambda * &lambda);
        if disc >= Rational::zero() {
            return Err(counterexample(&lambda, &c, "discriminant is not negative"));
        }
        if &c * &c <= (&c - &lambda) * &d {
            return Err(counterexample(&lambda, &c, "c^2 <= (c - lambda)(1 - lambda)"));
        }
        let cl = &c - &lambda;
        if &cl * &cl > lambda {
            return Err(counterexample(&lambda, &c, "(c - lambda)^2 > lambda"));
        }
    }
    Ok(samples)
}
