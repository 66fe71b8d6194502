//! Multiplication on covers: interval products, the refinement stability
//! test, depth invariance of `F(G_n, G_n)`, and the coverage decisions built
//! on top of them.

mod coverage;
mod stability;

pub use coverage::{
    depth_audit, depth_invariance, refute_coverage, renormalized_coverage, Certificate, CoverageVerdict,
    DepthAudit,
};
pub use stability::{
    pair_is_stable, pairwise_stability_audit, refine_product, stability_check, stability_margins,
    ProductRefinement, StabilityAudit,
};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::ifs::IfsError;
use crate::numerics::{fmt_rational, union_normalize, Interval, IntervalUnion, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("interval {0} has a negative endpoint")]
    NegativeInput(String),
    #[error("intervals have different widths ({0} vs {1})")]
    WidthMismatch(String, String),
    #[error("left endpoints out of order: first {0} < second {1}")]
    OrderViolation(String, String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("outer approximation at level {level} meets the gap {gap}")]
    OuterMeetsGap { level: usize, gap: String },
    #[error(transparent)]
    Ifs(#[from] IfsError),
}

fn check_nonnegative(i: &Interval) -> Result<(), ProductError> {
    if i.lo() < &Rational::zero() {
        Err(ProductError::NegativeInput(i.to_string()))
    } else {
        Ok(())
    }
}

/// `{xy : x ∈ I1, y ∈ I2} = [lo1·lo2, hi1·hi2]` for nonnegative intervals.
pub fn interval_product(i1: &Interval, i2: &Interval) -> Result<Interval, ProductError> {
    check_nonnegative(i1)?;
    check_nonnegative(i2)?;
    Ok(Interval::new_unchecked(i1.lo() * i2.lo(), i1.hi() * i2.hi()))
}

/// Normalised union of all pairwise part products.
///
/// When each union has a common denominator under which every numerator fits
/// in a `u64`, the merge runs on exact `u128` numerators; otherwise it runs on
/// rationals. Both paths give the same union.
pub fn product_union(u1: &IntervalUnion, u2: &IntervalUnion) -> Result<IntervalUnion, ProductError> {
    for part in u1.parts().iter().chain(u2.parts()) {
        check_nonnegative(part)?;
    }
    if let (Some((rows, d1)), Some((cols, d2))) = (scaled_numerators(u1), scaled_numerators(u2)) {
        let den = BigInt::from(d1) * BigInt::from(d2);
        let merged = merge_rows(&rows, &cols, |x, y| u128::from(*x) * u128::from(*y));
        let q = |v: u128| Rational::new(BigInt::from(v), den.clone());
        return Ok(union_normalize(
            merged.into_iter().map(|(lo, hi)| Interval::new_unchecked(q(lo), q(hi))),
        ));
    }
    let rows: Vec<(Rational, Rational)> = u1.parts().iter().map(|p| (p.lo().clone(), p.hi().clone())).collect();
    let cols: Vec<(Rational, Rational)> = u2.parts().iter().map(|p| (p.lo().clone(), p.hi().clone())).collect();
    let merged = merge_rows(&rows, &cols, |x, y| x * y);
    Ok(union_normalize(
        merged.into_iter().map(|(lo, hi)| Interval::new_unchecked(lo, hi)),
    ))
}

/// Endpoints as `u64` numerators over the least common denominator.
fn scaled_numerators(u: &IntervalUnion) -> Option<(Vec<(u64, u64)>, u64)> {
    let mut den = BigInt::one();
    for part in u.parts() {
        den = den.lcm(part.lo().denom()).lcm(part.hi().denom());
    }
    let d = den.to_u64()?;
    let scale = |r: &Rational| (r.numer() * (&den / r.denom())).to_u64();
    let nums = u
        .parts()
        .iter()
        .map(|p| Some((scale(p.lo())?, scale(p.hi())?)))
        .collect::<Option<Vec<_>>>()?;
    Some((nums, d))
}

/// Union of `[mul(a.0, b.0), mul(a.1, b.1)]` over all row/column pairs.
///
/// Rows and columns are sorted with strictly increasing endpoints, so each
/// row of products is sorted by both endpoints. The rows are merged through a
/// heap keyed on the left endpoint. After each step the row cursor jumps, by
/// binary search, past every product whose right endpoint is already inside
/// the part being built; those products start no earlier than the current
/// one, so they add nothing.
fn merge_rows<T, P, F>(rows: &[(T, T)], cols: &[(T, T)], mul: F) -> Vec<(P, P)>
where
    P: Ord,
    F: Fn(&T, &T) -> P,
{
    let mut heap: BinaryHeap<Reverse<(P, usize, usize)>> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, a)| cols.first().map(|b| Reverse((mul(&a.0, &b.0), i, 0))))
        .collect();
    let mut parts: Vec<(P, P)> = Vec::new();
    let mut current: Option<(P, P)> = None;
    while let Some(Reverse((lo, i, j))) = heap.pop() {
        let a = &rows[i];
        let hi = mul(&a.1, &cols[j].1);
        current = match current.take() {
            Some((cur_lo, cur_hi)) if lo <= cur_hi => Some((cur_lo, cur_hi.max(hi))),
            Some(done) => {
                parts.push(done);
                Some((lo, hi))
            }
            None => Some((lo, hi)),
        };
        let reach = &current.as_ref().expect("set above").1;
        let next = j + 1 + cols[j + 1..].partition_point(|b| &mul(&a.1, &b.1) <= reach);
        if next < cols.len() {
            heap.push(Reverse((mul(&a.0, &cols[next].0), i, next)));
        }
    }
    parts.extend(current);
    parts
}

pub(crate) fn show(r: &Rational) -> String {
    fmt_rational(r)
}
