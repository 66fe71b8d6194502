use num::{One, Zero};

use super::{check_nonnegative, show, ProductError};
use crate::ifs::{basic_intervals, IfsParams, Window};
use crate::numerics::{union_normalize, Interval, IntervalUnion, Rational};

/// Products of the child pieces of `I1 = [a, a + t]` and `I2 = [b, b + t]`
/// (`a ≥ b`), with `d = 1 − λ`:
///
/// ```text
/// J1 = [ab,            (a + ct)(b + ct)]
/// J2 = [b(a + dt),     (a + t)(b + ct)]
/// J3 = [a(b + dt),     (a + ct)(b + t)]
/// J4 = [(a + dt)(b + dt), (a + t)(b + t)]
/// ```
///
/// `e[k]` and `h[k]` are the left and right endpoints of `J(k+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRefinement {
    pub j1: Interval,
    pub j2: Interval,
    pub j3: Interval,
    pub j4: Interval,
    pub e: [Rational; 4],
    pub h: [Rational; 4],
}

impl ProductRefinement {
    pub fn parts(&self) -> [&Interval; 4] {
        [&self.j1, &self.j2, &self.j3, &self.j4]
    }

    /// `[h1 − e2, h2 − e3, h3 − e4]`; the refinement is stable iff all are `≥ 0`.
    pub fn margins(&self) -> [Rational; 3] {
        [0, 1, 2].map(|k| &self.h[k] - &self.e[k + 1])
    }

    pub fn is_stable(&self) -> bool {
        self.margins().iter().all(|m| m >= &Rational::zero())
    }

    pub fn union(&self) -> IntervalUnion {
        union_normalize(self.parts().map(Clone::clone))
    }
}

/// Validates the pair and returns `(a, b, t)`.
fn pair_shape(i1: &Interval, i2: &Interval) -> Result<(Rational, Rational, Rational), ProductError> {
    check_nonnegative(i1)?;
    check_nonnegative(i2)?;
    let t = i1.width();
    if t != i2.width() {
        return Err(ProductError::WidthMismatch(show(&t), show(&i2.width())));
    }
    if i1.lo() < i2.lo() {
        return Err(ProductError::OrderViolation(show(i1.lo()), show(i2.lo())));
    }
    Ok((i1.lo().clone(), i2.lo().clone(), t))
}

pub fn refine_product(p: &IfsParams, i1: &Interval, i2: &Interval) -> Result<ProductRefinement, ProductError> {
    let (a, b, t) = pair_shape(i1, i2)?;
    let c = p.c();
    let d = p.d();
    let act = &a + c * &t;
    let bct = &b + c * &t;
    let adt = &a + d * &t;
    let bdt = &b + d * &t;
    let at = &a + &t;
    let bt = &b + &t;
    let e = [&a * &b, &b * &adt, &a * &bdt, &adt * &bdt];
    let h = [&act * &bct, &at * &bct, &act * &bt, &at * &bt];
    let j = |k: usize| Interval::new_unchecked(e[k].clone(), h[k].clone());
    Ok(ProductRefinement {
        j1: j(0),
        j2: j(1),
        j3: j(2),
        j4: j(3),
        e,
        h,
    })
}

/// `h1 ≥ e2`, `h2 ≥ e3` and `h3 ≥ e4`, evaluated exactly. When true the
/// products of the children fill the parent product:
/// `f(Ĩ1, Ĩ2) = f(I1, I2)`.
pub fn stability_check(p: &IfsParams, i1: &Interval, i2: &Interval) -> Result<bool, ProductError> {
    Ok(refine_product(p, i1, i2)?.is_stable())
}

/// [`stability_check`] for an unordered pair.
pub fn pair_is_stable(p: &IfsParams, i1: &Interval, i2: &Interval) -> Result<bool, ProductError> {
    if i1.lo() >= i2.lo() {
        stability_check(p, i1, i2)
    } else {
        stability_check(p, i2, i1)
    }
}

/// The three stability margins in factored closed form:
///
/// ```text
/// h1 − e2 = t(c²t + ac + bc − bd)
/// h2 − e3 = t(ct + b + ac − ad)
/// h3 − e4 = t(a − d²t − ad + bc − bd + ct)
/// ```
pub fn stability_margins(p: &IfsParams, a: &Rational, b: &Rational, t: &Rational) -> [Rational; 3] {
    let c = p.c();
    let d = p.d();
    [
        t * (c * c * t + a * c + b * c - b * d),
        t * (c * t + b + a * c - a * d),
        t * (a - d * d * t - a * d + b * c - b * d + c * t),
    ]
}

/// Result of checking every ordered pair of level-`level` basic intervals
/// inside a window union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityAudit {
    pub level: usize,
    pub intervals: usize,
    pub pairs: usize,
    /// Smallest left endpoint among the intervals; pairs whose endpoints are
    /// at least `1 − c − λ` are covered by the closed-form margin argument.
    pub min_left: Rational,
    pub unstable: Vec<(Interval, Interval)>,
}

impl StabilityAudit {
    pub fn passed(&self) -> bool {
        self.unstable.is_empty()
    }

    pub fn above_threshold(&self, p: &IfsParams) -> bool {
        self.min_left >= Rational::one() - p.c() - p.lambda()
    }
}

/// Checks the stability inequalities for all pairs of basic intervals of the
/// given level lying in `windows`. Intended for small levels; the work is
/// quadratic in the number of intervals.
pub fn pairwise_stability_audit(
    p: &IfsParams,
    windows: &[Window],
    level: usize,
) -> Result<StabilityAudit, ProductError> {
    let mut ivs: Vec<Interval> = basic_intervals(p, level)
        .into_iter()
        .map(|(_, j)| j)
        .filter(|j| windows.iter().any(|w| w.interval().contains_interval(j)))
        .collect();
    ivs.sort();
    ivs.dedup();
    let min_left = ivs.first().map(|j| j.lo().clone()).unwrap_or_else(Rational::one);
    let mut unstable = Vec::new();
    let mut pairs = 0;
    for (k, i1) in ivs.iter().enumerate() {
        for i2 in &ivs[..=k] {
            pairs += 1;
            if !stability_check(p, i1, i2)? {
                unstable.push((i1.clone(), i2.clone()));
            }
        }
    }
    Ok(StabilityAudit {
        level,
        intervals: ivs.len(),
        pairs,
        min_left,
        unstable,
    })
}

/// Exact set equality between the refined union and the parent product.
#[cfg(test)]
pub(crate) fn refinement_fills_parent(r: &ProductRefinement, i1: &Interval, i2: &Interval) -> bool {
    match super::interval_product(i1, i2) {
        Ok(parent) => r.union().parts() == [parent],
        Err(_) => false,
    }
}
