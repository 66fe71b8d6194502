use num::{One, Zero};
use serde::Serialize;

use super::{product_union, show, ProductError};
use crate::ifs::{CoverBuilder, IfsParams, Window};
use crate::numerics::{Interval, IntervalUnion, Rational};

/// Evidence attached to a [`CoverageVerdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `[m, 1]` lies in the base product and `m ≤ λ`, so
    /// `⋃_n λⁿ[m, 1] ∪ {0} = [0, 1]`.
    Renormalized,
    /// `m > λ`: the open interval `gap` misses the base product and every
    /// rescaled copy `λⁿ·base`, `n ≥ 1`.
    ScalingGap { gap: Interval },
    /// Open interval `(c, (1 − λ)²)` that avoids `K·K`; it was also checked to
    /// be disjoint from the outer approximation at `outer_level`.
    Gap { gap: Interval, outer_level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageVerdict {
    pub covered: bool,
    pub base_product: IntervalUnion,
    /// Left end of the component of `base_product` containing 1 (1 when no
    /// component contains it).
    pub m: Rational,
    pub certificate: Certificate,
}

/// Decides whether `{0} ∪ ⋃_{n≥0} λⁿ·base = [0, 1]`.
///
/// Only `base` itself can meet `(λ, 1]`, because `λⁿ·base ⊆ [0, λ]` for
/// `n ≥ 1`. So if `[m, 1]` is the component of `base` containing 1, points just
/// below `m` are uncovered when `m > λ`. When `m ≤ λ` the scaled copies
/// `λⁿ[m, 1]` overlap consecutively (`λⁿ m ≤ λⁿ⁺¹`) and fill `(0, 1]`, so the
/// gaps of `base` below `m` never need inspecting.
pub fn renormalized_coverage(p: &IfsParams, base: &IntervalUnion) -> CoverageVerdict {
    let one = Rational::one();
    let lambda = p.lambda();
    let Some(k) = base.part_containing(&one) else {
        let below = base.hull().map(|h| h.hi().clone()).unwrap_or_else(Rational::zero);
        let lo = if &below > lambda { below } else { lambda.clone() };
        return CoverageVerdict {
            covered: false,
            base_product: base.clone(),
            m: one.clone(),
            certificate: Certificate::ScalingGap {
                gap: Interval::new_unchecked(lo, one),
            },
        };
    };
    let m = base.parts()[k].lo().clone();
    if &m <= lambda {
        return CoverageVerdict {
            covered: true,
            base_product: base.clone(),
            m,
            certificate: Certificate::Renormalized,
        };
    }
    let prev_hi = if k > 0 { base.parts()[k - 1].hi().clone() } else { Rational::zero() };
    let lo = if &prev_hi > lambda { prev_hi } else { lambda.clone() };
    CoverageVerdict {
        covered: false,
        base_product: base.clone(),
        m: m.clone(),
        certificate: Certificate::ScalingGap {
            gap: Interval::new_unchecked(lo, m),
        },
    }
}

/// Refutes `K·K = [0, 1]` when `c < (1 − λ)²`.
///
/// `K ⊆ [0, c] ∪ [1 − λ, 1]`, so `K·K ⊆ [0, c] ∪ [(1 − λ)², 1]`. As a consistency
/// check the gap is compared against `F(E_n, E_n)`, which contains `K·K`.
pub fn refute_coverage(p: &IfsParams, n: usize) -> Result<CoverageVerdict, ProductError> {
    let d2 = p.d() * p.d();
    if p.c() >= &d2 {
        return Err(ProductError::PreconditionViolated(format!(
            "c = {} is not below (1 - lambda)^2 = {}",
            show(p.c()),
            show(&d2)
        )));
    }
    let gap = Interval::new_unchecked(p.c().clone(), d2.clone());
    let mut builder = CoverBuilder::with_max_level(p.clone(), n.max(crate::ifs::DEFAULT_MAX_LEVEL));
    let e_n = builder.full_cover(n).clone();
    let outer = product_union(&e_n, &e_n)?;
    let meets = outer.parts().iter().any(|part| part.hi() > gap.lo() && part.lo() < gap.hi());
    if meets {
        return Err(ProductError::OuterMeetsGap {
            level: n,
            gap: gap.to_string(),
        });
    }
    let m = outer
        .part_containing(&Rational::one())
        .map(|k| outer.parts()[k].lo().clone())
        .unwrap_or_else(Rational::one);
    Ok(CoverageVerdict {
        covered: false,
        base_product: outer,
        m,
        certificate: Certificate::Gap { gap, outer_level: n },
    })
}

/// `F(G_n, G_n)` for each level from the windows' base level to `n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthAudit {
    pub base_level: usize,
    pub n_max: usize,
    pub invariant: bool,
    /// First level whose product differs from the base-level product.
    pub first_change: Option<usize>,
    #[serde(skip)]
    pub products: Vec<IntervalUnion>,
}

pub fn depth_audit(p: &IfsParams, windows: &[Window], n_max: usize) -> Result<DepthAudit, ProductError> {
    let base_level = windows
        .iter()
        .map(Window::base_level)
        .max()
        .ok_or(crate::ifs::IfsError::NoWindows)?;
    let mut builder = CoverBuilder::with_max_level(p.clone(), n_max.max(crate::ifs::DEFAULT_MAX_LEVEL));
    let mut products = Vec::new();
    let mut first_change = None;
    for n in base_level..=n_max.max(base_level) {
        let g = builder.cover(windows, n)?;
        let prod = product_union(&g.union, &g.union)?;
        if first_change.is_none() && products.first().is_some_and(|b: &IntervalUnion| b != &prod) {
            first_change = Some(n);
        }
        products.push(prod);
    }
    Ok(DepthAudit {
        base_level,
        n_max: n_max.max(base_level),
        invariant: first_change.is_none(),
        first_change,
        products,
    })
}

/// True iff `F(G_n, G_n)` is the same union for every `n` in
/// `base_level..=n_max`.
pub fn depth_invariance(p: &IfsParams, windows: &[Window], n_max: usize) -> Result<bool, ProductError> {
    Ok(depth_audit(p, windows, n_max)?.invariant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::validate_params;
    use crate::numerics::{rat, union_normalize};

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn renormalization_examples() {
        let p = validate_params(&rat(9, 20), &rat(1, 2)).unwrap();
        let v = renormalized_coverage(&p, &IntervalUnion::single(iv(rat(121, 400), rat(1, 1))));
        assert!(v.covered);
        assert_eq!(v.m, rat(121, 400));

        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        let v = renormalized_coverage(&p, &IntervalUnion::single(iv(rat(4, 9), rat(1, 1))));
        assert!(!v.covered);
        assert_eq!(
            v.certificate,
            Certificate::ScalingGap {
                gap: iv(rat(1, 3), rat(4, 9))
            }
        );
        let v = renormalized_coverage(&p, &IntervalUnion::single(iv(rat(2, 9), rat(1, 1))));
        assert!(v.covered);
        assert_eq!(v.m, rat(2, 9));
    }

    #[test]
    fn gaps_below_m_do_not_matter() {
        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        let base = union_normalize([iv(rat(1, 9), rat(16, 81)), iv(rat(2, 9), rat(1, 1))]);
        let v = renormalized_coverage(&p, &base);
        assert!(v.covered);
        assert_eq!(v.m, rat(2, 9));
    }

    #[test]
    fn scaling_gap_starts_after_previous_part() {
        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        let base = union_normalize([iv(rat(1, 10), rat(2, 5)), iv(rat(1, 2), rat(1, 1))]);
        let v = renormalized_coverage(&p, &base);
        assert_eq!(
            v.certificate,
            Certificate::ScalingGap {
                gap: iv(rat(2, 5), rat(1, 2))
            }
        );
    }

    #[test]
    fn refutation_examples() {
        let p = validate_params(&rat(1, 3), &rat(43, 100)).unwrap();
        let v = refute_coverage(&p, 5).unwrap();
        assert!(!v.covered);
        assert_eq!(
            v.certificate,
            Certificate::Gap {
                gap: iv(rat(43, 100), rat(4, 9)),
                outer_level: 5
            }
        );

        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        assert!(matches!(refute_coverage(&p, 3), Err(ProductError::PreconditionViolated(_))));

        let p = validate_params(&rat(27, 100), &rat(53, 100)).unwrap();
        let v = refute_coverage(&p, 4).unwrap();
        assert_eq!(
            v.certificate,
            Certificate::Gap {
                gap: iv(rat(53, 100), rat(5329, 10000)),
                outer_level: 4
            }
        );
    }

    #[test]
    fn depth_invariance_examples() {
        let p = validate_params(&rat(1, 3), &rat(4, 9)).unwrap();
        let top = [Window::top_branch(&p)];
        assert!(depth_invariance(&p, &top, 6).unwrap());
        assert!(depth_invariance(&p, &top, 1).unwrap());

        let p = validate_params(&rat(1, 3), &rat(34, 100)).unwrap();
        let audit = depth_audit(&p, &[Window::top_branch(&p)], 4).unwrap();
        assert!(!audit.invariant);
        assert!(audit.first_change.is_some());
    }

    #[test]
    fn outer_products_are_nested() {
        let p = validate_params(&rat(3, 10), &rat(29, 50)).unwrap();
        let audit = depth_audit(&p, &[Window::unit()], 6).unwrap();
        for w in audit.products.windows(2) {
            assert!(w[1].is_subset_of(&w[0]));
        }
    }
}
