use num::{One, Zero};
use serde::Serialize;

use super::predicates::{brown_condition, classify_params, necessary_condition, NecessaryCondition, RegionLabel};
use super::RegionError;
use crate::ifs::{CoverBuilder, IfsParams, Window};
use crate::numerics::{fmt_rational, Rational};
use crate::product::{
    depth_audit, pairwise_stability_audit, product_union, refute_coverage, renormalized_coverage, CoverageVerdict,
    DepthAudit, StabilityAudit,
};

/// One named inequality checked along a route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Guard {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteReport {
    pub label: RegionLabel,
    pub windows: Vec<Window>,
    /// The closed-form left edge predicted for the base product.
    pub formula_m: Rational,
    pub guards: Vec<Guard>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub label: RegionLabel,
    pub necessary: NecessaryCondition,
    pub verdict: CoverageVerdict,
    pub route: Option<RouteReport>,
    pub stability: Option<StabilityAudit>,
    pub depth: Option<DepthAudit>,
}

/// Windows used by a covered route; `None` for the other labels.
pub fn route_windows(p: &IfsParams, label: RegionLabel) -> Option<Vec<Window>> {
    match label {
        RegionLabel::Brown => Some(vec![Window::top_branch(p)]),
        RegionLabel::Gray | RegionLabel::Orange => Some(vec![Window::upper_tail(p)]),
        RegionLabel::Blue => Some(vec![Window::middle_branch(p), Window::top_branch(p)]),
        RegionLabel::InvalidParams | RegionLabel::NecessaryFails => None,
    }
}

fn guard(name: &'static str, holds: bool) -> Guard {
    Guard { name, holds }
}

/// Route-specific inequalities and the predicted base edge.
fn route_guards(p: &IfsParams, label: RegionLabel) -> (Rational, Vec<Guard>) {
    let l = p.lambda();
    let c = p.c();
    let d = p.d();
    let l2 = l * l;
    let floor = Rational::one() - c - l;
    match label {
        RegionLabel::Brown => {
            let m = d * d;
            (m.clone(), vec![guard("lambda^2 - 3 lambda + 1 <= 0", brown_condition(l)), guard("m <= lambda", &m <= l)])
        }
        RegionLabel::Gray => {
            let m = (c - &l2) * d;
            (
                m.clone(),
                vec![
                    guard("c - lambda^2 >= 1 - c - lambda", c - &l2 >= floor),
                    guard("m <= lambda", &m <= l),
                ],
            )
        }
        RegionLabel::Orange => {
            let m = (c - &l2) * (c - &l2);
            let two_l_minus_l2 = l + l - &l2;
            (
                m.clone(),
                vec![
                    guard("c - lambda^2 >= 1 - c - lambda", c - &l2 >= floor),
                    guard("(2 lambda - lambda^2)^2 <= lambda", &two_l_minus_l2 * &two_l_minus_l2 <= *l),
                    guard("m <= lambda", &m <= l),
                ],
            )
        }
        RegionLabel::Blue => {
            let cl = c - l;
            let m = &cl * &cl;
            (
                m.clone(),
                vec![
                    guard("c^2 > (c - lambda)(1 - lambda)", c * c > &cl * d),
                    guard("c - lambda >= 1 - c - lambda", cl >= floor),
                    guard("m <= lambda", &m <= l),
                ],
            )
        }
        RegionLabel::InvalidParams | RegionLabel::NecessaryFails => (Rational::zero(), Vec::new()),
    }
}

/// Decides `K·K = [0, 1]` for admissible parameters and attaches evidence.
///
/// Outside the covered region the verdict is the gap `(c, (1 − λ)²)`, checked
/// against `F(E_n, E_n)` with `n = n_check`. Inside, the route's window gives
/// the base product `F(G_k0, G_k0)`; the route guards, the stability audit of
/// all base-level pairs, and the renormalisation step must all pass. The
/// depth audit compares `F(G_n, G_n)` for `n = k0..=n_check`.
pub fn verify_theorem(p: &IfsParams, n_check: usize) -> Result<TheoremReport, RegionError> {
    let label = classify_params(p);
    let necessary = necessary_condition(p);
    let Some(windows) = route_windows(p, label) else {
        let verdict = refute_coverage(p, n_check)?;
        return Ok(TheoremReport {
            label,
            necessary,
            verdict,
            route: None,
            stability: None,
            depth: None,
        });
    };
    let fail = |detail: String| RegionError::HypothesisFailure { route: label, detail };

    let (formula_m, mut guards) = route_guards(p, label);
    let base_level = windows.iter().map(Window::base_level).max().unwrap_or(1);
    let mut builder = CoverBuilder::new(p.clone());
    let base_cover = builder.cover(&windows, base_level)?;
    let base = product_union(&base_cover.union, &base_cover.union)?;
    let verdict = renormalized_coverage(p, &base);
    guards.push(guard("computed m <= formula m", verdict.m <= formula_m));

    let stability = pairwise_stability_audit(p, &windows, base_level)?;
    guards.push(guard("base pairs start at or above 1 - c - lambda", stability.above_threshold(p)));
    guards.push(guard("all base pairs stable", stability.passed()));

    let depth = depth_audit(p, &windows, n_check)?;
    guards.push(guard("depth invariance", depth.invariant));

    if let Some(g) = guards.iter().find(|g| !g.holds) {
        return Err(fail(format!(
            "{} (lambda={}, c={})",
            g.name,
            fmt_rational(p.lambda()),
            fmt_rational(p.c())
        )));
    }
    if !verdict.covered {
        return Err(fail(format!("renormalisation failed with m = {}", fmt_rational(&verdict.m))));
    }
    Ok(TheoremReport {
        label,
        necessary,
        verdict,
        route: Some(RouteReport {
            label,
            windows,
            formula_m,
            guards,
        }),
        stability: Some(stability),
        depth: Some(depth),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::validate_params;
    use crate::numerics::{parse_rational, rat, Interval};
    use crate::product::Certificate;

    fn params(l: &str, c: &str) -> IfsParams {
        validate_params(&parse_rational(l).unwrap(), &parse_rational(c).unwrap()).unwrap()
    }

    #[test]
    fn sharp_example_is_covered_via_gray() {
        let r = verify_theorem(&params("1/3", "4/9"), 4).unwrap();
        assert!(r.verdict.covered);
        assert_eq!(r.label, RegionLabel::Gray);
        assert_eq!(r.route.unwrap().formula_m, rat(2, 9));
        assert!(r.verdict.m <= rat(1, 3));
    }

    #[test]
    fn brown_example() {
        let r = verify_theorem(&params("0.45", "0.5"), 3).unwrap();
        assert!(r.verdict.covered);
        assert_eq!(r.label, RegionLabel::Brown);
        assert_eq!(r.verdict.m, rat(121, 400));
    }

    #[test]
    fn blue_example() {
        let r = verify_theorem(&params("0.3", "0.58"), 3).unwrap();
        assert!(r.verdict.covered);
        assert_eq!(r.label, RegionLabel::Blue);
        assert_eq!(r.route.unwrap().formula_m, rat(784, 10000));
    }

    #[test]
    fn orange_example() {
        let r = verify_theorem(&params("0.3", "0.597"), 3).unwrap();
        assert_eq!(r.label, RegionLabel::Orange);
        assert!(r.verdict.covered);
    }

    #[test]
    fn refuted_example() {
        let r = verify_theorem(&params("1/3", "0.43"), 4).unwrap();
        assert!(!r.verdict.covered);
        assert_eq!(
            r.verdict.certificate,
            Certificate::Gap {
                gap: Interval::new(rat(43, 100), rat(4, 9)).unwrap(),
                outer_level: 4
            }
        );
    }
}
