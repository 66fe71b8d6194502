use num::{One, Signed, Zero};

use super::mpoly::BiPoly;
use super::{BoxCertificate, BoxVerdict, Leaf, Multiplier};
use crate::numerics::{rat, Interval, IntegerPolynomial, Rational};
use crate::region::RegionError;

/// Subdivision depth used when none is given.
pub const DEFAULT_BLUE_DEPTH: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlueLemmaOptions {
    /// Maximum number of splits along any branch.
    pub depth: usize,
    /// Allow multiplier certificates on boxes left open at the depth cap.
    pub dual: bool,
}

impl Default for BlueLemmaOptions {
    fn default() -> Self {
        Self {
            depth: DEFAULT_BLUE_DEPTH,
            dual: true,
        }
    }
}

/// The constraints `g_k ≥ 0` (numbered from 1) describing the closure of the
/// blue region:
///
/// 1. `4λ − λ² − 1` (`λ ≥ 2 − √3`)
/// 2. `λ² − 3λ + 1` (`λ ≤ (3 − √5)/2`)
/// 3. `c − (1 − λ)²`
/// 4. `2λ − c`
/// 5. `(c − λ²)(1 − λ) − c²`
/// 6. `c(1 − λ) − λ²(1 − λ) − λ`
pub(crate) fn constraints() -> Vec<BiPoly> {
    let l = BiPoly::lambda();
    let c = BiPoly::c();
    let k = |r: Rational| BiPoly::constant(r);
    let one = k(Rational::one());
    let d = &one - &l;
    let l2 = &l * &l;
    vec![
        &(&l.scale(&rat(4, 1)) - &l2) - &one,
        &(&l2 - &l.scale(&rat(3, 1))) + &one,
        &c - &(&d * &d),
        &l.scale(&rat(2, 1)) - &c,
        &(&(&c - &l2) * &d) - &(&c * &c),
        &(&(&c * &d) - &(&l2 * &d)) - &l,
    ]
}

pub(crate) const CONSTRAINT_NAMES: [&str; 6] = [
    "4*lambda - lambda^2 - 1 >= 0",
    "lambda^2 - 3*lambda + 1 >= 0",
    "c - (1 - lambda)^2 >= 0",
    "2*lambda - c >= 0",
    "(c - lambda^2)*(1 - lambda) - c^2 >= 0",
    "c*(1 - lambda) - lambda^2*(1 - lambda) - lambda >= 0",
];

/// Root box `[λ0, λ1] × [0, 1]` where `λ0 ≤ 2 − √3` and `λ1 ≥ (3 − √5)/2` are
/// endpoints of certified root enclosures.
pub fn blue_lemma_root_box() -> Result<(Interval, Interval), RegionError> {
    let precision = rat(1, 1 << 30);
    let lower = IntegerPolynomial::new([1, -4, 1])?.isolate_smallest_root(&Interval::unit(), &precision)?;
    let upper = IntegerPolynomial::new([1, -3, 1])?.isolate_smallest_root(&Interval::unit(), &precision)?;
    Ok((
        Interval::new_unchecked(lower.lo().clone(), upper.hi().clone()),
        Interval::unit(),
    ))
}

struct Prover {
    target: Rational,
    options: BlueLemmaOptions,
    /// `(g, ∂g/∂λ, ∂g/∂c)` for each constraint.
    constraints: Vec<(BiPoly, BiPoly, BiPoly)>,
}

impl Prover {
    /// Upper bound of `g` on the box. Where a partial derivative has constant
    /// sign the box is collapsed to the maximising face first.
    fn upper_bound(&self, k: usize, l: &Interval, c: &Interval) -> Rational {
        let (g, gl, gc) = &self.constraints[k];
        let face = |deriv: &BiPoly, side: &Interval| {
            let e = deriv.enclose(l, c);
            if !e.lo().is_negative() {
                Interval::point(side.hi().clone())
            } else if !e.hi().is_positive() {
                Interval::point(side.lo().clone())
            } else {
                side.clone()
            }
        };
        let lf = face(gl, l);
        let cf = face(gc, c);
        g.enclose(&lf, &cf).hi().clone()
    }

    fn decide(&self, l: &Interval, c: &Interval) -> Option<BoxVerdict> {
        if c.lo() >= &self.target {
            return Some(BoxVerdict::Holds);
        }
        (0..self.constraints.len())
            .find(|&k| self.upper_bound(k, l, c).is_negative())
            .map(|k| BoxVerdict::Infeasible { constraint: k + 1 })
    }

    fn solve(&self, l: Interval, c: Interval, path: String) -> Vec<Leaf> {
        if let Some(verdict) = self.decide(&l, &c) {
            return vec![Leaf { path, lambda: l, c, verdict }];
        }
        if path.len() >= self.options.depth {
            let verdict = if self.options.dual {
                self.find_multipliers(&l, &c).unwrap_or(BoxVerdict::Undecided)
            } else {
                BoxVerdict::Undecided
            };
            return vec![Leaf { path, lambda: l, c, verdict }];
        }
        let (first, second) = if l.width() > c.width() {
            let mid = l.midpoint();
            (
                (Interval::new_unchecked(l.lo().clone(), mid.clone()), c.clone(), format!("{path}l")),
                (Interval::new_unchecked(mid, l.hi().clone()), c, format!("{path}L")),
            )
        } else {
            let mid = c.midpoint();
            (
                (l.clone(), Interval::new_unchecked(c.lo().clone(), mid.clone()), format!("{path}c")),
                (l, Interval::new_unchecked(mid, c.hi().clone()), format!("{path}C")),
            )
        };
        let (mut a, b) = rayon::join(
            || self.solve(first.0, first.1, first.2),
            || self.solve(second.0, second.1, second.2),
        );
        a.extend(b);
        a
    }

    /// Looks for `c − target = Σ σ_k g_k` with each `σ_k` affine in `λ` and
    /// nonnegative on the box, trying single constraints and then pairs. Such an
    /// identity shows `c ≥ target` on the part of the box where all `g_k ≥ 0`.
    fn find_multipliers(&self, l: &Interval, c: &Interval) -> Option<BoxVerdict> {
        let n = self.constraints.len();
        let goal = &BiPoly::c() - &BiPoly::constant(self.target.clone());
        let subsets = (0..n).map(|k| vec![k]).chain((0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])));
        for subset in subsets {
            let columns: Vec<BiPoly> = subset
                .iter()
                .flat_map(|&k| {
                    let g = &self.constraints[k].0;
                    [g.clone(), &BiPoly::lambda() * g]
                })
                .collect();
            let Some(x) = solve_linear(&columns, &goal) else {
                continue;
            };
            let multipliers: Vec<(usize, BiPoly)> = subset
                .iter()
                .enumerate()
                .map(|(s, &k)| {
                    let sigma = BiPoly::from_terms([(0, 0, x[2 * s].clone()), (1, 0, x[2 * s + 1].clone())]);
                    (k, sigma)
                })
                .filter(|(_, sigma)| !sigma.is_zero())
                .collect();
            let nonnegative = multipliers.iter().all(|(_, s)| !s.enclose(l, c).lo().is_negative());
            let residual = multipliers
                .iter()
                .fold(goal.clone(), |acc, (k, s)| &acc - &(s * &self.constraints[*k].0));
            if nonnegative && residual.is_zero() {
                return Some(BoxVerdict::Dual {
                    multipliers: multipliers
                        .into_iter()
                        .map(|(k, s)| Multiplier {
                            constraint: k + 1,
                            terms: s.terms().map(|(i, j, a)| (i, j, a.clone())).collect(),
                        })
                        .collect(),
                });
            }
        }
        None
    }
}

/// Exact solution of `Σ x_k · columns[k] = goal` coefficientwise, with free
/// variables set to zero; `None` when inconsistent.
fn solve_linear(columns: &[BiPoly], goal: &BiPoly) -> Option<Vec<Rational>> {
    let mut monomials: Vec<(u32, u32)> = columns
        .iter()
        .chain(std::iter::once(goal))
        .flat_map(|p| p.terms().map(|(i, j, _)| (i, j)).collect::<Vec<_>>())
        .collect();
    monomials.sort_unstable();
    monomials.dedup();
    let ncols = columns.len();
    let mut rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|&(i, j)| {
            let mut row: Vec<Rational> = columns.iter().map(|p| p.coeff(i, j)).collect();
            row.push(goal.coeff(i, j));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row[col..=ncols].iter_mut().zip(&pivot_row[col..=ncols]) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][ncols].clone();
    }
    Some(x)
}

pub fn certify_blue_lemma(depth: usize) -> Result<BoxCertificate, RegionError> {
    certify_blue_lemma_with(BlueLemmaOptions { depth, dual: true })
}

/// Subdivides the root box until every leaf is decided: either `c ≥ 1/2`
/// holds on the whole box, some constraint is negative on the whole box, or
/// (at the depth cap, when enabled) a multiplier identity applies. Leaves
/// are listed in path order.
pub fn certify_blue_lemma_with(options: BlueLemmaOptions) -> Result<BoxCertificate, RegionError> {
    if options.depth == 0 {
        return Err(RegionError::ZeroDepth);
    }
    let (l, c) = blue_lemma_root_box()?;
    let prover = Prover {
        target: rat(1, 2),
        options,
        constraints: constraints()
            .into_iter()
            .map(|g| {
                let gl = g.d_lambda();
                let gc = g.d_c();
                (g, gl, gc)
            })
            .collect(),
    };
    let leaves = prover.solve(l.clone(), c.clone(), String::new());
    let undecided: Vec<(Interval, Interval)> = leaves
        .iter()
        .filter(|leaf| leaf.verdict == BoxVerdict::Undecided)
        .map(|leaf| (leaf.lambda.clone(), leaf.c.clone()))
        .collect();
    if !undecided.is_empty() {
        return Err(RegionError::Undecided {
            count: undecided.len(),
            boxes: undecided,
        });
    }
    Ok(BoxCertificate {
        lambda_range: l,
        c_range: c,
        target: prover.target,
        depth: options.depth,
        leaves,
    })
}
