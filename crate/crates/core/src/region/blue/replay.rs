//! Independent checker for box certificates.
//!
//! Nothing here reuses the prover's polynomial type or bounding strategy:
//! the constraints are written once over a small ring abstraction and
//! evaluated on exact rationals, on plain interval arithmetic, and on a
//! separate sparse polynomial type used to check multiplier identities.
//! Where plain interval bounds are too loose the checker bisects the leaf
//! itself instead of trusting any bound from the certificate.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use thiserror::Error;

use super::{parse_pair, CertificateFile, VerdictFile, CERTIFICATE_FORMAT};
use crate::numerics::{parse_rational, Rational};

/// Bisection levels the checker may spend on a single leaf.
const REPLAY_SPLITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("malformed certificate: {0}")]
    Parse(String),
    #[error("root box does not enclose the claimed region: {0}")]
    RootBox(String),
    #[error("leaves do not tile the root box: {0}")]
    Tiling(String),
    #[error("leaf {path}: {reason}")]
    Leaf { path: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReplayReport {
    pub leaves: usize,
    pub holds: usize,
    pub infeasible: usize,
    pub dual: usize,
    /// Leaves the checker had to bisect before its own bounds were conclusive.
    pub bisected: usize,
}

trait Ring: Clone {
    fn cst(r: Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;

    fn int(k: i64) -> Self {
        Self::cst(Rational::from_integer(k.into()))
    }
}

impl Ring for Rational {
    fn cst(r: Rational) -> Self {
        r
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

/// Closed interval with textbook interval arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Span {
    lo: Rational,
    hi: Rational,
}

impl Span {
    fn new(lo: Rational, hi: Rational) -> Self {
        Span { lo, hi }
    }

    fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    fn halves(&self) -> (Span, Span) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        (Span::new(self.lo.clone(), mid.clone()), Span::new(mid, self.hi.clone()))
    }
}

impl Ring for Span {
    fn cst(r: Rational) -> Self {
        Span::new(r.clone(), r)
    }
    fn plus(&self, o: &Self) -> Self {
        Span::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
    fn minus(&self, o: &Self) -> Self {
        Span::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
    fn times(&self, o: &Self) -> Self {
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = cands.iter().min().expect("four candidates").clone();
        let hi = cands.iter().max().expect("four candidates").clone();
        Span::new(lo, hi)
    }
}

/// Sparse polynomial in `(λ, c)`: exponent pair to coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Poly(BTreeMap<(u32, u32), Rational>);

impl Poly {
    fn var(i: u32, j: u32) -> Self {
        Poly(BTreeMap::from([((i, j), Rational::one())]))
    }

    fn cleaned(mut self) -> Self {
        self.0.retain(|_, a| !a.is_zero());
        self
    }
}

impl Ring for Poly {
    fn cst(r: Rational) -> Self {
        Poly(BTreeMap::from([((0, 0), r)])).cleaned()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, a) in &o.0 {
            *out.entry(*k).or_insert_with(Rational::zero) += a;
        }
        Poly(out).cleaned()
    }
    fn minus(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, a) in &o.0 {
            *out.entry(*k).or_insert_with(Rational::zero) -= a;
        }
        Poly(out).cleaned()
    }
    fn times(&self, o: &Self) -> Self {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i1, j1), a) in &self.0 {
            for ((i2, j2), b) in &o.0 {
                *out.entry((i1 + i2, j1 + j2)).or_insert_with(Rational::zero) += a * b;
            }
        }
        Poly(out).cleaned()
    }
}

/// Constraint `k` (numbered from 1) of the region, or `None` for an unknown index.
fn constraint<R: Ring>(k: usize, l: &R, c: &R) -> Option<R> {
    let one = R::int(1);
    let ll = l.times(l);
    let d = one.minus(l);
    Some(match k {
        1 => R::int(4).times(l).minus(&ll).minus(&one),
        2 => ll.minus(&R::int(3).times(l)).plus(&one),
        3 => c.minus(&d.times(&d)),
        4 => R::int(2).times(l).minus(c),
        5 => c.minus(&ll).times(&d).minus(&c.times(c)),
        6 => c.times(&d).minus(&ll.times(&d)).minus(l),
        _ => return None,
    })
}

fn monomials<R: Ring>(terms: &[(u32, u32, Rational)], l: &R, c: &R) -> R {
    terms.iter().fold(R::int(0), |acc, (i, j, a)| {
        let mut m = R::cst(a.clone());
        for _ in 0..*i {
            m = m.times(l);
        }
        for _ in 0..*j {
            m = m.times(c);
        }
        acc.plus(&m)
    })
}

/// True when `pred` holds on every piece of a bisection of the box, splitting
/// the wider side, with at most `budget` levels. Returns `(ok, bisected)`.
fn on_all_pieces(l: &Span, c: &Span, budget: usize, pred: &dyn Fn(&Span, &Span) -> bool) -> (bool, bool) {
    if pred(l, c) {
        return (true, false);
    }
    if budget == 0 {
        return (false, true);
    }
    let (a, b) = if l.width() >= c.width() {
        let (l1, l2) = l.halves();
        ((l1, c.clone()), (l2, c.clone()))
    } else {
        let (c1, c2) = c.halves();
        ((l.clone(), c1), (l.clone(), c2))
    };
    let ok = on_all_pieces(&a.0, &a.1, budget - 1, pred).0 && on_all_pieces(&b.0, &b.1, budget - 1, pred).0;
    (ok, true)
}

fn box_from_path(root_l: &Span, root_c: &Span, path: &str) -> Result<(Span, Span), ReplayError> {
    let mut l = root_l.clone();
    let mut c = root_c.clone();
    for ch in path.chars() {
        match ch {
            'l' => l = l.halves().0,
            'L' => l = l.halves().1,
            'c' => c = c.halves().0,
            'C' => c = c.halves().1,
            other => return Err(ReplayError::Tiling(format!("unknown split symbol {other:?} in {path:?}"))),
        }
    }
    Ok((l, c))
}

/// Checks that the paths are the leaves of a full binary split tree.
fn check_tree(paths: &BTreeSet<String>, prefix: &str) -> Result<(), ReplayError> {
    let mut below = paths.range(prefix.to_string()..).take_while(|p| p.starts_with(prefix));
    let Some(first) = below.next() else {
        return Err(ReplayError::Tiling(format!("no leaf covers the box at {prefix:?}")));
    };
    if first == prefix {
        return match below.next() {
            Some(deeper) => Err(ReplayError::Tiling(format!("leaf {prefix:?} overlaps leaf {deeper:?}"))),
            None => Ok(()),
        };
    }
    let axis = first[prefix.len()..].chars().next().expect("longer than prefix");
    let (lo, hi) = match axis {
        'l' | 'L' => ('l', 'L'),
        'c' | 'C' => ('c', 'C'),
        other => return Err(ReplayError::Tiling(format!("unknown split symbol {other:?}"))),
    };
    for p in paths.range(prefix.to_string()..).take_while(|p| p.starts_with(prefix)) {
        let next = p[prefix.len()..].chars().next().expect("proper extension");
        if next != lo && next != hi {
            return Err(ReplayError::Tiling(format!("mixed split axes below {prefix:?}")));
        }
    }
    check_tree(paths, &format!("{prefix}{lo}"))?;
    check_tree(paths, &format!("{prefix}{hi}"))
}

pub fn replay_certificate(file: &CertificateFile) -> Result<ReplayReport, ReplayError> {
    if file.format != CERTIFICATE_FORMAT {
        return Err(ReplayError::Parse(format!("unsupported format {:?}", file.format)));
    }
    let target = parse_rational(&file.target).map_err(|e| ReplayError::Parse(e.to_string()))?;
    if target != Rational::new(1.into(), 2.into()) {
        return Err(ReplayError::Parse(format!("certificate targets c >= {}, expected 1/2", file.target)));
    }

    // The root must contain every point of the region: λ0 ≤ 2 − √3,
    // λ1 ≥ (3 − √5)/2, and c ∈ [0, 1] (the region has (1 − λ)² ≤ c ≤ 2λ < 1).
    let (l0, l1) = parse_pair(&file.lambda_range)?;
    let (c0, c1) = parse_pair(&file.c_range)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let below_first_root = l0 < Rational::new(3.into(), 10.into())
        && constraint(1, &l0, &zero).is_some_and(|g| !g.is_positive());
    let above_second_root = l1 < one && constraint(2, &l1, &zero).is_some_and(|g| !g.is_positive());
    if !below_first_root || !above_second_root || l0.is_negative() {
        return Err(ReplayError::RootBox(format!("lambda range [{}, {}]", file.lambda_range[0], file.lambda_range[1])));
    }
    if c0 > zero || c1 < one {
        return Err(ReplayError::RootBox(format!("c range [{}, {}]", file.c_range[0], file.c_range[1])));
    }
    let root_l = Span::new(l0, l1);
    let root_c = Span::new(c0, c1);

    let paths: BTreeSet<String> = file.leaves.iter().map(|l| l.path.clone()).collect();
    if paths.len() != file.leaves.len() {
        return Err(ReplayError::Tiling("duplicate leaf paths".into()));
    }
    check_tree(&paths, "")?;

    let goal = Poly::var(0, 1).minus(&Poly::cst(target.clone()));
    let mut report = ReplayReport {
        leaves: file.leaves.len(),
        ..ReplayReport::default()
    };
    for leaf in &file.leaves {
        let fail = |reason: String| ReplayError::Leaf {
            path: leaf.path.clone(),
            reason,
        };
        let (l, c) = box_from_path(&root_l, &root_c, &leaf.path)?;
        let (ll, lh) = parse_pair(&leaf.lambda)?;
        let (cl, ch) = parse_pair(&leaf.c)?;
        if l != Span::new(ll, lh) || c != Span::new(cl, ch) {
            return Err(fail("stated box does not match its path".into()));
        }
        match &leaf.verdict {
            VerdictFile::Holds => {
                if c.lo < target {
                    return Err(fail("c lower bound is below the target".into()));
                }
                report.holds += 1;
            }
            VerdictFile::Infeasible { constraint: k } => {
                if constraint::<Rational>(*k, &zero, &zero).is_none() {
                    return Err(fail(format!("unknown constraint {k}")));
                }
                let negative = |l: &Span, c: &Span| constraint(*k, l, c).is_some_and(|g: Span| g.hi.is_negative());
                let (ok, bisected) = on_all_pieces(&l, &c, REPLAY_SPLITS, &negative);
                if !ok {
                    return Err(fail(format!("constraint {k} not shown negative")));
                }
                report.bisected += usize::from(bisected);
                report.infeasible += 1;
            }
            VerdictFile::Dual { multipliers } => {
                let mut sum = Poly::default();
                let mut sigmas = Vec::new();
                for m in multipliers {
                    let terms = m
                        .terms
                        .iter()
                        .map(|(i, j, a)| parse_rational(a).map(|a| (*i, *j, a)))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| ReplayError::Parse(e.to_string()))?;
                    let g = constraint(m.constraint, &Poly::var(1, 0), &Poly::var(0, 1))
                        .ok_or_else(|| fail(format!("unknown constraint {}", m.constraint)))?;
                    let sigma = monomials(&terms, &Poly::var(1, 0), &Poly::var(0, 1));
                    sum = sum.plus(&sigma.times(&g));
                    sigmas.push(terms);
                }
                if goal.minus(&sum) != Poly::default() {
                    return Err(fail("multiplier identity does not reduce to zero".into()));
                }
                let mut any_bisected = false;
                for terms in &sigmas {
                    let nonneg = |l: &Span, c: &Span| !monomials(terms, l, c).lo.is_negative();
                    let (ok, bisected) = on_all_pieces(&l, &c, REPLAY_SPLITS, &nonneg);
                    if !ok {
                        return Err(fail("a multiplier is not shown nonnegative".into()));
                    }
                    any_bisected |= bisected;
                }
                report.bisected += usize::from(any_bisected);
                report.dual += 1;
            }
            VerdictFile::Undecided => return Err(fail("undecided".into())),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{certify_blue_lemma, LeafFile, MultiplierFile};
    use super::*;

    fn small_certificate() -> CertificateFile {
        certify_blue_lemma(10).unwrap().to_file()
    }

    #[test]
    fn honest_certificate_replays() {
        let file = small_certificate();
        let report = replay_certificate(&file).unwrap();
        assert_eq!(report.leaves, file.leaves.len());
        assert_eq!(report.holds + report.infeasible + report.dual, report.leaves);
    }

    #[test]
    fn dropped_leaf_breaks_tiling() {
        let mut file = small_certificate();
        file.leaves.remove(file.leaves.len() / 2);
        assert!(matches!(replay_certificate(&file), Err(ReplayError::Tiling(_))));
    }

    #[test]
    fn wrong_verdicts_are_caught() {
        let file = small_certificate();
        // claim "holds" on a box reaching below c = 1/2
        let mut bad = file.clone();
        let k = bad.leaves.iter().position(|l| !matches!(l.verdict, VerdictFile::Holds)).unwrap();
        bad.leaves[k].verdict = VerdictFile::Holds;
        assert!(matches!(replay_certificate(&bad), Err(ReplayError::Leaf { .. })));

        // claim infeasibility of a constraint that holds on the box
        let mut bad = file.clone();
        let k = bad
            .leaves
            .iter()
            .position(|l| matches!(l.verdict, VerdictFile::Holds))
            .unwrap();
        bad.leaves[k].verdict = VerdictFile::Infeasible { constraint: 1 };
        let err = replay_certificate(&bad);
        assert!(matches!(err, Err(ReplayError::Leaf { .. })), "{err:?}");

        // tamper with a multiplier coefficient
        let mut bad = file;
        let k = bad
            .leaves
            .iter()
            .position(|l| matches!(l.verdict, VerdictFile::Dual { .. }))
            .unwrap();
        let LeafFile { verdict, .. } = &mut bad.leaves[k];
        if let VerdictFile::Dual { multipliers } = verdict {
            let MultiplierFile { terms, .. } = &mut multipliers[0];
            terms[0].2 = "1/3".into();
        }
        assert!(matches!(replay_certificate(&bad), Err(ReplayError::Leaf { .. })));
    }

    #[test]
    fn root_box_must_cover_the_region() {
        let mut file = small_certificate();
        file.lambda_range[0] = "3/10".into();
        assert!(matches!(replay_certificate(&file), Err(ReplayError::RootBox(_))));
    }

    #[test]
    fn constraint_forms_agree_with_points() {
        let (l, c) = (Rational::new(3.into(), 10.into()), Rational::new(29.into(), 50.into()));
        for k in 1..=6 {
            let at_point: Rational = constraint(k, &l, &c).unwrap();
            let as_span: Span = constraint(k, &Span::cst(l.clone()), &Span::cst(c.clone())).unwrap();
            assert_eq!(as_span, Span::cst(at_point));
        }
    }
}
