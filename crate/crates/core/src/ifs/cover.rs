use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use super::word::{Symbol, Word};
use super::{IfsError, IfsParams};
use crate::numerics::{fmt_rational, max_of, min_of, pow, union_normalize, Interval, IntervalUnion, Rational};

/// Default cap on cover levels. Endpoint bit sizes grow linearly with the
/// level, and the number of parts can grow geometrically for small `λ`.
pub const DEFAULT_MAX_LEVEL: usize = 24;

/// The three child basic intervals `f_w1(I), f_w2(I), f_w3(I)` of a basic
/// interval `J = f_w(I)`, in symbol order.
pub fn child_intervals(p: &IfsParams, j: &Interval) -> [Interval; 3] {
    let t = j.width();
    Symbol::ALL.map(|s| {
        let lo = j.lo() + &t * p.translation(s);
        let hi = &lo + &t * p.lambda();
        Interval::new_unchecked(lo, hi)
    })
}

/// The child set `Ĩ` of a basic interval `J`. For admissible parameters this
/// is `[a, a + ct] ∪ [a + dt, a + t]` where `J = [a, a + t]`.
pub fn children(p: &IfsParams, j: &Interval) -> IntervalUnion {
    union_normalize(child_intervals(p, j))
}

/// All `3^level` basic intervals of the given level with their codings, in
/// lexicographic word order.
pub fn basic_intervals(p: &IfsParams, level: usize) -> Vec<(Word, Interval)> {
    let mut out = vec![(Word::empty(), Interval::unit())];
    for _ in 0..level {
        out = out
            .into_iter()
            .flat_map(|(w, j)| {
                let kids = child_intervals(p, &j);
                Symbol::ALL.into_iter().zip(kids).map(move |(s, k)| (w.child(s), k))
            })
            .collect();
    }
    out
}

/// A window `[a, b]` whose endpoints are endpoints of basic intervals of
/// level `base_level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    a: Rational,
    b: Rational,
    base_level: usize,
}

impl Window {
    /// Validates the endpoints by enumerating the `3^base_level` basic intervals,
    /// so `base_level` should stay small.
    pub fn new(p: &IfsParams, a: Rational, b: Rational, base_level: usize) -> Result<Self, IfsError> {
        let bad = || IfsError::BadWindow {
            a: fmt_rational(&a),
            b: fmt_rational(&b),
            level: base_level,
        };
        if a >= b {
            return Err(bad());
        }
        let endpoints: BTreeSet<Rational> = basic_intervals(p, base_level)
            .into_iter()
            .flat_map(|(_, j)| [j.lo().clone(), j.hi().clone()])
            .collect();
        if !endpoints.contains(&a) || !endpoints.contains(&b) {
            return Err(bad());
        }
        Ok(Self { a, b, base_level })
    }

    /// `[0, 1]` at level 1.
    pub fn unit() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::one(),
            base_level: 1,
        }
    }

    /// `f3(I) = [1 − λ, 1]` at level 1.
    pub fn top_branch(p: &IfsParams) -> Self {
        Self {
            a: p.d().clone(),
            b: Rational::one(),
            base_level: 1,
        }
    }

    /// `f2(I) = [c − λ, c]` at level 1.
    pub fn middle_branch(p: &IfsParams) -> Self {
        Self {
            a: p.c() - p.lambda(),
            b: p.c().clone(),
            base_level: 1,
        }
    }

    /// `[c − λ², 1]` at level 2; `c − λ²` is the left end of `f23(I)`.
    pub fn upper_tail(p: &IfsParams) -> Self {
        Self {
            a: p.c() - p.lambda() * p.lambda(),
            b: Rational::one(),
            base_level: 2,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn base_level(&self) -> usize {
        self.base_level
    }

    pub fn interval(&self) -> Interval {
        Interval::new_unchecked(self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]@{}", fmt_rational(&self.a), fmt_rational(&self.b), self.base_level)
    }
}

/// `G_n` for a union of windows: the union of the level-`n` basic intervals
/// that lie inside one of the windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub level: usize,
    pub windows: Vec<Window>,
    pub union: IntervalUnion,
    /// Number of codings of length `level` whose interval lies in a window.
    pub piece_count: u64,
}

/// Builds covers for one parameter pair, memoising the full covers `E_r`.
#[derive(Debug, Clone)]
pub struct CoverBuilder {
    params: IfsParams,
    max_level: usize,
    full: Vec<IntervalUnion>,
}

impl CoverBuilder {
    pub fn new(params: IfsParams) -> Self {
        Self::with_max_level(params, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(params: IfsParams, max_level: usize) -> Self {
        Self {
            params,
            max_level,
            full: vec![IntervalUnion::single(Interval::unit())],
        }
    }

    pub fn params(&self) -> &IfsParams {
        &self.params
    }

    /// `E_r`, the union of all basic intervals of level `r`.
    pub fn full_cover(&mut self, r: usize) -> &IntervalUnion {
        while self.full.len() <= r {
            let prev = self.full.last().expect("E_0 is always present");
            let lambda = self.params.lambda();
            let next = union_normalize(
                self.params
                    .translations()
                    .iter()
                    .flat_map(|t| prev.affine(lambda, t).into_parts()),
            );
            self.full.push(next);
        }
        &self.full[r]
    }

    pub fn cover(&mut self, windows: &[Window], level: usize) -> Result<Cover, IfsError> {
        let base = windows.iter().map(Window::base_level).max().ok_or(IfsError::NoWindows)?;
        if level < base {
            return Err(IfsError::LevelBelowBase { level, base });
        }
        if level > self.max_level {
            return Err(IfsError::LevelAboveCap {
                level,
                cap: self.max_level,
            });
        }
        let mut raw = Vec::new();
        let mut count = 0u64;
        for w in windows {
            self.collect(&w.interval(), &Interval::unit(), level, &mut raw, &mut count);
        }
        Ok(Cover {
            level,
            windows: windows.to_vec(),
            union: union_normalize(raw),
            piece_count: count,
        })
    }

    /// Adds the level-`(depth of j) + r` basic intervals inside `j ∩ window`.
    fn collect(&mut self, window: &Interval, j: &Interval, r: usize, out: &mut Vec<Interval>, count: &mut u64) {
        if window.contains_interval(j) {
            let scale = j.width();
            let shift = j.lo().clone();
            out.extend(self.full_cover(r).affine(&scale, &shift).into_parts());
            *count += 3u64.pow(r as u32);
            return;
        }
        // a level-r descendant of j has width |j|·λ^r and must fit in j ∩ window
        let lo = max_of(window.lo(), j.lo());
        let hi = min_of(window.hi(), j.hi());
        if hi - lo < j.width() * pow(self.params.lambda(), r) {
            return;
        }
        for kid in child_intervals(&self.params, j) {
            self.collect(window, &kid, r - 1, out, count);
        }
    }
}

/// `G_n` for `windows` with the default level cap.
pub fn build_cover(p: &IfsParams, windows: &[Window], n: usize) -> Result<Cover, IfsError> {
    build_cover_with(p, windows, n, DEFAULT_MAX_LEVEL)
}

pub fn build_cover_with(p: &IfsParams, windows: &[Window], n: usize, max_level: usize) -> Result<Cover, IfsError> {
    CoverBuilder::with_max_level(p.clone(), max_level).cover(windows, n)
}

/// Left and right endpoints of the level-`n` basic intervals that lie inside
/// one of `windows`. Each such point is a fixed point of a composition of the
/// maps, hence lies in `K`.
pub fn endpoint_samples(p: &IfsParams, windows: &[Window], n: usize) -> BTreeSet<Rational> {
    fn walk(p: &IfsParams, windows: &[Interval], j: Interval, r: usize, out: &mut BTreeSet<Rational>) {
        if !windows.iter().any(|w| w.meets(&j)) {
            return;
        }
        if r == 0 {
            if windows.iter().any(|w| w.contains_interval(&j)) {
                out.insert(j.lo().clone());
                out.insert(j.hi().clone());
            }
            return;
        }
        for kid in child_intervals(p, &j) {
            walk(p, windows, kid, r - 1, out);
        }
    }
    let ivs: Vec<Interval> = windows.iter().map(Window::interval).collect();
    let mut out = BTreeSet::new();
    walk(p, &ivs, Interval::unit(), n, &mut out);
    out
}

/// Coding-level check used by tests: the interval of `w` lies in
/// one of the windows.
#[cfg(test)]
pub(crate) fn word_in_windows(p: &IfsParams, w: &Word, windows: &[Window]) -> bool {
    let j = super::word::word_interval(p, w);
    windows.iter().any(|win| win.interval().contains_interval(&j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::validate_params;
    use crate::numerics::rat;

    fn example() -> IfsParams {
        validate_params(&rat(1, 3), &rat(4, 9)).unwrap()
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    /// Brute force: every word of length n, kept when its interval lies in a window.
    fn oracle(p: &IfsParams, windows: &[Window], n: usize) -> (IntervalUnion, u64) {
        let kept: Vec<Interval> = basic_intervals(p, n)
            .into_iter()
            .filter(|(w, _)| word_in_windows(p, w, windows))
            .map(|(_, j)| j)
            .collect();
        let count = kept.len() as u64;
        (union_normalize(kept), count)
    }

    #[test]
    fn children_examples() {
        let p = example();
        assert_eq!(children(&p, &Interval::unit()).parts(), &[iv((0, 1), (4, 9)), iv((2, 3), (1, 1))]);
        assert_eq!(
            children(&p, &iv((2, 3), (1, 1))).parts(),
            &[iv((2, 3), (22, 27)), iv((8, 9), (1, 1))]
        );
        let j = iv((1, 9), (4, 9));
        let kids = children(&p, &j);
        assert_eq!(kids.hull().unwrap(), j);
    }

    #[test]
    fn top_branch_covers() {
        let p = example();
        let win = [Window::top_branch(&p)];
        let g1 = build_cover(&p, &win, 1).unwrap();
        assert_eq!(g1.union.parts(), &[iv((2, 3), (1, 1))]);
        assert_eq!(g1.piece_count, 1);
        let g2 = build_cover(&p, &win, 2).unwrap();
        assert_eq!(g2.union.parts(), &[iv((2, 3), (22, 27)), iv((8, 9), (1, 1))]);
        let g3 = build_cover(&p, &win, 3).unwrap();
        assert_eq!(
            g3.union.parts(),
            &[iv((2, 3), (22, 27)), iv((8, 9), (76, 81)), iv((26, 27), (1, 1))]
        );
        assert_eq!(g3.union.measure(), rat(19, 81));
        assert_eq!(g3.piece_count, 9);
        assert_eq!(oracle(&p, &win, 3), (g3.union.clone(), 9));
    }

    #[test]
    fn named_windows_validate() {
        let p = example();
        for w in [Window::top_branch(&p), Window::middle_branch(&p), Window::upper_tail(&p)] {
            let rebuilt = Window::new(&p, w.a().clone(), w.b().clone(), w.base_level()).unwrap();
            assert_eq!(rebuilt, w);
        }
        assert!(Window::new(&p, rat(1, 2), rat(1, 1), 1).is_err());
        assert!(Window::new(&p, rat(1, 1), rat(2, 3), 1).is_err());
    }

    #[test]
    fn level_bounds_are_enforced() {
        let p = example();
        let win = [Window::upper_tail(&p)];
        assert_eq!(
            build_cover(&p, &win, 1),
            Err(IfsError::LevelBelowBase { level: 1, base: 2 })
        );
        assert_eq!(
            build_cover_with(&p, &win, 5, 4),
            Err(IfsError::LevelAboveCap { level: 5, cap: 4 })
        );
        assert_eq!(build_cover(&p, &[], 3), Err(IfsError::NoWindows));
    }

    #[test]
    fn endpoint_samples_examples() {
        let p = example();
        let unit = [Window::unit()];
        let s1: Vec<Rational> = endpoint_samples(&p, &unit, 1).into_iter().collect();
        assert_eq!(s1, vec![rat(0, 1), rat(1, 9), rat(1, 3), rat(4, 9), rat(2, 3), rat(1, 1)]);
        let s0: Vec<Rational> = endpoint_samples(&p, &unit, 0).into_iter().collect();
        assert_eq!(s0, vec![rat(0, 1), rat(1, 1)]);
        for n in 0..5 {
            assert!(endpoint_samples(&p, &unit, n).len() <= 2 * 3usize.pow(n as u32));
        }
    }

    #[test]
    fn oracle_equivalence_for_several_windows() {
        for (l, c) in [((1, 3), (4, 9)), ((9, 20), (1, 2)), ((3, 10), (29, 50)), ((1, 5), (3, 10))] {
            let p = validate_params(&rat(l.0, l.1), &rat(c.0, c.1)).unwrap();
            let pair = vec![Window::middle_branch(&p), Window::top_branch(&p)];
            let windows = [
                vec![Window::unit()],
                vec![Window::top_branch(&p)],
                vec![Window::upper_tail(&p)],
                pair,
            ];
            let mut builder = CoverBuilder::new(p.clone());
            for win in &windows {
                let base = win.iter().map(Window::base_level).max().unwrap();
                let mut prev: Option<IntervalUnion> = None;
                for n in base..=6 {
                    let g = builder.cover(win, n).unwrap();
                    assert_eq!((g.union.clone(), g.piece_count), oracle(&p, win, n), "{p} {n}");
                    if let Some(prev) = &prev {
                        assert!(g.union.is_subset_of(prev));
                    }
                    prev = Some(g.union);
                }
            }
        }
    }

    #[test]
    fn full_cover_counts_every_word() {
        let p = example();
        let g = build_cover(&p, &[Window::unit()], 7).unwrap();
        assert_eq!(g.piece_count, 3u64.pow(7));
    }

    #[test]
    fn word_widths_are_powers_of_lambda() {
        let p = validate_params(&rat(2, 7), &rat(3, 7)).unwrap();
        for (w, j) in basic_intervals(&p, 4) {
            assert_eq!(j.width(), pow(p.lambda(), w.len()));
            assert_eq!(j, crate::ifs::word_interval(&p, &w));
        }
    }

    #[test]
    fn samples_lie_in_deeper_covers() {
        let p = validate_params(&rat(3, 10), &rat(29, 50)).unwrap();
        let win = [Window::top_branch(&p)];
        let samples = endpoint_samples(&p, &win, 3);
        let mut builder = CoverBuilder::new(p.clone());
        for m in 1..=8 {
            let g = builder.cover(&win, m).unwrap();
            assert!(samples.iter().all(|x| g.union.contains(x)), "level {m}");
        }
    }
}
