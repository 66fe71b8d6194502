use std::fmt;

use num::Zero;

use super::{Interval, Rational};

/// Finite union of closed intervals, stored as strictly separated parts in
/// increasing order: `parts[k].hi < parts[k + 1].lo`.
///
/// Closed intervals that touch are merged, so two unions describe the same
/// point set exactly when their parts are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

/// Merges an arbitrary collection of closed intervals into an [`IntervalUnion`].
pub fn union_normalize<I>(raw: I) -> IntervalUnion
where
    I: IntoIterator<Item = Interval>,
{
    let mut items: Vec<Interval> = raw.into_iter().collect();
    items.sort_unstable_by(|a, b| a.lo().cmp(b.lo()));
    let mut parts: Vec<Interval> = Vec::with_capacity(items.len());
    for next in items {
        match parts.last_mut() {
            Some(last) if next.lo() <= last.hi() => {
                if next.hi() > last.hi() {
                    *last = Interval::new_unchecked(last.lo().clone(), next.hi().clone());
                }
            }
            _ => parts.push(next),
        }
    }
    IntervalUnion { parts }
}

/// Closure of `bx \ u`. Together with `u` it covers `bx`; the two overlap at
/// most in shared endpoints.
pub fn union_complement_in(u: &IntervalUnion, bx: &Interval) -> IntervalUnion {
    let mut gaps = Vec::new();
    let mut cursor = bx.lo().clone();
    for part in &u.parts {
        if part.hi() < &cursor {
            continue;
        }
        if part.lo() > bx.hi() {
            break;
        }
        if part.lo() > &cursor {
            gaps.push(Interval::new_unchecked(cursor.clone(), part.lo().clone()));
        }
        cursor = part.hi().clone();
    }
    if &cursor < bx.hi() {
        gaps.push(Interval::new_unchecked(cursor, bx.hi().clone()));
    }
    // gaps on either side of a degenerate part touch; their closures merge
    union_normalize(gaps)
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(part: Interval) -> Self {
        Self { parts: vec![part] }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Interval> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> Rational {
        self.parts.iter().fold(Rational::zero(), |acc, p| acc + p.width())
    }

    /// Smallest interval containing the union.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval::new_unchecked(first.lo().clone(), last.hi().clone()))
    }

    /// Index of the part containing `x`, if any.
    pub fn part_containing(&self, x: &Rational) -> Option<usize> {
        let idx = self.parts.partition_point(|p| p.hi() < x);
        (idx < self.parts.len() && self.parts[idx].lo() <= x).then_some(idx)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.part_containing(x).is_some()
    }

    pub fn contains_interval(&self, iv: &Interval) -> bool {
        self.part_containing(iv.lo())
            .is_some_and(|k| self.parts[k].hi() >= iv.hi())
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| other.contains_interval(p))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        union_normalize(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    /// Image under `x -> scale * x + shift` for `scale > 0`; order and
    /// separation of parts are preserved, so no renormalisation is needed.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().map(|p| p.affine(scale, shift)).collect(),
        }
    }

    /// Intersection with a single closed interval.
    pub fn clip(&self, window: &Interval) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().filter_map(|p| p.intersect(window)).collect(),
        }
    }

    /// Checks the representation invariant. Used by tests and debug asserts.
    pub fn is_normalized(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].hi() < w[1].lo())
    }
}

impl FromIterator<Interval> for IntervalUnion {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        union_normalize(iter)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, part) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str("}")
    }
}
