//! Sparse polynomials in `(λ, c)` with rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::numerics::{pow, Interval, Rational};

/// `Σ a_ij λ^i c^j`, keyed by `(i, j)`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(0, 0, r)
    }

    pub fn monomial(i: u32, j: u32, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coeff);
        p
    }

    pub fn lambda() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn c() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, a) in terms {
            p.add_term(i, j, a);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), a)| (i, j, a))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(i, j, a)| (i, j, a * k)))
    }

    pub fn d_lambda(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(i, _, _)| *i > 0)
                .map(|(i, j, a)| (i - 1, j, a * Rational::from_integer(i.into()))),
        )
    }

    pub fn d_c(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(_, j, _)| *j > 0)
                .map(|(i, j, a)| (i, j - 1, a * Rational::from_integer(j.into()))),
        )
    }

    #[cfg(test)]
    pub fn eval(&self, l: &Rational, c: &Rational) -> Rational {
        self.terms()
            .map(|(i, j, a)| a * pow(l, i as usize) * pow(c, j as usize))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Range enclosure over a box with nonnegative coordinates: each monomial
    /// is monotone there, so it ranges over `[lo^i·lo^j, hi^i·hi^j]`.
    pub fn enclose(&self, l: &Interval, c: &Interval) -> Interval {
        debug_assert!(!l.lo().is_negative() && !c.lo().is_negative());
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (i, j, a) in self.terms() {
            let m_lo = pow(l.lo(), i as usize) * pow(c.lo(), j as usize);
            let m_hi = pow(l.hi(), i as usize) * pow(c.hi(), j as usize);
            if a.is_positive() {
                lo += a * m_lo;
                hi += a * m_hi;
            } else {
                lo += a * m_hi;
                hi += a * m_lo;
            }
        }
        Interval::new_unchecked(lo, hi)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, a) in rhs.terms() {
            out.add_term(i, j, a.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(i, j, a)| (i, j, -a)))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn arithmetic_and_evaluation() {
        let l = BiPoly::lambda();
        let c = BiPoly::c();
        let one = BiPoly::constant(rat(1, 1));
        let d = &one - &l;
        // c − (1 − λ)²
        let g = &c - &(&d * &d);
        assert_eq!(g.eval(&rat(1, 3), &rat(4, 9)), rat(0, 1));
        assert_eq!(g.coeff(2, 0), rat(-1, 1));
        assert_eq!(g.d_lambda().eval(&rat(1, 3), &rat(0, 1)), rat(4, 3));
        assert_eq!(g.d_c(), one);
        assert!((&g - &g).is_zero());
    }

    #[test]
    fn enclosure_contains_samples() {
        let l = BiPoly::lambda();
        let c = BiPoly::c();
        let g = &(&(&c * &c) - &(&l * &c)) + &BiPoly::constant(rat(-1, 5));
        let lb = Interval::new(rat(1, 4), rat(1, 2)).unwrap();
        let cb = Interval::new(rat(1, 3), rat(3, 4)).unwrap();
        let e = g.enclose(&lb, &cb);
        for a in 0..=4 {
            for b in 0..=4 {
                let x = lb.lo() + lb.width() * rat(a, 4);
                let y = cb.lo() + cb.width() * rat(b, 4);
                assert!(e.contains(&g.eval(&x, &y)));
            }
        }
    }
}
