use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use super::{IfsError, IfsParams};
use crate::numerics::{Interval, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    One,
    Two,
    Three,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::One, Symbol::Two, Symbol::Three];

    pub fn digit(self) -> char {
        match self {
            Symbol::One => '1',
            Symbol::Two => '2',
            Symbol::Three => '3',
        }
    }

    pub fn from_digit(ch: char) -> Result<Self, IfsError> {
        match ch {
            '1' => Ok(Symbol::One),
            '2' => Ok(Symbol::Two),
            '3' => Ok(Symbol::Three),
            other => Err(IfsError::BadSymbol(other)),
        }
    }
}

/// Finite coding `i1 i2 … in` over `{1, 2, 3}` addressing the basic interval
/// `f_{i1} ∘ … ∘ f_{in}([0, 1])`. The empty word addresses `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn repeat(s: Symbol, n: usize) -> Self {
        Self(vec![s; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn child(&self, s: Symbol) -> Word {
        let mut w = self.clone();
        w.push(s);
        w
    }

    pub fn concat(&self, tail: &Word) -> Word {
        Word(self.0.iter().chain(tail.0.iter()).copied().collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromStr for Word {
    type Err = IfsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Symbol::from_digit).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.digit())?;
        }
        Ok(())
    }
}

/// Basic interval addressed by `w`; its width is exactly `λ^|w|`.
pub fn word_interval(p: &IfsParams, w: &Word) -> Interval {
    // f_{i1}(… f_{in}(x)) = Σ_k λ^(k-1) t_{ik} + λ^n x
    let mut left = Rational::zero();
    let mut scale = Rational::one();
    for &s in w.symbols() {
        left += &scale * p.translation(s);
        scale *= p.lambda();
    }
    let right = &left + &scale;
    Interval::new_unchecked(left, right)
}
