//! Writes `u ∈ [0, 1]` as a product `x·y` with `x, y ∈ K`, up to an explicit
//! error, by descending through pairs of basic intervals.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifs::{basic_intervals, word_interval, IfsParams, Symbol, Word};
use crate::numerics::{fmt_rational, parse_rational, pow, Interval, Rational};
use crate::product::{interval_product, product_union, renormalized_coverage};
use crate::region::{classify_params, route_windows, RegionLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("parameters are not in the covered region (label {0})")]
    NotInPurpleRegion(RegionLabel),
    #[error("u = {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("base product does not reach below lambda (m = {0})")]
    BaseTooShort(String),
    #[error("no child pair contains the target at step {step}")]
    InternalNoChildPair { step: usize },
    #[error("malformed certificate: {0}")]
    Parse(String),
    #[error(transparent)]
    Ifs(#[from] crate::ifs::IfsError),
    #[error(transparent)]
    Product(#[from] crate::product::ProductError),
}

/// Codings of `x` and `y` and the rectangle of basic intervals they address.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub word_x: Word,
    pub word_y: Word,
    pub x: Rational,
    pub y: Rational,
    /// Number of leading `1` symbols in `word_x` that rescale by `λ`.
    pub scaling_power: usize,
    pub depth: usize,
    pub error_bound: Rational,
    pub enclosing_rect: (Interval, Interval),
}

/// Precomputed route data for one parameter pair.
#[derive(Debug, Clone)]
pub struct Decomposer {
    params: IfsParams,
    m: Rational,
    /// Codings of the base-level basic intervals inside the route windows.
    base: Vec<(Word, Interval)>,
}

impl Decomposer {
    pub fn new(p: &IfsParams) -> Result<Self, DecomposeError> {
        let label = classify_params(p);
        let windows = route_windows(p, label).ok_or(DecomposeError::NotInPurpleRegion(label))?;
        let level = windows.iter().map(|w| w.base_level()).max().unwrap_or(1);
        let base: Vec<(Word, Interval)> = basic_intervals(p, level)
            .into_iter()
            .filter(|(_, j)| windows.iter().any(|w| w.interval().contains_interval(j)))
            .collect();
        let union = base.iter().map(|(_, j)| j.clone()).collect();
        let verdict = renormalized_coverage(p, &product_union(&union, &union)?);
        if !verdict.covered {
            return Err(DecomposeError::BaseTooShort(fmt_rational(&verdict.m)));
        }
        Ok(Self {
            params: p.clone(),
            m: verdict.m,
            base,
        })
    }

    pub fn params(&self) -> &IfsParams {
        &self.params
    }

    /// Left end of the base product `[m, 1]`.
    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// Refines a pair of basic intervals `depth` times, each time taking the
    /// lexicographically first child pair whose product contains `u`.
    pub fn decompose(&self, u: &Rational, depth: usize) -> Result<DecompositionCertificate, DecomposeError> {
        let p = &self.params;
        if depth == 0 {
            return Err(DecomposeError::ZeroDepth);
        }
        if u < &Rational::zero() || u > &Rational::one() {
            return Err(DecomposeError::OutOfRange(fmt_rational(u)));
        }
        if u.is_zero() || u.is_one() {
            // 0 and 1 are the fixed points of f1 and f3
            let s = if u.is_zero() { Symbol::One } else { Symbol::Three };
            let w = Word::repeat(s, depth);
            let j = word_interval(p, &w);
            return Ok(DecompositionCertificate {
                word_x: w.clone(),
                word_y: w,
                x: u.clone(),
                y: u.clone(),
                scaling_power: 0,
                depth,
                error_bound: Rational::zero(),
                enclosing_rect: (j.clone(), j),
            });
        }

        // least n with u / λⁿ ∈ [m, 1]; it exists because m ≤ λ
        let mut n = 0usize;
        let mut target = u.clone();
        while target < self.m {
            target /= p.lambda();
            n += 1;
        }

        let (mut w1, mut i1, mut w2, mut i2) = self
            .base
            .iter()
            .flat_map(|a| self.base.iter().map(move |b| (a, b)))
            .find(|(a, b)| contains_product(&a.1, &b.1, &target))
            .map(|(a, b)| (a.0.clone(), a.1.clone(), b.0.clone(), b.1.clone()))
            .ok_or(DecomposeError::InternalNoChildPair { step: 0 })?;

        for step in 1..=depth {
            let kids1 = crate::ifs::child_intervals(p, &i1);
            let kids2 = crate::ifs::child_intervals(p, &i2);
            let (s1, s2) = Symbol::ALL
                .iter()
                .enumerate()
                .flat_map(|(a, &s1)| Symbol::ALL.iter().enumerate().map(move |(b, &s2)| ((a, s1), (b, s2))))
                .find(|((a, _), (b, _))| contains_product(&kids1[*a], &kids2[*b], &target))
                .ok_or(DecomposeError::InternalNoChildPair { step })?;
            w1.push(s1.1);
            w2.push(s2.1);
            i1 = kids1[s1.0].clone();
            i2 = kids2[s2.0].clone();
        }

        let scale = pow(p.lambda(), n);
        let rect_x = i1.scale(&scale);
        let rect = interval_product(&i1, &i2)?;
        Ok(DecompositionCertificate {
            word_x: Word::repeat(Symbol::One, n).concat(&w1),
            word_y: w2,
            x: rect_x.lo().clone(),
            y: i2.lo().clone(),
            scaling_power: n,
            depth,
            error_bound: rect.width() * &scale,
            enclosing_rect: (rect_x, i2),
        })
    }
}

fn contains_product(a: &Interval, b: &Interval, u: &Rational) -> bool {
    &(a.lo() * b.lo()) <= u && u <= &(a.hi() * b.hi())
}

pub fn decompose(p: &IfsParams, u: &Rational, depth: usize) -> Result<DecompositionCertificate, DecomposeError> {
    Decomposer::new(p)?.decompose(u, depth)
}

/// Replays a certificate from its words alone: recomputes both basic
/// intervals, checks that `x` and `y` are endpoints of them, that `u` lies in
/// the product rectangle, and that `|xy − u|` is within the stated bound.
pub fn verify_certificate(p: &IfsParams, u: &Rational, cert: &DecompositionCertificate) -> bool {
    let jx = word_interval(p, &cert.word_x);
    let jy = word_interval(p, &cert.word_y);
    let is_endpoint = |v: &Rational, j: &Interval| v == j.lo() || v == j.hi();
    let leading_ones = cert.word_x.symbols().iter().take_while(|s| **s == Symbol::One).count();
    let err = &cert.x * &cert.y - u;
    let err = if err < Rational::zero() { -err } else { err };
    cert.enclosing_rect == (jx.clone(), jy.clone())
        && leading_ones >= cert.scaling_power
        && is_endpoint(&cert.x, &jx)
        && is_endpoint(&cert.y, &jy)
        && contains_product(&jx, &jy, u)
        && err <= cert.error_bound
}

/// Serialised certificate; rationals are `"p/q"` strings and words are digit strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub lambda: String,
    pub c: String,
    pub u: String,
    pub word_x: String,
    pub word_y: String,
    pub x: String,
    pub y: String,
    pub scaling_power: usize,
    pub depth: usize,
    pub error_bound: String,
    pub rect_x: [String; 2],
    pub rect_y: [String; 2],
}

impl CertificateRecord {
    pub fn new(p: &IfsParams, u: &Rational, cert: &DecompositionCertificate) -> Self {
        let pair = |j: &Interval| [fmt_rational(j.lo()), fmt_rational(j.hi())];
        Self {
            lambda: fmt_rational(p.lambda()),
            c: fmt_rational(p.c()),
            u: fmt_rational(u),
            word_x: cert.word_x.to_string(),
            word_y: cert.word_y.to_string(),
            x: fmt_rational(&cert.x),
            y: fmt_rational(&cert.y),
            scaling_power: cert.scaling_power,
            depth: cert.depth,
            error_bound: fmt_rational(&cert.error_bound),
            rect_x: pair(&cert.enclosing_rect.0),
            rect_y: pair(&cert.enclosing_rect.1),
        }
    }

    /// Parses the record back into parameters, target and certificate.
    pub fn decode(&self) -> Result<(IfsParams, Rational, DecompositionCertificate), DecomposeError> {
        let r = |s: &String| parse_rational(s).map_err(|e| DecomposeError::Parse(e.to_string()));
        let iv = |a: &[String; 2]| -> Result<Interval, DecomposeError> {
            Interval::new(r(&a[0])?, r(&a[1])?).map_err(|e| DecomposeError::Parse(e.to_string()))
        };
        let p = IfsParams::new(r(&self.lambda)?, r(&self.c)?)?;
        let cert = DecompositionCertificate {
            word_x: self.word_x.parse()?,
            word_y: self.word_y.parse()?,
            x: r(&self.x)?,
            y: r(&self.y)?,
            scaling_power: self.scaling_power,
            depth: self.depth,
            error_bound: r(&self.error_bound)?,
            enclosing_rect: (iv(&self.rect_x)?, iv(&self.rect_y)?),
        };
        Ok((p, r(&self.u)?, cert))
    }
}
