//! Certified proof that `c ≥ 1/2` on the blue region.
//!
//! The region is the set where the six polynomial constraints listed in
//! [`prover`] are nonnegative. The prover subdivides a rational box around
//! it and decides each leaf exactly; the resulting [`BoxCertificate`]
//! serialises to JSON and is checked by [`replay_certificate`], which shares
//! no evaluation code with the prover.
//!
//! The constraint set touches `c = 1/2` at the single irrational point
//! `λ = 1 − 1/√2`, where `c = (1 − λ)²` and `c(1 − λ) = λ²(1 − λ) + λ` both hold
//! with equality. Boxes containing that point can never be closed by interval
//! bounds alone, so boxes still open at the depth cap fall back to an exact
//! identity `c − 1/2 = Σ σ_k g_k` with multipliers `σ_k ≥ 0` on the box.

mod mpoly;
mod prover;
mod replay;

pub use prover::{blue_lemma_root_box, certify_blue_lemma, certify_blue_lemma_with, BlueLemmaOptions, DEFAULT_BLUE_DEPTH};
pub use replay::{replay_certificate, ReplayError, ReplayReport};

use serde::{Deserialize, Serialize};

use crate::numerics::{fmt_rational, parse_rational, Interval, Rational};

/// `σ = Σ a λ^i c^j` multiplying constraint `constraint` (numbered from 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplier {
    pub constraint: usize,
    pub terms: Vec<(u32, u32, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxVerdict {
    /// `c ≥ 1/2` everywhere on the box.
    Holds,
    /// Constraint `constraint` is negative everywhere on the box.
    Infeasible { constraint: usize },
    /// `c − 1/2 = Σ σ_k g_k` with every `σ_k ≥ 0` on the box.
    Dual { multipliers: Vec<Multiplier> },
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    /// Split history from the root: `l`/`L` take the lower/upper half in λ,
    /// `c`/`C` the lower/upper half in c.
    pub path: String,
    pub lambda: Interval,
    pub c: Interval,
    pub verdict: BoxVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCertificate {
    pub lambda_range: Interval,
    pub c_range: Interval,
    pub target: Rational,
    pub depth: usize,
    pub leaves: Vec<Leaf>,
}

impl BoxCertificate {
    fn count(&self, f: impl Fn(&BoxVerdict) -> bool) -> usize {
        self.leaves.iter().filter(|l| f(&l.verdict)).count()
    }

    pub fn holds_count(&self) -> usize {
        self.count(|v| matches!(v, BoxVerdict::Holds))
    }

    pub fn infeasible_count(&self) -> usize {
        self.count(|v| matches!(v, BoxVerdict::Infeasible { .. }))
    }

    pub fn dual_count(&self) -> usize {
        self.count(|v| matches!(v, BoxVerdict::Dual { .. }))
    }

    pub fn max_leaf_depth(&self) -> usize {
        self.leaves.iter().map(|l| l.path.len()).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> CertificateFile {
        let pair = |iv: &Interval| [fmt_rational(iv.lo()), fmt_rational(iv.hi())];
        CertificateFile {
            format: CERTIFICATE_FORMAT.to_string(),
            target: fmt_rational(&self.target),
            depth: self.depth,
            constraints: prover::CONSTRAINT_NAMES.iter().map(|s| s.to_string()).collect(),
            lambda_range: pair(&self.lambda_range),
            c_range: pair(&self.c_range),
            leaves: self
                .leaves
                .iter()
                .map(|leaf| LeafFile {
                    path: leaf.path.clone(),
                    lambda: pair(&leaf.lambda),
                    c: pair(&leaf.c),
                    verdict: match &leaf.verdict {
                        BoxVerdict::Holds => VerdictFile::Holds,
                        BoxVerdict::Infeasible { constraint } => VerdictFile::Infeasible {
                            constraint: *constraint,
                        },
                        BoxVerdict::Dual { multipliers } => VerdictFile::Dual {
                            multipliers: multipliers
                                .iter()
                                .map(|m| MultiplierFile {
                                    constraint: m.constraint,
                                    terms: m.terms.iter().map(|(i, j, a)| (*i, *j, fmt_rational(a))).collect(),
                                })
                                .collect(),
                        },
                        BoxVerdict::Undecided => VerdictFile::Undecided,
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("certificate serialises")
    }
}

pub const CERTIFICATE_FORMAT: &str = "box-certificate/1";

/// Serialised form of a [`BoxCertificate`]; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub target: String,
    pub depth: usize,
    pub constraints: Vec<String>,
    pub lambda_range: [String; 2],
    pub c_range: [String; 2],
    pub leaves: Vec<LeafFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafFile {
    pub path: String,
    pub lambda: [String; 2],
    pub c: [String; 2],
    pub verdict: VerdictFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictFile {
    Holds,
    Infeasible { constraint: usize },
    Dual { multipliers: Vec<MultiplierFile> },
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierFile {
    pub constraint: usize,
    pub terms: Vec<(u32, u32, String)>,
}

impl CertificateFile {
    pub fn from_json(text: &str) -> Result<Self, ReplayError> {
        serde_json::from_str(text).map_err(|e| ReplayError::Parse(e.to_string()))
    }
}

pub(crate) fn parse_pair(pair: &[String; 2]) -> Result<(Rational, Rational), ReplayError> {
    let p = |s: &String| parse_rational(s).map_err(|e| ReplayError::Parse(e.to_string()));
    Ok((p(&pair[0])?, p(&pair[1])?))
}
