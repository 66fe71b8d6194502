//! Parameter-space classification and the coverage theorem.
//!
//! Within the admissible parameters, `K·K = [0, 1]` exactly when
//! `(1 − λ)² ≤ c`. That region is split into four routes, each of which comes
//! with its own window and base product:
//!
//! | label  | condition (first match wins)         | window                       |
//! |--------|--------------------------------------|------------------------------|
//! | brown  | `λ² − 3λ + 1 ≤ 0`                    | `[1 − λ, 1]`                 |
//! | gray   | `c(1 − λ) ≤ λ²(1 − λ) + λ`           | `[c − λ², 1]`                |
//! | orange | `(c − λ²)(1 − λ) ≤ c²`               | `[c − λ², 1]`                |
//! | blue   | otherwise                            | `[c − λ, c] ∪ [1 − λ, 1]`    |

mod audits;
mod blue;
mod predicates;
mod theorem;

pub use audits::{
    threshold_implications_check, gray_window_inequality, gray_window_inequality_on, blue_window_inequality,
    AuditRange,
};
pub use blue::{
    blue_lemma_root_box, certify_blue_lemma, certify_blue_lemma_with, replay_certificate, BlueLemmaOptions,
    BoxCertificate, BoxVerdict, CertificateFile, Leaf, ReplayError, ReplayReport, DEFAULT_BLUE_DEPTH,
};
pub use predicates::{classify, classify_params, necessary_condition, NecessaryCondition, RegionLabel};
pub use theorem::{route_windows, verify_theorem, Guard, RouteReport, TheoremReport};

use thiserror::Error;

use crate::ifs::IfsError;
use crate::numerics::{Interval, NumericsError};
use crate::product::ProductError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("route {route}: hypothesis failed: {detail}")]
    HypothesisFailure { route: RegionLabel, detail: String },
    #[error("counterexample found at lambda={lambda}, c={c}: {detail}")]
    CounterexampleFound { lambda: String, c: String, detail: String },
    #[error("{count} boxes left undecided")]
    Undecided { count: usize, boxes: Vec<(Interval, Interval)> },
    #[error("sample count must be positive")]
    NoSamples,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error(transparent)]
    Ifs(#[from] IfsError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
