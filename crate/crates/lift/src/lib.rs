//! From an exact split leading term solution to a critical point of the
//! bulk-deformed potential with unit components, packaged as a certificate.

mod certificate;
mod fl3;
mod inner;
mod outer;
mod solver;

use std::fmt;

use gcdiagram::Cell;
use novikov::{fmt_q, Q};

pub use certificate::{
    certify, certify_from_slt, verify_certificate, Certificate, CheckEntry, CheckKind, CheckReport,
    LeadingValues, FORMAT_VERSION,
};
pub use fl3::certify_fl3;
pub use inner::{lift_inside, BoundaryData, InnerLift};
pub use outer::lift_outside;
pub use solver::{gradient_terms, GradTerm, LiftState, Unknown};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Inside,
    Outside,
    Top,
    Fl3,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Inside => "inner lift",
            Stage::Outside => "outer lift",
            Stage::Top => "bulk lift",
            Stage::Fl3 => "Fl(3) lift",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LiftError {
    #[error("out of range: {0}")]
    Range(String),
    #[error("n = 3 has no box; use the Fl(3) path (certify_fl3)")]
    UseFl3,
    #[error("seed search: {0}")]
    Search(sltsolve::SltError),
    #[error("split solve: {0}")]
    Solve(sltsolve::SltError),
    #[error("{stage} degenerate at equation {equation}: {detail}")]
    Degenerate {
        stage: Stage,
        equation: Cell,
        detail: String,
    },
    #[error("precision of {what} reached only T^{} (needed T^{})", fmt_q(.reached), fmt_q(.needed))]
    Precision {
        what: String,
        reached: Box<Q>,
        needed: Box<Q>,
    },
    #[error("certificate check failed: {0}")]
    Rejected(String),
    #[error("malformed certificate: {0}")]
    Json(String),
}
