//! Black-box reconstruction of multivariate rational functions whose
//! univariate slices are rational.
//!
//! [`reconstruct`] peels off the last variable: it classifies slices along
//! that axis, picks anchor values, reconstructs the restrictions to those
//! anchors recursively, and assembles the result from two symbolic
//! determinants whose first row carries powers of the last variable.

mod classify;
mod engine;
mod oracle;

use thiserror::Error;

use crate::detinterp::DetInterpError;
use crate::field::FieldError;
use crate::polyrat::PolyError;

pub use classify::{choose_anchors, classify_slices, dominant_class, ClassKey, SliceClassification};
pub use engine::{reconstruct, verify_agreement, PhaseTimings, ReconConfig, ReconReport, Verification};
pub use oracle::{slice, FixLast, RecordingOracle, ReplayOracle, Slice, SliceOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    #[error("{failed} of {total} slices failed profile detection")]
    TooManyFailures { failed: usize, total: usize },
    #[error("no slice classes to choose from")]
    EmptyHistogram,
    #[error("could not find anchor {index} with a well-defined column")]
    AnchorSearchFailed { index: usize },
    #[error("reconstruction {result} disagrees with the oracle at {mismatches} of {trials} trials, first at {point:?}")]
    VerificationFailed { trials: usize, mismatches: usize, point: Vec<String>, result: String },
    #[error("the denominator determinant vanished identically")]
    DegenerateAnchors,
    #[error("oracle arity {got} does not match {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid replay table: {0}")]
    Replay(String),
    #[error(transparent)]
    DetInterp(#[from] DetInterpError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
