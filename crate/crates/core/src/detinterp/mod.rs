//! Determinantal interpolation of univariate rational functions.
//!
//! [`delta_resultant`] and [`alpha_beta`] build the block determinants that
//! express a rational function's value from `l + 1` samples, [`fit_ratfun`]
//! recovers coefficients by a linear solve, and [`detect_profile`] finds the
//! degree profile of a univariate black box.

mod determinants;
mod fit;
mod samples;

use thiserror::Error;

use crate::field::FieldError;
use crate::polyrat::PolyError;

pub use determinants::{
    alpha_beta, calibrate_resultant_sign, calibrate_sign, delta_resultant, interp_point, interp_sign, resultant_sign, SignCalibration,
};
pub use fit::{detect_fit, detect_profile, fit_ratfun, FnOracle, SamplingBudget, UnivariateOracle, MAX_CONSECUTIVE_UNDEFINED};
pub use samples::{DegreeProfile, SampleSet1};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetInterpError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("expected {expected} samples, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("beta vanished: wrong profile or target outside the domain")]
    BetaZero,
    #[error("no rational function with these degree bounds fits the samples")]
    NoFit,
    #[error("several distinct rational functions fit the samples")]
    Ambiguous,
    #[error("calibration failed: {0}")]
    CalibrationFailure(String),
    #[error("no degree profile found up to total degree {0}")]
    BudgetExhausted(usize),
    #[error("oracle undefined at {0} consecutive draws")]
    DomainTooSparse(usize),
    #[error("the zero function has no degree profile")]
    ZeroFunction,
    #[error("invalid sample data: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
