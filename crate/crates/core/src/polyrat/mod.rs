//! Polynomials, rational functions and exact matrices.

mod matrix;
mod multivariate;
mod univariate;

use thiserror::Error;

use crate::field::FieldError;

pub use matrix::{
    det_bareiss, det_cofactor, resultant, sylvester, sylvester_and_resultant, vandermonde_product, Determinant, Matrix, RingElement,
};
pub use multivariate::{deglex, Exponents, PolyN, RatFunN};
pub use univariate::{Poly1, RatFun1};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("undefined at {0}")]
    UndefinedAt(String),
    #[error("the zero function has no degree")]
    ZeroFunction,
    #[error("matrix is {0}x{1}, not square")]
    NonSquare(usize, usize),
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("cofactor expansion refused for a {0}x{0} matrix")]
    TooLarge(usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("operands live in different fields or rings")]
    FieldMismatch,
    #[error("gcd did not divide its operands")]
    GcdFailure,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(deg, ord_inf)` of a nonzero univariate rational function.
pub fn degree_and_ord(f: &RatFun1) -> Result<(usize, i64), PolyError> {
    f.degree_and_ord()
}
