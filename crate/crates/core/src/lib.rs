//! Exact reconstruction of rational functions from point evaluations.
//!
//! The crate is organized bottom-up: [`field`] provides exact scalars,
//! [`polyrat`] polynomials, rational functions and determinants, [`linalg`]
//! exact linear solves. On top sit the Hankel rationality test
//! ([`hankel`]), determinantal interpolation ([`detinterp`]), black-box
//! multivariate reconstruction ([`slicerecon`]), the countable-field
//! counterexample ([`counterexample`]) and the oracle expression language
//! ([`expr`]).

pub mod counterexample;
pub mod detinterp;
pub mod expr;
pub mod field;
pub mod hankel;
pub mod linalg;
pub mod par;
pub mod polyrat;
pub mod slicerecon;

pub use field::{FieldDescriptor, FieldElement};
pub use polyrat::{Poly1, PolyN, RatFun1, RatFunN};
