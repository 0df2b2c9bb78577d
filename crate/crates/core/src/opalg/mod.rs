//! Polynomials, rational functions and differential-reflection operators.

pub mod action;
pub mod dunkl;
pub mod dunkl_algebra;
pub mod linear_form;
pub mod monomial;
pub mod operator;
pub mod poly;
pub mod ratfunc;

pub use action::Action;
pub use dunkl::{DunklFamily, Operator};
pub use dunkl_algebra::{DunklElem, Lowering};
pub use linear_form::LinearForm;
pub use monomial::{Mono, MAX_VARS};
pub use operator::{AsConstant, DiffReflOp, FunctionCoeff};
pub use poly::Poly;
pub use ratfunc::RationalFunction;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpError {
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("principal symbol is not constant: {0}")]
    NonConstantSymbol(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("too many variables: {0}")]
    TooManyVariables(usize),
    #[error("coxeter: {0}")]
    Coxeter(#[from] crate::coxeter::CoxeterError),
}
