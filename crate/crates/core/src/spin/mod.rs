//! Spin spaces, spin representations of W, combined operators and the
//! projector Λ.

pub mod combined;
pub mod matrix;
pub mod projector;
pub mod rep;
pub mod space;

pub use combined::{constant_poly_matrix, lower, spin_group_element, spin_only, spin_poly, tensor, CombinedOperator, SpinElem};
pub use matrix::SparseMatrix;
pub use projector::{letter_word, subgroup_average, three_spin_factors, two_spin_factors, weighted_sum, Projector};
pub use rep::{default_involution, default_root_twist, validate_twist, BuiltinModel, SpinRepresentation};
pub use space::{SpinMatrix, SpinSpace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinError {
    #[error("site {site} out of range for {sites} sites")]
    IndexOutOfRange { site: usize, sites: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid twist matrix: {0}")]
    InvalidTwistMatrix(String),
    #[error("relation fails in the spin representation: {0}")]
    RelationFailure(String),
    #[error("coxeter: {0}")]
    Coxeter(#[from] crate::coxeter::CoxeterError),
}
