//! Monodromy series, twists, relation checkers, conserved quantities,
//! Hamiltonians and independence of invariants.
//!
//! Coefficients of T(u), B(u) and b(u) are reflection-free, so they are stored
//! as matrices of polynomials in the commuting Dunkl operators y_j = d_{e_j}.
//! `AuxSeries::lower` turns them into combined operators when needed.

pub mod budget;
pub mod complex;
pub mod hamiltonian;
pub mod hierarchy;
pub mod independence;
pub mod models;
pub mod relations;
pub mod report;
pub mod series;

pub use budget::Budget;
pub use complex::{build_complex_dunkl, check_complex_relations, check_free_case, check_h_j6, h_and_j6, ComplexDunkl};
pub use hamiltonian::{
    check_free_limit, check_momentum, check_shift_central, compare_hamiltonian, generic_hamiltonian, printed_form_hamiltonian,
    reduce_scalar, reduced_coefficient, HamiltonianModel,
};
pub use hierarchy::{check_hierarchy, check_intertwine, check_parity, extended_projector, trace_and_extract, ConservedSeries};
pub use independence::{check_independence, jacobian_rank, jacobian_rank_from, new_invariants, proportional, principal_symbol, subring_membership, IndependenceReport};
pub use models::{Model, ModelKind};
pub use relations::{check_halfloop, check_halfloop_projected, check_shifted, check_twisted, check_twisted_projected, corrupt_site_sign};
pub use report::{render_matrix, RelationReport, ReportEntry, Status};
pub use series::{apply_shifted_twist, apply_twist, build_monodromy, check_symmetry, twist_by_projector, twist_from_poles, AuxSeries, TwistData};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("the twist carries a shift; use apply_shifted_twist")]
    ShiftNotAllowed,
    #[error("shift does not commute with the site operators: {0}")]
    NonCommutingShift(String),
    #[error("degenerate sample point")]
    DegeneratePoint,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("spin: {0}")]
    Spin(#[from] crate::spin::SpinError),
    #[error("operator: {0}")]
    Op(#[from] crate::opalg::OpError),
    #[error("coxeter: {0}")]
    Coxeter(#[from] crate::coxeter::CoxeterError),
}
