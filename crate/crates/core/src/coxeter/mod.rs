//! Root systems, finite reflection groups, orbits and multiplicity functions.

mod group;
mod linalg;
mod multiplicity;
mod orbit;
mod roots;

pub use group::{CoxeterGroup, GroupElement, Relation, RelationCheck, DEFAULT_CLOSURE_BUDGET};
pub use linalg::{dot, int_vector, is_zero_vec, scale_vec, sub_vec, unit_vector, Mat, Vector};
pub use multiplicity::{root_classes, MultiplicityFunction};
pub use orbit::Orbit;
pub use roots::{reflect, GroupLabel, RootSystem};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("unsupported root system family: {0}")]
    UnsupportedFamily(String),
    #[error("reflection in the zero vector")]
    ZeroRoot,
    #[error("group closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("image of orbit point {0} is not in the orbit")]
    PointNotInOrbit(usize),
    #[error("roots {0} and {1} lie in one W-orbit but carry different multiplicities")]
    OrbitMismatch(usize, usize),
    #[error("{0}")]
    Invalid(String),
}
