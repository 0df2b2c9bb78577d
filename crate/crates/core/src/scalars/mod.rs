//! Exact scalars: rationals and cyclotomic numbers.

mod cyclotomic;
mod rational;
mod text;

pub use cyclotomic::{Cyc, Cyclotomic, FieldData};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("order {from} does not divide {to}")]
    NonDivisibleOrder { from: u32, to: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::{Cyc, Rational};
    use proptest::prelude::*;

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..8).prop_map(|(a, b)| Rational::new(a, b).unwrap())
    }

    /// Random element of Q(ζ_n) for a fixed order.
    pub fn cyc_in(n: u32) -> impl Strategy<Value = Cyc> {
        prop::collection::vec(rational(), 1..7).prop_map(move |q| Cyc::from_coefficients(n, &q))
    }

    pub fn cyc() -> impl Strategy<Value = Cyc> {
        prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]).prop_flat_map(cyc_in)
    }
}
