//! Coefficient-ring interface shared by polynomials, rational functions and
//! spin matrices.

use std::fmt;

use crate::scalars::Cyc;

pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn neg(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Cyc) -> Self;

    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.add_assign_ref(&rhs.neg());
    }
}

impl Coeff for Cyc {
    fn is_zero(&self) -> bool {
        Cyc::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Cyc) -> Self {
        self * c
    }
}
