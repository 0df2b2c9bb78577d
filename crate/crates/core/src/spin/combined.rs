//! Position ⊗ spin operators in both realizations: normal-form
//! differential-reflection operators with matrix coefficients, and elements
//! of C[y] ⋊ W with matrix coefficients.

use std::sync::Arc;

use super::matrix::SparseMatrix;
use super::space::SpinMatrix;
use crate::opalg::{Action, DiffReflOp, DunklElem, DunklFamily, Lowering, Operator, OpError, Poly, RationalFunction};

pub type CombinedOperator = DiffReflOp<SparseMatrix<RationalFunction>>;
pub type SpinElem = DunklElem<SparseMatrix<Poly>>;

pub fn constant_poly_matrix(m: &SpinMatrix) -> SparseMatrix<Poly> {
    m.lift(|c| Poly::constant(c.clone()))
}

/// A ⊗ M for a scalar operator A and a constant spin matrix M.
pub fn tensor(op: &Operator, m: &SpinMatrix) -> CombinedOperator {
    op.map_coeffs(|f| m.lift(|c| f.scale(c)))
}

/// I ⊗ M.
pub fn spin_only(action: Arc<Action>, m: &SpinMatrix) -> CombinedOperator {
    tensor(&Operator::identity(action), m)
}

/// M·p(y) at the identity element.
pub fn spin_poly(action: Arc<Action>, m: &SpinMatrix, p: &Poly) -> SpinElem {
    SpinElem::from_coeff(action, m.lift(|c| p.scale(c)))
}

/// M ŵ.
pub fn spin_group_element(action: Arc<Action>, m: &SpinMatrix, w: u32) -> SpinElem {
    SpinElem::from_term(action, w, constant_poly_matrix(m))
}

/// Realizes Σ_w X_w(y) ŵ with X_w = Σ_m M_{w,m} y^m as Σ (d^m ŵ) ⊗ M_{w,m}.
pub fn lower(e: &SpinElem, family: &DunklFamily) -> Result<CombinedOperator, OpError> {
    let mut powers = Lowering::new(family)?;
    let mut out = CombinedOperator::zero(family.action().clone());
    for (w, x) in e.terms() {
        let mut by_mono: std::collections::BTreeMap<crate::opalg::Mono, SpinMatrix> = Default::default();
        for (r, c, p) in x.entries() {
            for (m, coef) in p.terms() {
                by_mono.entry(*m).or_insert_with(|| SparseMatrix::zero(x.dim())).add_entry(r, c, coef.clone());
            }
        }
        let gw = Operator::group_element(family.action().clone(), *w);
        for (m, mat) in by_mono {
            out = out.add(&tensor(&powers.monomial(m).compose(&gw), &mat));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{int_vector, CoxeterGroup, GroupLabel, MultiplicityFunction, RootSystem};
    use crate::opalg::Mono;
    use crate::scalars::{Cyc, Rational};
    use crate::spin::SpinSpace;

    fn family() -> DunklFamily {
        let rs = RootSystem::build(GroupLabel::B(2)).unwrap();
        let g = CoxeterGroup::generate(&rs).unwrap();
        let k = MultiplicityFunction::from_couplings(&rs, &Rational::new(1, 2).unwrap(), &Rational::new(3, 1).unwrap()).unwrap();
        DunklFamily::new(Arc::new(Action::new(Arc::new(g))), k).unwrap()
    }

    #[test]
    fn homomorphism_composition() {
        let f = family();
        let a = f.action().clone();
        let g = a.group().clone();
        let s = SpinSpace::new(2, 2);
        let (w, v) = (g.generator("r").unwrap(), g.generator("t1").unwrap());
        let rw = s.local(&crate::spin::default_involution(2), 1).unwrap();
        let rv = s.transposition(0, 1).unwrap();
        let lhs = tensor(&Operator::group_element(a.clone(), w), &rw).compose(&tensor(&Operator::group_element(a.clone(), v), &rv));
        let rhs = tensor(&Operator::group_element(a.clone(), g.mul(w, v)), &rw.mul(&rv));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn position_and_spin_commute() {
        let f = family();
        let a = f.action().clone();
        let s = SpinSpace::new(2, 2);
        let pos = tensor(&f.coordinate(0).unwrap(), &SpinMatrix::identity(4));
        let spin = spin_only(a, &s.transposition(0, 1).unwrap());
        assert!(pos.commutator(&spin).is_zero());
    }

    #[test]
    fn coefficient_passes_reflection() {
        // (1/(x1−x2))P12 ∘ ŝ_{e1−e2} = ŝ ∘ (−1/(x1−x2))P12
        let f = family();
        let a = f.action().clone();
        let s = SpinSpace::new(2, 2);
        let p = s.transposition(0, 1).unwrap();
        let refl = a.group().index_of(&crate::coxeter::Mat::reflection(&int_vector(&[1, -1])).unwrap()).unwrap();
        let coef = RationalFunction::inverse_linear(&int_vector(&[1, -1])).unwrap();
        let lhs = tensor(&Operator::multiplication(a.clone(), coef.clone()), &p).compose(&spin_only(a.clone(), &SpinMatrix::identity(4)).compose(&tensor(&Operator::group_element(a.clone(), refl), &SpinMatrix::identity(4))));
        let rhs = tensor(&Operator::group_element(a.clone(), refl), &SpinMatrix::identity(4)).compose(&tensor(&Operator::multiplication(a.clone(), coef.neg()), &p));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.terms().len(), 1);
        assert!(lhs.terms().contains_key(&(refl, Mono::ONE)));
    }

    #[test]
    fn lowering_respects_products() {
        let f = family();
        let a = f.action().clone();
        let g = a.group().clone();
        let s = SpinSpace::new(2, 2);
        let p = s.transposition(0, 1).unwrap();
        let q = s.local(&crate::spin::default_involution(2), 0).unwrap();
        let x = spin_poly(a.clone(), &p, &Poly::var(0).mul(&Poly::var(1)).add(&Poly::constant(Cyc::i())))
            .add(&spin_group_element(a.clone(), &q, g.generator("r").unwrap()));
        let y = spin_poly(a.clone(), &q, &Poly::var(1)).mul(&spin_group_element(a.clone(), &p, g.generator("t1").unwrap()));
        let lhs = lower(&x.mul(&y), &f).unwrap();
        let rhs = lower(&x, &f).unwrap().compose(&lower(&y, &f).unwrap());
        assert_eq!(lhs, rhs);
    }
}
