//! Λ = (1/|W|) Σ_w ŵ R_w.

use std::sync::Arc;

use super::combined::{constant_poly_matrix, lower, CombinedOperator, SpinElem};
use super::matrix::SparseMatrix;
use super::rep::SpinRepresentation;
use super::space::SpinMatrix;
use super::SpinError;
use crate::opalg::{Action, DunklFamily, OpError, Poly};
use crate::scalars::Cyc;

#[derive(Clone)]
pub struct Projector {
    action: Arc<Action>,
    rep: SpinRepresentation,
    lambda: SpinElem,
}

impl Projector {
    pub fn new(action: Arc<Action>, rep: SpinRepresentation) -> Self {
        let lambda = subgroup_average(&action, &rep, &(0..action.group().order() as u32).collect::<Vec<_>>());
        Projector { action, rep, lambda }
    }

    pub fn element(&self) -> &SpinElem {
        &self.lambda
    }

    pub fn representation(&self) -> &SpinRepresentation {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.space().dim()
    }

    pub fn is_idempotent(&self) -> bool {
        self.lambda.mul(&self.lambda) == self.lambda
    }

    /// ĝ R_g Λ = Λ.
    pub fn is_left_invariant(&self, g: u32) -> bool {
        self.hat_r(g).mul(&self.lambda) == self.lambda
    }

    /// The element ŵ R_w.
    pub fn hat_r(&self, w: u32) -> SpinElem {
        SpinElem::from_term(self.action.clone(), w, constant_poly_matrix(self.rep.image(w)))
    }

    /// Y with YΛ = XΛ and Y reflection free: Σ_w X_w ŵ ↦ Σ_w X_w R_w⁻¹.
    /// Two elements agree after Λ iff their reductions agree.
    pub fn reduce(&self, x: &SpinElem) -> SparseMatrix<Poly> {
        let mut out = SparseMatrix::zero(self.dim());
        for (w, c) in x.terms() {
            out = out.add(&c.mul(&constant_poly_matrix(self.rep.inverse_image(*w))));
        }
        out
    }

    /// π(Y) with ΛYΛ = π(Y)Λ for reflection-free Y:
    /// π(Y) = (1/|W|) Σ_w R_w (w·Y) R_w⁻¹.
    pub fn sandwich(&self, y: &SparseMatrix<Poly>) -> SparseMatrix<Poly> {
        let g = self.action.group();
        let mut out = SparseMatrix::zero(self.dim());
        for w in 0..g.order() as u32 {
            let moved = y.map(|p| self.action.poly(w, p));
            let r = constant_poly_matrix(self.rep.image(w));
            let rinv = constant_poly_matrix(self.rep.inverse_image(w));
            out = out.add(&r.mul(&moved).mul(&rinv));
        }
        out.scale(&Cyc::frac(1, g.order() as i64))
    }

    /// Reduction of (XΛ)(YΛ) for reflection-free X, Y.
    pub fn reduce_product(&self, x: &SparseMatrix<Poly>, y: &SparseMatrix<Poly>) -> SparseMatrix<Poly> {
        x.mul(&self.sandwich(y))
    }

    pub fn lower(&self, family: &DunklFamily) -> Result<CombinedOperator, OpError> {
        lower(&self.lambda, family)
    }
}

/// (1/|H|) Σ_{h∈H} ĥ R_h.
pub fn subgroup_average(action: &Arc<Action>, rep: &SpinRepresentation, elements: &[u32]) -> SpinElem {
    let scale = Cyc::frac(1, elements.len() as i64);
    let mut out = SpinElem::zero(action.clone());
    for &w in elements {
        out.add_term(w, constant_poly_matrix(&rep.image(w).scale(&scale)));
    }
    out
}

/// c Σ ŵ_i M_i from explicit (element, spin matrix) pairs.
pub fn weighted_sum(action: &Arc<Action>, c: &Cyc, terms: &[(u32, SpinMatrix)]) -> SpinElem {
    let mut out = SpinElem::zero(action.clone());
    for (w, m) in terms {
        out.add_term(*w, constant_poly_matrix(&m.scale(c)));
    }
    out
}

/// Group element spelled by single-letter generator names, e.g. "trtrt".
pub fn letter_word(group: &crate::coxeter::CoxeterGroup, word: &str) -> Result<u32, crate::coxeter::CoxeterError> {
    let w: Vec<(String, i32)> = word.chars().map(|c| (c.to_string(), 1)).collect();
    group.evaluate_word(&w)
}

/// The factors (Λ_Q, Λ_P) of the three-spin projector for R_r = P_{23}Q_1Q_2Q_3, R_t = P_{12}.
pub fn three_spin_factors(action: &Arc<Action>, rep: &SpinRepresentation, q: &SpinMatrix) -> Result<(SpinElem, SpinElem), SpinError> {
    let g = action.group();
    let s = rep.space();
    let w = |word: &str| letter_word(g, word).map_err(SpinError::from);
    let p = |i, j| s.transposition(i, j);
    let qqq = s.local(q, 0)?.mul(&s.local(q, 1)?).mul(&s.local(q, 2)?);
    let central = g.pow(w("tr")?, 3);
    let lq = weighted_sum(action, &Cyc::frac(1, 2), &[(g.identity(), SpinMatrix::identity(s.dim())), (central, qqq)]);
    let lp = weighted_sum(
        action,
        &Cyc::frac(1, 6),
        &[
            (g.identity(), SpinMatrix::identity(s.dim())),
            (w("t")?, p(0, 1)?),
            (w("trtrt")?, p(1, 2)?),
            (w("rtrt")?, p(0, 1)?.mul(&p(1, 2)?)),
            (w("trtr")?, p(1, 2)?.mul(&p(0, 1)?)),
            (w("rtr")?, p(0, 2)?),
        ],
    );
    Ok((lq, lp))
}

/// The factors (Λ_Q, Λ_P) of the two-spin projector for R_a = Q_1Q_2⁻¹, R_b = P_{12}.
/// With `literal_odd_powers` the â³ and â⁵ terms carry (Q_2Q_1⁻¹)^k instead of (Q_1Q_2⁻¹)^k.
pub fn two_spin_factors(
    action: &Arc<Action>,
    rep: &SpinRepresentation,
    q: &SpinMatrix,
    m: u32,
    literal_odd_powers: bool,
) -> Result<(SpinElem, SpinElem), SpinError> {
    let g = action.group();
    let s = rep.space();
    let a = letter_word(g, "a")?;
    let b = letter_word(g, "b")?;
    let qinv = q.pow(m - 1);
    let x = s.local(q, 0)?.mul(&s.local(&qinv, 1)?);
    let xinv = s.local(&qinv, 0)?.mul(&s.local(q, 1)?);
    let terms: Vec<(u32, SpinMatrix)> = (0..m)
        .map(|k| {
            let base = if literal_odd_powers && k >= 3 && k % 2 == 1 { &xinv } else { &x };
            (g.pow(a, k as i32), base.pow(k))
        })
        .collect();
    let lq = weighted_sum(action, &Cyc::frac(1, m as i64), &terms);
    let lp = weighted_sum(
        action,
        &Cyc::frac(1, 2),
        &[(g.identity(), SpinMatrix::identity(s.dim())), (b, s.transposition(0, 1)?)],
    );
    Ok((lq, lp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, GroupLabel, RootSystem};
    use crate::spin::{default_involution, BuiltinModel, SpinSpace};

    #[test]
    fn trivial_group() {
        let g = Arc::new(CoxeterGroup::trivial(2));
        let action = Arc::new(Action::new(g.clone()));
        let rep = SpinRepresentation::from_generators(g, SpinSpace::new(2, 1), &[]).unwrap();
        let p = Projector::new(action.clone(), rep);
        assert_eq!(p.element(), &SpinElem::from_coeff(action, constant_poly_matrix(&SpinMatrix::identity(2))));
    }

    #[test]
    fn standard_model_projector() {
        let rs = RootSystem::build(GroupLabel::B(2)).unwrap();
        let g = Arc::new(CoxeterGroup::generate(&rs).unwrap());
        let action = Arc::new(Action::new(g.clone()));
        let rep = SpinRepresentation::builtin(g.clone(), BuiltinModel::BlStandard, 2, &default_involution(2)).unwrap();
        let p = Projector::new(action, rep);
        assert!(p.is_idempotent());
        for (_, gen) in g.generators() {
            assert!(p.is_left_invariant(*gen));
        }
        // ŵ R_w Λ reduces to Λ's reduction
        let lam = p.reduce(p.element());
        for w in 0..g.order() as u32 {
            assert_eq!(p.reduce(&p.hat_r(w).mul(p.element())), lam);
        }
        // (XΛ)(YΛ) computed directly and through π
        let a = p.element().action().clone();
        let s = p.representation().space();
        let x = constant_poly_matrix(&s.transposition(0, 1).unwrap()).map(|c| c.mul(&Poly::var(0)));
        let y = constant_poly_matrix(&s.local(&default_involution(2), 0).unwrap()).map(|c| c.mul(&Poly::var(1).pow(2)));
        let xl = SpinElem::from_coeff(a.clone(), x.clone()).mul(p.element());
        let yl = SpinElem::from_coeff(a, y.clone()).mul(p.element());
        assert_eq!(p.reduce(&xl.mul(&yl)), p.reduce_product(&x, &y));
    }

    fn setup(label: GroupLabel, model: BuiltinModel, q: &SpinMatrix) -> (Arc<Action>, SpinRepresentation) {
        let g = Arc::new(CoxeterGroup::generate(&RootSystem::build(label).unwrap()).unwrap());
        let action = Arc::new(Action::new(g.clone()));
        let rep = SpinRepresentation::builtin(g, model, q.dim(), q).unwrap();
        (action, rep)
    }

    #[test]
    fn three_spin_factorization() {
        let q = default_involution(2);
        let (action, rep) = setup(GroupLabel::I2InR3(6), BuiltinModel::G2ThreeSpin, &q);
        let (lq, lp) = three_spin_factors(&action, &rep, &q).unwrap();
        let lam = Projector::new(action, rep);
        assert_eq!(&lq.mul(&lp), lam.element());
        assert_eq!(&lp.mul(&lq), lam.element());
    }

    #[test]
    fn two_spin_factorization() {
        let q = crate::spin::default_root_twist(2, 6, None);
        let (action, rep) = setup(GroupLabel::I2InR2(6), BuiltinModel::I2mTwoSpin, &q);
        let (lq, lp) = two_spin_factors(&action, &rep, &q, 6, false).unwrap();
        let lam = Projector::new(action.clone(), rep.clone());
        assert_eq!(&lq.mul(&lp), lam.element());
        assert_eq!(&lp.mul(&lq), lam.element());
        // the printed odd powers agree at k = 3 but not at k = 5
        let (lit, _) = two_spin_factors(&action, &rep, &q, 6, true).unwrap();
        assert_ne!(lit, lq);
        let a5 = action.group().pow(letter_word(action.group(), "a").unwrap(), 5);
        let a3 = action.group().pow(letter_word(action.group(), "a").unwrap(), 3);
        assert_eq!(lit.coefficient(a3), lq.coefficient(a3));
        assert_ne!(lit.coefficient(a5), lq.coefficient(a5));
    }
}
