//! The algebra C[y] ⋊ W, with y_j standing for the commuting operators d_{e_j}.
//!
//! Elements are Σ_w X_w ŵ with X_w polynomial in y (possibly matrix valued).
//! Since ŵ d_{e_j} ŵ⁻¹ = d_{w e_j}, moving ŵ past X substitutes
//! y_j ↦ Σ_i w_ij y_i, exactly as the group acts on polynomials in x.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::action::Action;
use super::dunkl::{DunklFamily, Operator};
use super::monomial::Mono;
use super::operator::FunctionCoeff;
use super::poly::Poly;
use crate::scalars::Cyc;

#[derive(Clone)]
pub struct DunklElem<C> {
    action: Arc<Action>,
    terms: BTreeMap<u32, C>,
}

impl<C: PartialEq> PartialEq for DunklElem<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: FunctionCoeff> DunklElem<C> {
    pub fn zero(action: Arc<Action>) -> Self {
        DunklElem { action, terms: BTreeMap::new() }
    }

    pub fn from_term(action: Arc<Action>, w: u32, c: C) -> Self {
        let mut e = Self::zero(action);
        e.add_term(w, c);
        e
    }

    /// X at the identity element.
    pub fn from_coeff(action: Arc<Action>, c: C) -> Self {
        let id = action.group().identity();
        Self::from_term(action, id, c)
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    pub fn terms(&self) -> &BTreeMap<u32, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                x.add_assign_ref(&c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &Cyc) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs<D: FunctionCoeff>(&self, f: impl Fn(&C) -> D) -> DunklElem<D> {
        let mut out = DunklElem::zero(self.action.clone());
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let g = self.action.group();
        let mut out = Self::zero(self.action.clone());
        for (w, x) in &self.terms {
            for (v, y) in &o.terms {
                out.add_term(g.mul(*w, *v), x.mul_ref(&y.act(&self.action, *w)));
            }
        }
        out
    }

    /// Positive powers only; the unit depends on the coefficient shape.
    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "use an explicit unit for the zeroth power");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// ŵ X ŵ⁻¹.
    pub fn conjugate(&self, w: u32) -> Self {
        let g = self.action.group();
        let winv = g.inv(w);
        let mut out = Self::zero(self.action.clone());
        for (v, x) in &self.terms {
            out.add_term(g.mul(g.mul(w, *v), winv), x.act(&self.action, w));
        }
        out
    }

    /// Left multiplication by a coefficient.
    pub fn left_mul(&self, c: &C) -> Self {
        self.map_coeffs(|x| c.mul_ref(x))
    }

    /// Right multiplication by a coefficient sitting after all reflections:
    /// (X ŵ)·c = X (w·c) ŵ.
    pub fn right_mul(&self, c: &C) -> Self {
        let mut out = Self::zero(self.action.clone());
        for (w, x) in &self.terms {
            out.add_term(*w, x.mul_ref(&c.act(&self.action, *w)));
        }
        out
    }

    pub fn coefficient(&self, w: u32) -> Option<&C> {
        self.terms.get(&w)
    }
}

impl DunklElem<Poly> {
    pub fn y(action: Arc<Action>, j: usize) -> Self {
        Self::from_coeff(action, Poly::var(j))
    }

    /// y_ξ = Σ ξ_j y_j, the image of d_ξ.
    pub fn direction(action: Arc<Action>, xi: &[Cyc]) -> Self {
        Self::from_coeff(action, Poly::linear(xi))
    }

    pub fn group_element(action: Arc<Action>, w: u32) -> Self {
        Self::from_term(action, w, Poly::one())
    }

    /// Realizes the element as a differential-reflection operator.
    pub fn lower(&self, family: &DunklFamily) -> Result<Operator, super::OpError> {
        let mut powers = Lowering::new(family)?;
        let mut out = Operator::zero(family.action().clone());
        for (w, x) in &self.terms {
            let gw = Operator::group_element(family.action().clone(), *w);
            for (m, c) in x.terms() {
                out = out.add(&powers.monomial(*m).compose(&gw).scale(c));
            }
        }
        Ok(out)
    }
}

/// Memo of lowered monomials d^m.
pub struct Lowering<'a> {
    family: &'a DunklFamily,
    coords: Vec<Operator>,
    cache: HashMap<Mono, Operator>,
}

impl<'a> Lowering<'a> {
    pub fn new(family: &'a DunklFamily) -> Result<Self, super::OpError> {
        let coords = (0..family.dim()).map(|j| family.coordinate(j)).collect::<Result<Vec<_>, _>>()?;
        Ok(Lowering { family, coords, cache: HashMap::new() })
    }

    pub fn monomial(&mut self, m: Mono) -> Operator {
        if let Some(op) = self.cache.get(&m) {
            return op.clone();
        }
        let op = if m.is_one() {
            Operator::identity(self.family.action().clone())
        } else {
            let j = (0..self.coords.len()).find(|&j| m.exp(j) > 0).expect("nonconstant monomial");
            let rest = m.with_exp(j, m.exp(j) - 1);
            let tail = self.monomial(rest);
            self.coords[j].compose(&tail)
        };
        self.cache.insert(m, op.clone());
        op
    }
}

impl<C: FunctionCoeff> fmt::Debug for DunklElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{int_vector, CoxeterGroup, GroupLabel, MultiplicityFunction, RootSystem};
    use crate::scalars::Rational;

    fn family(label: GroupLabel) -> DunklFamily {
        let rs = RootSystem::build(label).unwrap();
        let g = CoxeterGroup::generate(&rs).unwrap();
        let k = MultiplicityFunction::from_couplings(&rs, &Rational::new(2, 3).unwrap(), &Rational::new(-1, 2).unwrap()).unwrap();
        DunklFamily::new(Arc::new(Action::new(Arc::new(g))), k).unwrap()
    }

    #[test]
    fn lowering_is_a_homomorphism() {
        let f = family(GroupLabel::B(2));
        let a = f.action().clone();
        let g = a.group().clone();
        let r = g.generator("r").unwrap();
        let t = g.generator("t1").unwrap();
        let x = DunklElem::y(a.clone(), 0).mul(&DunklElem::group_element(a.clone(), r)).add(&DunklElem::y(a.clone(), 1));
        let y = DunklElem::group_element(a.clone(), t).mul(&DunklElem::y(a.clone(), 0)).scale(&Cyc::i());
        let lhs = x.mul(&y).lower(&f).unwrap();
        let rhs = x.lower(&f).unwrap().compose(&y.lower(&f).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_matches_equivariance() {
        let f = family(GroupLabel::I2InR3(6));
        let a = f.action().clone();
        let g = a.group().clone();
        let xi = int_vector(&[1, -2, 0]);
        for w in 0..g.order() as u32 {
            let e = DunklElem::direction(a.clone(), &xi).conjugate(w);
            let expect = DunklElem::direction(a.clone(), &g.matrix(w).apply(&xi));
            assert_eq!(e, expect);
            let via_product = DunklElem::group_element(a.clone(), w)
                .mul(&DunklElem::direction(a.clone(), &xi))
                .mul(&DunklElem::group_element(a.clone(), g.inv(w)));
            assert_eq!(via_product, expect);
        }
    }
}
