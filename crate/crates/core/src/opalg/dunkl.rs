//! d_ξ = −i∂_ξ + i Σ_{α∈Φ⁺} k(α)(α,ξ)/(α,x) ŝ_α.

use std::sync::Arc;

use super::action::Action;
use super::operator::DiffReflOp;
use super::ratfunc::RationalFunction;
use super::OpError;
use crate::coxeter::{dot, unit_vector, MultiplicityFunction, RootSystem};
use crate::scalars::Cyc;

pub type Operator = DiffReflOp<RationalFunction>;

/// Dunkl operators of one root system at one multiplicity function.
#[derive(Clone)]
pub struct DunklFamily {
    action: Arc<Action>,
    roots: RootSystem,
    k: MultiplicityFunction,
}

impl DunklFamily {
    pub fn new(action: Arc<Action>, k: MultiplicityFunction) -> Result<Self, OpError> {
        let roots = action
            .group()
            .root_system
            .clone()
            .ok_or_else(|| OpError::Coxeter(crate::coxeter::CoxeterError::Invalid("group has no root system".into())))?;
        Ok(DunklFamily { action, roots, k })
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn multiplicity(&self) -> &MultiplicityFunction {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn operator(&self, xi: &[Cyc]) -> Result<Operator, OpError> {
        if xi.len() != self.dim() {
            return Err(OpError::DimensionMismatch { expected: self.dim(), got: xi.len() });
        }
        let i = Cyc::i();
        let group = self.action.group();
        let mut op = Operator::directional(self.action.clone(), xi).scale(&-&i);
        for (idx, alpha) in self.roots.positive_roots.iter().enumerate() {
            let k = self.k.value(idx);
            let pairing = dot(alpha, xi);
            if k.is_zero() || pairing.is_zero() {
                continue;
            }
            let c = &(&i * &Cyc::from_rational(k.clone())) * &pairing;
            let f = RationalFunction::inverse_linear(alpha)?.scale(&c);
            op.add_term(group.reflection(idx), super::Mono::ONE, f);
        }
        Ok(op)
    }

    /// d_{e_j}, 0-based.
    pub fn coordinate(&self, j: usize) -> Result<Operator, OpError> {
        self.operator(&unit_vector(self.dim(), j))
    }

    /// ŝ d_ξ ŝ⁻¹ = d_{s(ξ)}.
    pub fn equivariance_check(&self, s: u32, xi: &[Cyc]) -> Result<bool, OpError> {
        let lhs = self.operator(xi)?.conjugate(s);
        let rhs = self.operator(&self.action.group().matrix(s).apply(xi))?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{int_vector, CoxeterGroup, GroupLabel};
    use crate::opalg::{Mono, Poly};
    use crate::scalars::Rational;

    fn family(label: GroupLabel, ks: (i64, i64), kl: (i64, i64)) -> DunklFamily {
        let rs = RootSystem::build(label).unwrap();
        let g = CoxeterGroup::generate(&rs).unwrap();
        let k = MultiplicityFunction::from_couplings(&rs, &Rational::new(ks.0, ks.1).unwrap(), &Rational::new(kl.0, kl.1).unwrap())
            .unwrap();
        DunklFamily::new(Arc::new(Action::new(Arc::new(g))), k).unwrap()
    }

    fn inv(v: &[Cyc]) -> RationalFunction {
        RationalFunction::inverse_linear(v).unwrap()
    }

    fn refl(f: &DunklFamily, v: &[Cyc]) -> u32 {
        let m = crate::coxeter::Mat::reflection(v).unwrap();
        f.action().group().index_of(&m).unwrap()
    }

    #[test]
    fn free_case() {
        let f = family(GroupLabel::B(2), (0, 1), (0, 1));
        let xi = int_vector(&[2, -1]);
        let expect = Operator::directional(f.action().clone(), &xi).scale(&-Cyc::i());
        assert_eq!(f.operator(&xi).unwrap(), expect);
    }

    #[test]
    fn type_b_coordinate_operators() {
        let (ks, kl) = (Cyc::frac(1, 3), Cyc::frac(-5, 2));
        let f = family(GroupLabel::B(3), (1, 3), (-5, 2));
        let i = Cyc::i();
        for k in 0..3 {
            let d = f.coordinate(k).unwrap();
            let mut expect = Operator::partial(f.action().clone(), k).scale(&-&i);
            let ek = crate::coxeter::unit_vector(3, k);
            for j in (0..3).filter(|&j| j != k) {
                let ej = crate::coxeter::unit_vector(3, j);
                for sign in [-1i64, 1] {
                    let alpha: Vec<Cyc> = ek.iter().zip(&ej).map(|(a, b)| a + &(b * &Cyc::from_int(sign))).collect();
                    expect.add_term(refl(&f, &alpha), Mono::ONE, inv(&alpha).scale(&(&i * &kl)));
                }
            }
            expect.add_term(refl(&f, &ek), Mono::ONE, inv(&ek).scale(&(&i * &ks)));
            assert_eq!(d, expect);
            assert_eq!(d.len(), 1 + 2 * 2 + 1);
        }
    }

    #[test]
    fn dihedral_six_in_the_plane() {
        let f = family(GroupLabel::I2InR2(6), (2, 1), (3, 1));
        let g = f.action().group().clone();
        let (a, b) = (g.generator("a").unwrap(), g.generator("b").unwrap());
        let sqrt3 = &Cyc::cos_pi(1, 6) * &Cyc::from_int(2);
        let one = Cyc::one();
        let form = |c: Cyc| inv(&[one.clone(), c]);
        let two = Cyc::from_int(2);
        let i = Cyc::i();
        let (ks, kl) = (&i * &Cyc::from_int(2), &i * &Cyc::from_int(3));
        let mut expect = Operator::partial(f.action().clone(), 0).scale(&-&i);
        let a2 = g.mul(a, a);
        let a3 = g.mul(a2, a);
        let terms = [
            (b, form(-&one), &ks),
            (g.mul(a2, b), form(&two - &sqrt3), &ks),
            (g.mul(b, a2), form(&two + &sqrt3), &ks),
            (g.mul(a, b), form(-&(&two - &sqrt3)), &kl),
            (g.mul(a3, b), form(one.clone()), &kl),
            (g.mul(b, a), form(-&(&two + &sqrt3)), &kl),
        ];
        for (w, c, k) in terms {
            expect.add_term(w, Mono::ONE, c.scale(k));
        }
        assert_eq!(f.coordinate(0).unwrap(), expect);
    }

    #[test]
    fn commuting_pair_in_rank_two() {
        let f = family(GroupLabel::B(2), (3, 7), (-2, 5));
        let (d1, d2) = (f.coordinate(0).unwrap(), f.coordinate(1).unwrap());
        let c = d1.commutator(&d2);
        assert!(c.is_zero());
        let phi = RationalFunction::from(Poly::var(0).mul(&Poly::var(1).pow(2)));
        assert!(d1.compose(&d2).apply(&phi).sub(&d2.compose(&d1).apply(&phi)).is_zero());
    }

    #[test]
    fn action_on_constants() {
        let f = family(GroupLabel::B(2), (1, 2), (1, 3));
        let i = Cyc::i();
        let got = f.coordinate(0).unwrap().apply(&RationalFunction::one());
        let e = |v: &[i64]| inv(&int_vector(v));
        let expect = e(&[1, -1]).add(&e(&[1, 1])).scale(&(&i * &Cyc::frac(1, 3))).add(&e(&[1, 0]).scale(&(&i * &Cyc::frac(1, 2))));
        assert_eq!(got, expect);
        let free = family(GroupLabel::B(2), (0, 1), (0, 1)).coordinate(0).unwrap();
        assert_eq!(free.apply(&Poly::var(0).into()), RationalFunction::from(-&i));
    }

    #[test]
    fn equivariance_examples() {
        let f = family(GroupLabel::B(2), (2, 3), (5, 4));
        let g = f.action().group().clone();
        let r = g.generator("r").unwrap();
        let t1 = g.generator("t1").unwrap();
        let d2 = f.coordinate(1).unwrap();
        assert_eq!(d2.conjugate(r), d2.neg());
        assert_eq!(f.coordinate(0).unwrap().conjugate(t1), d2);
        assert!(f.equivariance_check(g.identity(), &int_vector(&[3, -1])).unwrap());
    }

    #[test]
    fn symbol_of_laplacian() {
        let f = family(GroupLabel::B(2), (2, 3), (5, 4));
        let mut h = Operator::zero(f.action().clone());
        for k in 0..2 {
            let d = f.coordinate(k).unwrap();
            assert_eq!(d.principal_symbol().unwrap(), Poly::var(k).scale(&-Cyc::i()));
            h = h.add(&d.compose(&d));
        }
        let expect = Poly::var(0).pow(2).add(&Poly::var(1).pow(2)).neg();
        assert_eq!(h.principal_symbol().unwrap(), expect);
    }
}
