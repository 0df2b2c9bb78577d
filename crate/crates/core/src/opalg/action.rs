//! Group action on polynomials and rational functions, with a shared cache of
//! monomial images.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::linear_form::LinearForm;
use super::monomial::Mono;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::coxeter::CoxeterGroup;
use crate::scalars::Cyc;

/// (w·f)(x) = f(wᵀx), i.e. x_j ↦ Σ_i w_ij x_i. The same substitution moves
/// derivatives: w ∂^γ w⁻¹ = Π_j (Σ_i w_ij ∂_i)^{γ_j}.
pub struct Action {
    group: Arc<CoxeterGroup>,
    images: Vec<Vec<Poly>>,
    cache: RwLock<HashMap<(u32, Mono), Arc<Poly>>>,
}

impl std::fmt::Debug for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Action(order {}, dim {})", self.group.order(), self.group.dim())
    }
}

impl Action {
    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        let n = group.dim();
        let images = (0..group.order() as u32)
            .map(|w| {
                let m = group.matrix(w);
                (0..n)
                    .map(|j| Poly::linear(&(0..n).map(|i| m.get(i, j).clone()).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Action { group, images, cache: RwLock::new(HashMap::new()) }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn monomial(&self, w: u32, m: Mono) -> Arc<Poly> {
        if let Some(p) = self.cache.read().expect("cache lock").get(&(w, m)) {
            return p.clone();
        }
        let p = Arc::new(self.compute(w, m));
        self.cache.write().expect("cache lock").insert((w, m), p.clone());
        p
    }

    fn compute(&self, w: u32, m: Mono) -> Poly {
        if m.is_one() {
            return Poly::one();
        }
        // peel one variable so intermediate products are cached too
        let n = self.dim();
        let j = (0..n).rev().find(|&j| m.exp(j) > 0).expect("non-unit monomial");
        let rest = m.with_exp(j, m.exp(j) - 1);
        self.monomial(w, rest).mul(&self.images[w as usize][j])
    }

    pub fn poly(&self, w: u32, p: &Poly) -> Poly {
        if w == self.group.identity() || p.is_constant() {
            return p.clone();
        }
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            for (m2, c2) in self.monomial(w, *m).terms() {
                terms.push((*m2, c * c2));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn form(&self, w: u32, l: &LinearForm) -> (LinearForm, Cyc) {
        l.act(self.group.matrix(w))
    }

    pub fn ratfunc(&self, w: u32, f: &RationalFunction) -> RationalFunction {
        if w == self.group.identity() || f.is_zero() {
            return f.clone();
        }
        f.map(|p| self.poly(w, p), |l| self.form(w, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{GroupLabel, RootSystem};
    use crate::opalg::poly::strategies::poly;
    use proptest::prelude::*;

    fn action() -> &'static Action {
        static ACT: std::sync::OnceLock<Action> = std::sync::OnceLock::new();
        ACT.get_or_init(|| {
            let rs = RootSystem::build(GroupLabel::B(3)).unwrap();
            Action::new(Arc::new(CoxeterGroup::generate(&rs).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn is_a_left_action(p in poly(3, 3), a in 0u32..48, b in 0u32..48) {
            let act = action();
            let g = act.group().clone();
            let lhs = act.poly(g.mul(a, b), &p);
            let rhs = act.poly(a, &act.poly(b, &p));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pullback_matches_evaluation(p in poly(3, 3), w in 0u32..48) {
            let act = action();
            let x: Vec<Cyc> = vec![Cyc::frac(2, 3), Cyc::from_int(-1), Cyc::frac(5, 7)];
            let wt = act.group().matrix(w).transpose();
            prop_assert_eq!(act.poly(w, &p).eval(&x), p.eval(&wt.apply(&x)));
        }
    }

    #[test]
    fn acts_on_denominators() {
        let act = action();
        let f = RationalFunction::inverse_linear(&[Cyc::one(), Cyc::from_int(-1), Cyc::zero()]).unwrap();
        let x: Vec<Cyc> = vec![Cyc::frac(2, 3), Cyc::from_int(-1), Cyc::frac(5, 7)];
        for w in 0..48 {
            let wt = act.group().matrix(w).transpose();
            assert_eq!(act.ratfunc(w, &f).eval(&x).unwrap(), f.eval(&wt.apply(&x)).unwrap());
        }
    }
}
