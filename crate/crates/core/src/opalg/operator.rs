//! Normal-form differential-reflection operators Σ F_{w,β} ∂^β ŵ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::action::Action;
use super::monomial::Mono;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::algebra::Coeff;
use crate::scalars::Cyc;

/// Coefficients that W acts on and that can be differentiated.
pub trait FunctionCoeff: Coeff {
    fn act(&self, action: &Action, w: u32) -> Self;
    fn deriv(&self, var: usize) -> Self;
}

impl FunctionCoeff for RationalFunction {
    fn act(&self, action: &Action, w: u32) -> Self {
        action.ratfunc(w, self)
    }
    fn deriv(&self, var: usize) -> Self {
        RationalFunction::deriv(self, var)
    }
}

impl FunctionCoeff for Poly {
    fn act(&self, action: &Action, w: u32) -> Self {
        action.poly(w, self)
    }
    fn deriv(&self, var: usize) -> Self {
        Poly::deriv(self, var)
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

fn multi_binomial(beta: Mono, delta: Mono) -> i64 {
    (0..super::MAX_VARS).map(|j| binomial(beta.exp(j), delta.exp(j))).product()
}

/// Terms keyed by (group element, derivative multi-index); the coefficient
/// stands to the left: F ∂^β ŵ.
#[derive(Clone)]
pub struct DiffReflOp<C> {
    action: Arc<Action>,
    terms: BTreeMap<(u32, Mono), C>,
}

impl<C: PartialEq> PartialEq for DiffReflOp<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

/// Memo of ∂^δ(w·G) for the coefficients of one factor.
struct DerivCache<'a, C> {
    action: &'a Action,
    map: HashMap<(u32, usize, Mono), C>,
}

impl<C: FunctionCoeff> DerivCache<'_, C> {
    fn get(&mut self, w: u32, idx: usize, g: &C, delta: Mono) -> C {
        if let Some(c) = self.map.get(&(w, idx, delta)) {
            return c.clone();
        }
        let out = if delta.is_one() {
            g.act(self.action, w)
        } else {
            let j = (0..super::MAX_VARS).find(|&j| delta.exp(j) > 0).expect("nonzero index");
            let lower = delta.with_exp(j, delta.exp(j) - 1);
            self.get(w, idx, g, lower).deriv(j)
        };
        self.map.insert((w, idx, delta), out.clone());
        out
    }
}

impl<C: FunctionCoeff> DiffReflOp<C> {
    pub fn zero(action: Arc<Action>) -> Self {
        DiffReflOp { action, terms: BTreeMap::new() }
    }

    pub fn from_term(action: Arc<Action>, w: u32, beta: Mono, c: C) -> Self {
        let mut op = Self::zero(action);
        op.add_term(w, beta, c);
        op
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, Mono), C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order, None for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, b)| b.degree()).max()
    }

    pub fn add_term(&mut self, w: u32, beta: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, beta)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((w, b), c) in &o.terms {
            out.add_term(*w, *b, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &Cyc) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs<D: FunctionCoeff>(&self, f: impl Fn(&C) -> D) -> DiffReflOp<D> {
        let mut out = DiffReflOp::zero(self.action.clone());
        for ((w, b), c) in &self.terms {
            out.add_term(*w, *b, f(c));
        }
        out
    }

    /// Left multiplication by a coefficient: F·A.
    pub fn left_mul(&self, f: &C) -> Self {
        self.map_coeffs(|c| f.mul_ref(c))
    }

    pub fn compose(&self, o: &Self) -> Self {
        let g = self.action.group().clone();
        let mut out = Self::zero(self.action.clone());
        let rhs: Vec<(&(u32, Mono), &C)> = o.terms.iter().collect();
        let mut cache = DerivCache { action: &self.action, map: HashMap::new() };
        for ((w, beta), f) in &self.terms {
            let deltas = beta.divisors();
            for (idx, ((v, gamma), gc)) in rhs.iter().enumerate() {
                let wv = g.mul(*w, *v);
                let moved = self.action.monomial(*w, *gamma);
                for &delta in &deltas {
                    let dg = cache.get(*w, idx, *gc, delta);
                    if dg.is_zero() {
                        continue;
                    }
                    let coef = f.mul_ref(&dg);
                    if coef.is_zero() {
                        continue;
                    }
                    let rest = beta.div(delta).expect("divisor");
                    let b = Cyc::from_int(multi_binomial(*beta, delta));
                    for (m, c) in moved.terms() {
                        out.add_term(wv, rest.mul(*m), coef.scale(&(c * &b)));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    /// ŵ A ŵ⁻¹.
    pub fn conjugate(&self, w: u32) -> Self {
        let g = self.action.group().clone();
        let winv = g.inv(w);
        let mut out = Self::zero(self.action.clone());
        for ((v, beta), c) in &self.terms {
            let wc = c.act(&self.action, w);
            let key = g.mul(g.mul(w, *v), winv);
            for (m, s) in self.action.monomial(w, *beta).terms() {
                out.add_term(key, *m, wc.scale(s));
            }
        }
        out
    }

    /// Top-order part with ∂_j ↦ y_j, provided it is reflection-free with
    /// constant coefficients.
    pub fn principal_symbol(&self) -> Result<Poly, super::OpError>
    where
        C: AsConstant,
    {
        let Some(top) = self.order() else {
            return Ok(Poly::zero());
        };
        let id = self.action.group().identity();
        let mut terms = Vec::new();
        for ((w, beta), c) in &self.terms {
            if beta.degree() != top {
                continue;
            }
            let value = (*w == id).then(|| c.as_constant()).flatten().ok_or_else(|| {
                super::OpError::NonConstantSymbol(format!("term at group element {w}, index {beta:?}"))
            })?;
            terms.push((*beta, value));
        }
        Ok(Poly::from_terms(terms))
    }
}

/// Coefficients that may be constant scalars.
pub trait AsConstant {
    fn as_constant(&self) -> Option<Cyc>;
}

impl AsConstant for RationalFunction {
    fn as_constant(&self) -> Option<Cyc> {
        self.as_poly().filter(|p| p.is_constant()).map(|p| p.constant_term())
    }
}

impl AsConstant for Poly {
    fn as_constant(&self) -> Option<Cyc> {
        self.is_constant().then(|| self.constant_term())
    }
}

impl DiffReflOp<RationalFunction> {
    pub fn identity(action: Arc<Action>) -> Self {
        let id = action.group().identity();
        Self::from_term(action, id, Mono::ONE, RationalFunction::one())
    }

    pub fn scalar(action: Arc<Action>, c: Cyc) -> Self {
        let id = action.group().identity();
        Self::from_term(action, id, Mono::ONE, c.into())
    }

    pub fn multiplication(action: Arc<Action>, f: RationalFunction) -> Self {
        let id = action.group().identity();
        Self::from_term(action, id, Mono::ONE, f)
    }

    pub fn partial(action: Arc<Action>, var: usize) -> Self {
        let id = action.group().identity();
        Self::from_term(action, id, Mono::var(var), RationalFunction::one())
    }

    /// ∂_ξ = Σ ξ_j ∂_j.
    pub fn directional(action: Arc<Action>, xi: &[Cyc]) -> Self {
        let id = action.group().identity();
        let mut op = Self::zero(action);
        for (j, c) in xi.iter().enumerate() {
            op.add_term(id, Mono::var(j), c.clone().into());
        }
        op
    }

    pub fn group_element(action: Arc<Action>, w: u32) -> Self {
        Self::from_term(action, w, Mono::ONE, RationalFunction::one())
    }

    pub fn apply(&self, phi: &RationalFunction) -> RationalFunction {
        let mut out = RationalFunction::zero();
        let mut moved: HashMap<u32, RationalFunction> = HashMap::new();
        for ((w, beta), c) in &self.terms {
            let mut d = moved.entry(*w).or_insert_with(|| self.action.ratfunc(*w, phi)).clone();
            for j in 0..self.dim() {
                for _ in 0..beta.exp(j) {
                    d = d.deriv(j);
                }
            }
            out = out.add(&c.mul(&d));
        }
        out
    }
}

impl<C: FunctionCoeff + fmt::Display> fmt::Display for DiffReflOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["d1", "d2", "d3", "d4"];
        for (k, ((w, beta), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            if !beta.is_one() {
                write!(f, "*")?;
                beta.fmt_with(&names[..self.dim()], f)?;
            }
            if *w != self.action.group().identity() {
                write!(f, "*w{w}")?;
            }
        }
        Ok(())
    }
}

impl<C: FunctionCoeff + fmt::Display> fmt::Debug for DiffReflOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
