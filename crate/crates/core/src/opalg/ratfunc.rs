//! Rational functions whose denominators are products of linear forms.

use std::fmt;

use super::linear_form::LinearForm;
use super::poly::Poly;
use super::OpError;
use crate::algebra::Coeff;
use crate::scalars::Cyc;

/// N / Π ℓ_i^{e_i}, with N coprime to every ℓ_i, so equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalFunction {
    num: Poly,
    den: Vec<(LinearForm, u32)>,
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }
}

impl From<Cyc> for RationalFunction {
    fn from(c: Cyc) -> Self {
        Poly::constant(c).into()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Poly::one().into()
    }

    /// 1 / (c·x). Errors when c is zero.
    pub fn inverse_linear(c: &[Cyc]) -> Result<Self, OpError> {
        let (l, lam) = LinearForm::normalize(c)
            .ok_or_else(|| OpError::InexactDivision("division by the zero form".into()))?;
        let inv = lam.inv().map_err(|e| OpError::InexactDivision(e.to_string()))?;
        Ok(RationalFunction { num: Poly::constant(inv), den: vec![(l, 1)] })
    }

    /// Builds N / Π ℓ^e and cancels common factors.
    pub fn new(num: Poly, den: Vec<(LinearForm, u32)>) -> Self {
        let mut den = den;
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(LinearForm, u32)> = Vec::with_capacity(den.len());
        for (l, e) in den {
            match merged.last_mut() {
                Some((ll, le)) if *ll == l => *le += e,
                _ => merged.push((l, e)),
            }
        }
        let mut r = RationalFunction { num, den: merged };
        r.cancel();
        r
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (l, e) in self.den.iter_mut() {
            while *e > 0 {
                match l.divide(&self.num) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[(LinearForm, u32)] {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let mut r = RationalFunction { num: self.num.add(&o.num), den: self.den.clone() };
            r.cancel();
            return r;
        }
        let (mut i, mut j) = (0, 0);
        let mut den = Vec::new();
        let (mut fa, mut fb) = (Poly::one(), Poly::one());
        while i < self.den.len() || j < o.den.len() {
            let ord = match (self.den.get(i), o.den.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    let (l, e) = &self.den[i];
                    fb = fb.mul(&l.to_poly().pow(*e));
                    den.push((l.clone(), *e));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (l, e) = &o.den[j];
                    fa = fa.mul(&l.to_poly().pow(*e));
                    den.push((l.clone(), *e));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (l, ea) = &self.den[i];
                    let eb = o.den[j].1;
                    if *ea > eb {
                        fb = fb.mul(&l.to_poly().pow(ea - eb));
                    } else if eb > *ea {
                        fa = fa.mul(&l.to_poly().pow(eb - ea));
                    }
                    den.push((l.clone(), (*ea).max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut r = RationalFunction { num: self.num.mul(&fa).add(&o.num.mul(&fb)), den };
        r.cancel();
        r
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.den.is_empty() && o.num.is_constant() {
            return self.scale(&o.num.constant_term());
        }
        if self.den.is_empty() && self.num.is_constant() {
            return o.scale(&self.num.constant_term());
        }
        let mut den = self.den.clone();
        den.extend(o.den.iter().cloned());
        RationalFunction::new(self.num.mul(&o.num), den)
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RationalFunction::new(self.num.mul(p), self.den.clone())
    }

    pub fn exact_div(&self, g: &Self) -> Result<Self, OpError> {
        if g.is_zero() {
            return Err(OpError::InexactDivision("division by zero".into()));
        }
        if g.num.degree() == Some(1) && g.num.constant_term().is_zero() {
            let n = g.num.terms().iter().map(|(m, _)| (0..super::MAX_VARS).position(|j| m.exp(j) == 1).unwrap()).max().unwrap_or(0) + 1;
            let c: Vec<Cyc> = (0..n).map(|j| g.num.coeff(super::Mono::var(j))).collect();
            let inv = RationalFunction::inverse_linear(&c)?;
            let lifted = g.den.iter().fold(self.num.clone(), |a, (l, e)| a.mul(&l.to_poly().pow(*e)));
            return Ok(RationalFunction::new(lifted, self.den.clone()).mul(&inv));
        }
        let lifted = g.den.iter().fold(self.num.clone(), |a, (l, e)| a.mul(&l.to_poly().pow(*e)));
        let num = lifted
            .div_exact(&g.num)
            .ok_or_else(|| OpError::InexactDivision(format!("{} by {}", self, g)))?;
        Ok(RationalFunction::new(num, self.den.clone()))
    }

    pub fn deriv(&self, var: usize) -> Self {
        if self.den.is_empty() {
            return self.num.deriv(var).into();
        }
        let involved: Vec<usize> = (0..self.den.len())
            .filter(|&i| !self.den[i].0.coeff(var).is_zero())
            .collect();
        if involved.is_empty() {
            return RationalFunction::new(self.num.deriv(var), self.den.clone());
        }
        let forms: Vec<Poly> = involved.iter().map(|&i| self.den[i].0.to_poly()).collect();
        let prod_all = forms.iter().fold(Poly::one(), |a, f| a.mul(f));
        let mut num = self.num.deriv(var).mul(&prod_all);
        for (k, &i) in involved.iter().enumerate() {
            let (l, e) = &self.den[i];
            let c = &l.coeff(var) * &Cyc::from_int(*e as i64);
            let others = forms
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != k)
                .fold(Poly::one(), |a, (_, f)| a.mul(f));
            num = num.sub(&self.num.mul(&others).scale(&c));
        }
        let mut den = self.den.clone();
        for &i in &involved {
            den[i].1 += 1;
        }
        let mut r = RationalFunction { num, den };
        r.cancel();
        r
    }

    /// Applies a ring automorphism given its effect on the numerator and on each
    /// denominator form, ℓ ↦ λ·ℓ'.
    pub fn map(
        &self,
        num_map: impl FnOnce(&Poly) -> Poly,
        mut form_map: impl FnMut(&LinearForm) -> (LinearForm, Cyc),
    ) -> Self {
        let mut num = num_map(&self.num);
        let mut den = Vec::with_capacity(self.den.len());
        let mut factor = Cyc::one();
        for (l, e) in &self.den {
            let (l2, lam) = form_map(l);
            factor = &factor * &lam.pow(-(*e as i64)).expect("nonzero scale");
            den.push((l2, *e));
        }
        num = num.scale(&factor);
        den.sort_by(|a, b| a.0.cmp(&b.0));
        RationalFunction { num, den }
    }

    pub fn eval(&self, point: &[Cyc]) -> Result<Cyc, OpError> {
        let mut d = Cyc::one();
        for (l, e) in &self.den {
            let v = l.eval(point);
            if v.is_zero() {
                return Err(OpError::InexactDivision(format!("pole of {l} at evaluation point")));
            }
            d = &d * &v.pow(*e as i64).expect("nonnegative");
        }
        Ok(&self.num.eval(point) / &d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (l, e)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({l})")?;
            } else {
                write!(f, "({l})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for RationalFunction {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = RationalFunction::add(self, rhs);
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Cyc) -> Self {
        RationalFunction::scale(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::poly::strategies::poly;
    use proptest::prelude::*;

    fn inv(c: &[i64]) -> RationalFunction {
        let v: Vec<Cyc> = c.iter().map(|&x| Cyc::from_int(x)).collect();
        RationalFunction::inverse_linear(&v).unwrap()
    }

    fn pt() -> Vec<Cyc> {
        vec![Cyc::frac(7, 3), Cyc::frac(-5, 11), Cyc::frac(13, 2)]
    }

    #[test]
    fn partial_fractions_cancel() {
        // 1/(x(x-y)) - 1/(y(x-y)) = -1/(xy)
        let a = inv(&[1, 0, 0]).mul(&inv(&[1, -1, 0]));
        let b = inv(&[0, 1, 0]).mul(&inv(&[1, -1, 0]));
        let lhs = a.sub(&b);
        let rhs = inv(&[1, 0, 0]).mul(&inv(&[0, 1, 0])).neg();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.denominator().len(), 2);
    }

    #[test]
    fn exact_division() {
        let (x, y) = (Poly::var(0), Poly::var(1));
        let f = RationalFunction::from(x.mul(&x).sub(&y.mul(&y)));
        let g = RationalFunction::from(x.sub(&y));
        assert_eq!(f.exact_div(&g).unwrap(), RationalFunction::from(x.add(&y)));
        let h = inv(&[1, 0, 0]);
        assert_eq!(h.mul(&h), inv(&[1, 0, 0]).exact_div(&RationalFunction::from(x.clone())).unwrap());
        assert!(RationalFunction::from(y.clone()).exact_div(&RationalFunction::from(x.mul(&x).add(&y.mul(&y)))).is_err());
        assert!(inv(&[1, -1, 0]).add(&inv(&[-1, 1, 0])).is_zero());
    }

    #[test]
    fn derivative_of_inverse() {
        let f = inv(&[2, -1, 0]);
        let d = f.deriv(0);
        let expect = f.mul(&f).scale(&Cyc::from_int(-2));
        assert_eq!(d, expect);
        assert!(f.deriv(2).is_zero());
    }

    proptest! {
        #[test]
        fn field_laws_and_eval(p in poly(3, 2), q in poly(3, 2), a in -2i64..3, b in -2i64..3) {
            let f = RationalFunction::from(p.clone()).mul(&inv(&[1, a, 0]));
            let g = RationalFunction::from(q.clone()).mul(&inv(&[0, 1, b])).mul(&inv(&[1, a, 0]));
            let x = pt();
            let s = f.add(&g);
            prop_assert_eq!(s.eval(&x).unwrap(), &f.eval(&x).unwrap() + &g.eval(&x).unwrap());
            let m = f.mul(&g);
            prop_assert_eq!(m.eval(&x).unwrap(), &f.eval(&x).unwrap() * &g.eval(&x).unwrap());
            prop_assert!(s.sub(&g).sub(&f).is_zero());
            // Leibniz holds for quotients too
            let lhs = f.mul(&g).deriv(0);
            let rhs = f.deriv(0).mul(&g).add(&f.mul(&g.deriv(0)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
