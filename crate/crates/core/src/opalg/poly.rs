//! Sparse multivariate polynomials over Q(ζ_n).

use std::fmt;

use super::monomial::Mono;
use crate::algebra::Coeff;
use crate::scalars::Cyc;

/// Terms sorted by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<(Mono, Cyc)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyc::one())
    }

    pub fn constant(c: Cyc) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: Cyc) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i), Cyc::one())
    }

    /// Σ c_i x_i.
    pub fn linear(c: &[Cyc]) -> Self {
        Self::from_terms(c.iter().enumerate().map(|(i, c)| (Mono::var(i), c.clone())).collect())
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Mono, Cyc)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(Mono, Cyc)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Cyc)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_term(&self) -> Cyc {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Cyc::zero(),
        }
    }

    pub fn coeff(&self, m: Mono) -> Cyc {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Cyc::zero(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Cyc) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: Mono, c: &Cyc) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(self.terms[0].0, &self.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                terms.push((m1.mul(*m2), c1 * c2));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient in the lexicographic order, None if `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.terms.last()?.clone();
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.last().cloned() {
            let qm = m.div(lm)?;
            let qc = &c * &lc_inv;
            rem = rem.sub(&d.mul_monomial(qm, &qc));
            q.push((qm, qc));
        }
        Some(Poly::from_terms(q))
    }

    pub fn deriv(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), c * &Cyc::from_int(e as i64))
            })
            .collect();
        Poly::from_terms(terms)
    }

    pub fn eval(&self, point: &[Cyc]) -> Cyc {
        let mut s = Cyc::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &x.pow(e as i64).expect("nonnegative power");
                }
            }
            s += &t;
        }
        s
    }

    /// Substitutes polynomials for variables: x_i ↦ images[i].
    pub fn compose(&self, images: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients as a polynomial in `var`: result[k] multiplies var^k.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, Cyc)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn fmt_with(&self, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else {
                if !c.is_one() {
                    write!(f, "({c})*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

pub struct Named<'a>(pub &'a Poly, pub &'a [&'a str]);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(self.1, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&["x1", "x2", "x3", "x4"], f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for Poly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = Poly::add(self, rhs);
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Cyc) -> Self {
        Poly::scale(self, c)
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::scalars::strategies::rational;
    use proptest::prelude::*;

    /// Random polynomial in `nvars` variables of degree ≤ `deg` over Q(ζ_12).
    pub fn poly(nvars: usize, deg: u32) -> impl Strategy<Value = Poly> {
        let mono = prop::collection::vec(0..=deg, nvars).prop_filter_map("degree", move |e| {
            (e.iter().sum::<u32>() <= deg).then(|| Mono::from_exps(&e))
        });
        let coef = (rational(), 0i64..4).prop_map(|(q, k)| &Cyc::from(q) * &Cyc::root_of_unity(12, k));
        prop::collection::vec((mono, coef), 0..5).prop_map(Poly::from_terms)
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::poly;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_identities() {
        let (x, y) = (Poly::var(0), Poly::var(1));
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert_eq!(x.pow(3).deriv(0), x.pow(2).scale(&Cyc::from_int(3)));
        assert!(x.sub(&x).is_zero());
        let d = x.sub(&y);
        assert_eq!(x.mul(&x).sub(&y.mul(&y)).div_exact(&d), Some(x.add(&y)));
        assert_eq!(x.mul(&x).add(&y).div_exact(&d), None);
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(3, 3), b in poly(3, 3), c in poly(3, 2)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn exact_division(a in poly(3, 3), b in poly(3, 2)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }

        #[test]
        fn leibniz(a in poly(2, 4), b in poly(2, 4)) {
            let lhs = a.mul(&b).deriv(1);
            let rhs = a.deriv(1).mul(&b).add(&a.mul(&b.deriv(1)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
