//! Normalized linear forms, the irreducible denominators of Dunkl-type
//! coefficients.

use std::fmt;

use super::poly::Poly;
use crate::coxeter::Mat;
use crate::scalars::Cyc;

/// ℓ(x) = Σ c_i x_i with the first nonzero coefficient equal to 1 and
/// trailing zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<Cyc>,
}

impl LinearForm {
    /// Splits a nonzero coefficient vector as λ·ℓ. Returns None for zero.
    pub fn normalize(c: &[Cyc]) -> Option<(LinearForm, Cyc)> {
        let p = c.iter().position(|x| !x.is_zero())?;
        let lambda = c[p].clone();
        let inv = lambda.inv().ok()?;
        let mut coeffs: Vec<Cyc> = c.iter().map(|x| x * &inv).collect();
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        Some((LinearForm { coeffs }, lambda))
    }

    pub fn coeffs(&self) -> &[Cyc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Cyc {
        self.coeffs.get(i).cloned().unwrap_or_else(Cyc::zero)
    }

    pub fn pivot(&self) -> usize {
        self.coeffs.iter().position(|x| !x.is_zero()).expect("nonzero form")
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.coeffs)
    }

    pub fn eval(&self, point: &[Cyc]) -> Cyc {
        let mut s = Cyc::zero();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() {
                s += &(c * x);
            }
        }
        s
    }

    /// The pullback ℓ(wᵀx) written as λ·ℓ'(x).
    pub fn act(&self, w: &Mat) -> (LinearForm, Cyc) {
        let mut c = self.coeffs.clone();
        c.resize(w.dim(), Cyc::zero());
        let image = w.apply(&c);
        LinearForm::normalize(&image).expect("invertible action")
    }

    /// Exact quotient of `p` by this form, or None when it does not divide.
    pub fn divide(&self, p: &Poly) -> Option<Poly> {
        if p.is_zero() {
            return Some(Poly::zero());
        }
        let piv = self.pivot();
        // ℓ = x_p - r
        let r = Poly::linear(
            &self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i == piv { Cyc::zero() } else { -c })
                .collect::<Vec<_>>(),
        );
        let a = p.coefficients_in(piv);
        let d = a.len() - 1;
        if d == 0 {
            return None;
        }
        let mut b = vec![Poly::zero(); d];
        b[d - 1] = a[d].clone();
        for k in (1..d).rev() {
            b[k - 1] = a[k].add(&r.mul(&b[k]));
        }
        let rem = a[0].add(&r.mul(&b[0]));
        if !rem.is_zero() {
            return None;
        }
        let xp = Poly::var(piv);
        let mut q = Poly::zero();
        for bk in b.iter().rev() {
            q = q.mul(&xp).add(bk);
        }
        Some(q)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
