//! Elements of the cyclotomic fields Q(ζ_n) in the power basis
//! `1, ζ, …, ζ^{φ(n)-1}` reduced modulo the n-th cyclotomic polynomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use smallvec::SmallVec;

use super::{Rational, ScalarError};

/// Per-order data: φ(n), Φ_n and the residues of `x^k mod Φ_n`.
#[derive(Debug)]
pub struct FieldData {
    pub order: u32,
    pub degree: usize,
    /// `powers[k]` = x^k mod Φ_n as integer coefficients, for k < max(n, 2φ-1).
    powers: Vec<Vec<i64>>,
}

fn registry() -> &'static RwLock<HashMap<u32, &'static FieldData>> {
    static REG: OnceLock<RwLock<HashMap<u32, &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic; coefficients are stored lowest degree first.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl FieldData {
    pub fn get(order: u32) -> &'static FieldData {
        assert!(order >= 1, "cyclotomic order must be positive");
        if let Some(f) = registry().read().unwrap().get(&order) {
            return f;
        }
        let mut w = registry().write().unwrap();
        if let Some(f) = w.get(&order) {
            return f;
        }
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let count = (order as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_n
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..degree {
                next[i] -= top * phi[i];
            }
            cur = next;
        }
        let leaked: &'static FieldData = Box::leak(Box::new(FieldData { order, degree, powers }));
        w.insert(order, leaked);
        leaked
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.order as usize]
    }
}

type Coeffs = SmallVec<[Rational; 4]>;

/// Exact element of Q(ζ_n).
///
/// Invariants: coefficient vector has no trailing zeros; values that are
/// rational always live in order 1.
#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static FieldData,
    coeffs: Coeffs,
}

pub type Cyc = Cyclotomic;

fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

impl Cyclotomic {
    fn from_parts(field: &'static FieldData, mut coeffs: Coeffs) -> Self {
        trim(&mut coeffs);
        let field = if coeffs.len() <= 1 { FieldData::get(1) } else { field };
        Cyclotomic { field, coeffs }
    }

    pub fn zero() -> Self {
        Cyclotomic { field: FieldData::get(1), coeffs: Coeffs::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = Coeffs::new();
        if !q.is_zero() {
            coeffs.push(q);
        }
        Cyclotomic { field: FieldData::get(1), coeffs }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n, d).expect("nonzero denominator"))
    }

    /// Builds Σ c_k ζ_n^k from an arbitrary-length coefficient list.
    pub fn from_coefficients(order: u32, coeffs: &[Rational]) -> Self {
        let field = FieldData::get(order);
        let mut out: Coeffs = SmallVec::from_elem(Rational::ZERO, field.degree);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in field.power(k).iter().enumerate() {
                if *r != 0 {
                    out[i] += &(c * &Rational::from_int(*r));
                }
            }
        }
        Self::from_parts(field, out)
    }

    /// ζ_n^k, reduced.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let field = FieldData::get(n);
        let k = k.rem_euclid(n as i64) as usize;
        let coeffs = field.power(k).iter().map(|&r| Rational::from_int(r)).collect();
        Self::from_parts(field, coeffs)
    }

    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// cos(kπ/m) in Q(ζ_{2m}).
    pub fn cos_pi(k: i64, m: u32) -> Self {
        let z = Self::root_of_unity(2 * m, k);
        &(&z + &z.conj()) * &Self::frac(1, 2)
    }

    /// sin(kπ/m) in Q(ζ_{lcm(4, 2m)}).
    pub fn sin_pi(k: i64, m: u32) -> Self {
        let z = Self::root_of_unity(2 * m, k);
        let diff = &z - &z.conj();
        // (z - z̄) / (2i) = -i (z - z̄) / 2
        &(&diff * &Self::i()) * &Self::frac(-1, 2)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coefficients in the power basis of the current order (length φ(n), zero padded).
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coeffs.to_vec();
        v.resize(self.field.degree, Rational::ZERO);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::ZERO),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Re-expresses `self` in Q(ζ_m). Requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Self, ScalarError> {
        let n = self.order();
        if m % n != 0 {
            return Err(ScalarError::NonDivisibleOrder { from: n, to: m });
        }
        if self.is_rational() || n == m {
            return Ok(self.clone());
        }
        let step = (m / n) as usize;
        let mut spread = vec![Rational::ZERO; step * (self.coeffs.len() - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[k * step] = c.clone();
        }
        Ok(Self::from_coefficients(m, &spread))
    }

    /// Coefficient vector of length φ(m) in Q(ζ_m). Requires `order | m`.
    pub fn coefficients_in(&self, m: u32) -> Result<Vec<Rational>, ScalarError> {
        self.embed(m)?;
        Ok(self.padded_in(m).to_vec())
    }

    /// Coefficient vector of length φ(m) after embedding into order `m`.
    fn padded_in(&self, m: u32) -> Coeffs {
        let e = self.embed(m).expect("order divides common order");
        let mut c = e.coeffs;
        c.resize(FieldData::get(m).degree, Rational::ZERO);
        c
    }

    fn common_order(a: &Self, b: &Self) -> u32 {
        let (n, m) = (a.order(), b.order());
        if n == m {
            n
        } else {
            n.lcm(&m)
        }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order() as usize;
        let mut spread = vec![Rational::ZERO; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[(n - k) % n] += c;
        }
        Self::from_coefficients(self.order(), &spread)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|c| c * q).collect();
        Cyclotomic { field: self.field, coeffs }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::InvalidScalar("inverse of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.inv()?));
        }
        // Solve (multiplication-by-self matrix) · x = e_0 over Q.
        let d = self.field.degree;
        let n = self.order();
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::ZERO; d + 1]; d];
        for j in 0..d {
            let col = (self * &Self::root_of_unity(n, j as i64)).padded_in(n);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = Rational::ONE;
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| ScalarError::InvalidScalar("singular multiplication matrix".into()))?;
            m.swap(col, piv);
            let pinv = m[col][col].inv()?;
            for x in m[col].iter_mut() {
                *x = &*x * &pinv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=d {
                        let t = &m[col][c] * &f;
                        m[r][c] -= &t;
                    }
                }
            }
        }
        let sol: Vec<Rational> = (0..d).map(|i| m[i][d].clone()).collect();
        Ok(Self::from_coefficients(n, &sol))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Numerical value under ζ_n ↦ e^{2πi/n}. For display and sign tests only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += c.to_f64() * a.cos();
            im += c.to_f64() * a.sin();
        }
        (re, im)
    }

    pub(crate) fn raw_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.field, other.field) {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() || other.is_rational() {
            return false;
        }
        let m = Self::common_order(self, other);
        self.padded_in(m) == other.padded_in(m)
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coefficient vectors in the common field. It is a
/// total order on values sharing one field order, which is all canonical
/// keys (linear forms) ever need.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        let m = Self::common_order(self, other);
        let a = self.padded_in(m);
        let b = other.padded_in(m);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if std::ptr::eq(self.field, rhs.field) {
            let n = self.coeffs.len().max(rhs.coeffs.len());
            let mut c: Coeffs = SmallVec::with_capacity(n);
            for i in 0..n {
                match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => c.push(a + b),
                    (Some(a), None) => c.push(a.clone()),
                    (None, Some(b)) => c.push(b.clone()),
                    (None, None) => unreachable!(),
                }
            }
            return Cyclotomic::from_parts(self.field, c);
        }
        if rhs.is_rational() {
            let mut c = self.coeffs.clone();
            c[0] += &rhs.coeffs[0];
            return Cyclotomic::from_parts(self.field, c);
        }
        if self.is_rational() {
            return rhs + self;
        }
        let m = Cyclotomic::common_order(self, rhs);
        let a = self.padded_in(m);
        let b = rhs.padded_in(m);
        let c = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        Cyclotomic::from_parts(FieldData::get(m), c)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if rhs.is_rational() {
            return self.scale_rational(&rhs.coeffs[0]);
        }
        if self.is_rational() {
            return rhs.scale_rational(&self.coeffs[0]);
        }
        let (field, a, b): (&'static FieldData, Coeffs, Coeffs) = if std::ptr::eq(self.field, rhs.field) {
            (self.field, self.coeffs.clone(), rhs.coeffs.clone())
        } else {
            let m = Cyclotomic::common_order(self, rhs);
            (FieldData::get(m), self.padded_in(m), rhs.padded_in(m))
        };
        let mut conv = vec![Rational::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += &(x * y);
                }
            }
        }
        let d = field.degree;
        let mut out: Coeffs = SmallVec::from_elem(Rational::ZERO, d);
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] += &c;
            } else {
                for (i, r) in field.power(k).iter().enumerate() {
                    if *r != 0 {
                        out[i] += &(&c * &Rational::from_int(*r));
                    }
                }
            }
        }
        Cyclotomic::from_parts(field, out)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on division by zero; [`Cyclotomic::inv`] is the checked path.
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inv().expect("cyclotomic division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if rhs.is_zero() {
            return;
        }
        if std::ptr::eq(self.field, rhs.field) {
            if self.coeffs.len() < rhs.coeffs.len() {
                self.coeffs.resize(rhs.coeffs.len(), Rational::ZERO);
            }
            for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                *a += b;
            }
            trim(&mut self.coeffs);
            if self.coeffs.len() <= 1 {
                self.field = FieldData::get(1);
            }
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self += &(-rhs);
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
    }

    #[test]
    fn gaussian_integers() {
        let one = Cyc::one();
        let i = Cyc::i();
        assert_eq!(&(&one + &i) * &(&one - &i), Cyc::from_int(2));
        assert_eq!(&i * &i, Cyc::from_int(-1));
    }

    #[test]
    fn root_inverse() {
        for n in [3u32, 4, 5, 8, 12] {
            for k in 0..n as i64 {
                let z = Cyc::root_of_unity(n, k);
                assert_eq!(z.inv().unwrap(), Cyc::root_of_unity(n, n as i64 - k));
                assert!(z.pow(n as i64).unwrap().is_one());
            }
        }
    }

    #[test]
    fn sqrt3_squared() {
        let s = &Cyc::root_of_unity(12, 1) + &Cyc::root_of_unity(12, 11);
        assert_eq!(&s * &s, Cyc::from_int(3));
    }

    #[test]
    fn minus_one_is_square_root_of_unity() {
        assert_eq!(Cyc::root_of_unity(2, 1), Cyc::from_int(-1));
    }

    #[test]
    fn embeddings() {
        let q = Cyc::frac(5, 3);
        assert_eq!(q.embed(12).unwrap().coefficients()[0], Rational::new(5, 3).unwrap());
        assert_eq!(Cyc::i().embed(12).unwrap(), Cyc::root_of_unity(12, 3));
        assert_eq!(Cyc::root_of_unity(6, 1).embed(12).unwrap(), Cyc::root_of_unity(12, 2));
        assert!(matches!(Cyc::i().embed(6), Err(ScalarError::NonDivisibleOrder { .. })));
        // equality across orders
        assert_eq!(Cyc::i(), Cyc::root_of_unity(12, 3));
    }

    #[test]
    fn trig_values() {
        // tan(π/12) = 2 - √3
        let t = &Cyc::sin_pi(1, 12) / &Cyc::cos_pi(1, 12);
        let s3 = &Cyc::root_of_unity(12, 1) + &Cyc::root_of_unity(12, 11);
        assert_eq!(t, &Cyc::from_int(2) - &s3);
        let (re, im) = Cyc::sin_pi(1, 3).to_complex();
        assert!((re - 3f64.sqrt() / 2.0).abs() < 1e-12 && im.abs() < 1e-12);
    }

    mod props {
        use super::super::super::strategies::{cyc, cyc_in};
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ring_axioms(a in cyc_in(12), b in cyc(), c in cyc()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) - &b, a);
            }

            #[test]
            fn inverse(a in cyc()) {
                prop_assume!(!a.is_zero());
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }

            #[test]
            fn conjugation_is_involutive_automorphism(a in cyc(), b in cyc()) {
                prop_assert_eq!(a.conj().conj(), a.clone());
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            }

            #[test]
            fn reduction_is_canonical(a in cyc_in(12), b in cyc_in(12)) {
                // (a+b)^2 two ways
                let s = &a + &b;
                let lhs = &s * &s;
                let rhs = &(&(&a * &a) + &(&Cyc::from_int(2) * &(&a * &b))) + &(&b * &b);
                prop_assert_eq!(lhs.coefficients_in(12).unwrap(), rhs.coefficients_in(12).unwrap());
            }
        }
    }
}
