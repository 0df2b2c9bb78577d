//! Row-sparse square matrices over any coefficient ring.

use std::fmt;

use crate::algebra::Coeff;
use crate::opalg::{Action, FunctionCoeff};
use crate::scalars::Cyc;

/// Rows hold (column, value) pairs sorted by column, without zeros.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<T> {
    dim: usize,
    rows: Vec<Vec<(u32, T)>>,
}

impl<T: Coeff> SparseMatrix<T> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let dim = diag.len();
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, t)| if t.is_zero() { Vec::new() } else { vec![(i as u32, t)] })
            .collect();
        SparseMatrix { dim, rows }
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut m = Self::zero(dim);
        for (r, c, t) in entries {
            m.add_entry(r, c, t);
        }
        m
    }

    pub fn add_entry(&mut self, r: usize, c: usize, t: T) {
        assert!(r < self.dim && c < self.dim, "entry ({r}, {c}) outside dimension {}", self.dim);
        if t.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => {
                row[i].1.add_assign_ref(&t);
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => row.insert(i, (c as u32, t)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[(u32, T)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&(c as u32), |e| e.0).ok().map(|i| &row[i].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, t)| (r, *c as usize, t)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().filter_map(|(c, t)| Some((*c, f(t))).filter(|e| !e.1.is_zero())).collect())
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.dim == 0 {
            return o.clone();
        }
        if o.dim == 0 {
            return self.clone();
        }
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| {
                if b.is_empty() {
                    return a.clone();
                }
                if a.is_empty() {
                    return b.clone();
                }
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => {
                            out.push(a[i].clone());
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            out.push(b[j].clone());
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            let mut s = a[i].1.clone();
                            s.add_assign_ref(&b[j].1);
                            if !s.is_zero() {
                                out.push((a[i].0, s));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&a[i..]);
                out.extend_from_slice(&b[j..]);
                out
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn neg(&self) -> Self {
        self.map(|t| t.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        self.map(|t| t.scale(c))
    }

    /// Every entry multiplied on the left by `f`.
    pub fn left_mul_entries(&self, f: &T) -> Self {
        self.map(|t| f.mul_ref(t))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.dim == 0 || o.dim == 0 {
            return Self::zero(self.dim.max(o.dim));
        }
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut acc: Vec<Option<T>> = vec![None; self.dim];
        let mut touched: Vec<u32> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &o.rows[*k as usize] {
                        let p = a.mul_ref(b);
                        match &mut acc[*j as usize] {
                            Some(x) => x.add_assign_ref(&p),
                            slot @ None => {
                                *slot = Some(p);
                                touched.push(*j);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out: Vec<(u32, T)> = touched
                    .drain(..)
                    .filter_map(|j| acc[j as usize].take().filter(|x| !x.is_zero()).map(|x| (j, x)))
                    .collect();
                out
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.dim];
        for (r, c, t) in self.entries() {
            rows[c].push((r as u32, t.clone()));
        }
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn trace(&self) -> Option<T> {
        let mut s: Option<T> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(i) = row.binary_search_by_key(&(r as u32), |e| e.0) {
                match &mut s {
                    Some(x) => x.add_assign_ref(&row[i].1),
                    None => s = Some(row[i].1.clone()),
                }
            }
        }
        s
    }

    /// A ⊗ I_extra, the new factor being least significant.
    pub fn extend(&self, extra: usize) -> Self {
        let mut rows = Vec::with_capacity(self.dim * extra);
        for row in &self.rows {
            for t in 0..extra {
                rows.push(row.iter().map(|(c, x)| (*c * extra as u32 + t as u32, x.clone())).collect());
            }
        }
        SparseMatrix { dim: self.dim * extra, rows }
    }

    /// Relabels basis vectors: result[p(r), p(c)] = self[r, c].
    pub fn permute(&self, p: &[u32]) -> Self {
        let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            let mut nr: Vec<(u32, T)> = row.iter().map(|(c, x)| (p[*c as usize], x.clone())).collect();
            nr.sort_by_key(|e| e.0);
            rows[p[r] as usize] = nr;
        }
        SparseMatrix { dim: self.dim, rows }
    }
}

impl SparseMatrix<Cyc> {
    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![Cyc::one(); dim])
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.len() == 1 && row[0].0 as usize == r && row[0].1.is_one())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a monomial matrix (one nonzero per row and column).
    pub fn monomial_inverse(&self) -> Option<Self> {
        let mut out = Self::zero(self.dim);
        let mut seen = vec![false; self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return None;
            }
            let (c, x) = &row[0];
            if std::mem::replace(&mut seen[*c as usize], true) {
                return None;
            }
            out.add_entry(*c as usize, r, x.inv().ok()?);
        }
        Some(out)
    }

    pub fn lift<T: Coeff>(&self, f: impl Fn(&Cyc) -> T) -> SparseMatrix<T> {
        self.map(f)
    }
}

impl<T: Coeff> Coeff for SparseMatrix<T> {
    fn is_zero(&self) -> bool {
        SparseMatrix::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = SparseMatrix::add(self, rhs);
    }
    fn neg(&self) -> Self {
        SparseMatrix::neg(self)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Cyc) -> Self {
        SparseMatrix::scale(self, c)
    }
}

impl<T: FunctionCoeff> FunctionCoeff for SparseMatrix<T> {
    fn act(&self, action: &Action, w: u32) -> Self {
        self.map(|t| t.act(action, w))
    }
    fn deriv(&self, var: usize) -> Self {
        self.map(|t| t.deriv(var))
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (r, c, t)) in self.entries().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c}): {t}")?;
        }
        write!(f, "}}")
    }
}

impl<T: Coeff> fmt::Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (r, c, t)) in self.entries().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c}): {t:?}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::strategies::cyc_in;
    use proptest::prelude::*;

    fn mat(dim: usize) -> impl Strategy<Value = SparseMatrix<Cyc>> {
        prop::collection::vec((0..dim, 0..dim, cyc_in(4)), 0..8).prop_map(move |e| SparseMatrix::from_entries(dim, e))
    }

    proptest! {
        #[test]
        fn ring_laws(a in mat(5), b in mat(5), c in mat(5)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
            prop_assert_eq!(a.mul(&SparseMatrix::identity(5)), a.clone());
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn extension_is_multiplicative(a in mat(3), b in mat(3)) {
            prop_assert_eq!(a.mul(&b).extend(2), a.extend(2).mul(&b.extend(2)));
        }
    }

    #[test]
    fn monomial_inverse() {
        let m = SparseMatrix::from_entries(3, [(0, 1, Cyc::i()), (1, 2, Cyc::from_int(2)), (2, 0, Cyc::one())]);
        let inv = m.monomial_inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(SparseMatrix::<Cyc>::zero(2).monomial_inverse().is_none());
    }
}
