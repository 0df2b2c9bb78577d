//! Small dense matrices and vectors over cyclotomic numbers.

use std::fmt;

use crate::scalars::Cyc;

pub type Vector = Vec<Cyc>;

pub fn dot(a: &[Cyc], b: &[Cyc]) -> Cyc {
    let mut s = Cyc::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn scale_vec(c: &Cyc, v: &[Cyc]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn sub_vec(a: &[Cyc], b: &[Cyc]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Cyc::zero(); dim];
    v[i] = Cyc::one();
    v
}

pub fn int_vector(v: &[i64]) -> Vector {
    v.iter().map(|&x| Cyc::from_int(x)).collect()
}

pub fn is_zero_vec(v: &[Cyc]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Square matrix, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    data: Vec<Cyc>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Cyc::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Cyc::one();
        }
        Mat { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vector(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        Mat { n, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Cyc::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                data.push(s);
            }
        }
        Mat { n, data }
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn apply(&self, v: &[Cyc]) -> Vector {
        (0..self.n).map(|i| dot(&self.data[i * self.n..(i + 1) * self.n], v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// MᵀM = I, exactly.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }

    /// Reflection s_α = I − 2αα^T/(α,α).
    pub fn reflection(alpha: &[Cyc]) -> Option<Mat> {
        let nn = dot(alpha, alpha);
        if nn.is_zero() {
            return None;
        }
        let f = &Cyc::from_int(-2) / &nn;
        let n = alpha.len();
        let mut m = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                let t = &(&f * &alpha[i]) * &alpha[j];
                if !t.is_zero() {
                    let e = &mut m.data[i * n + j];
                    *e += &t;
                }
            }
        }
        Some(m)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
