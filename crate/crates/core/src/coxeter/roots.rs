use std::fmt;

use super::linalg::{dot, int_vector, is_zero_vec, Mat, Vector};
use super::CoxeterError;
use crate::scalars::Cyc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    /// B_L acting on R^L.
    B(usize),
    /// A_{L-1} acting on R^L.
    A(usize),
    /// Dihedral I₂(m) acting on R².
    I2InR2(u32),
    /// Dihedral I₂(m) acting on R³ (only m = 6).
    I2InR3(u32),
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::B(l) => write!(f, "B_{l}"),
            GroupLabel::A(l) => write!(f, "A_{}", l - 1),
            GroupLabel::I2InR2(m) => write!(f, "I2({m})-in-R2"),
            GroupLabel::I2InR3(m) => write!(f, "I2({m})-in-R3"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: GroupLabel,
    pub ambient_dim: usize,
    pub rank: usize,
    pub positive_roots: Vec<Vector>,
    /// Indices into `positive_roots`.
    pub simple: Vec<usize>,
    /// Cyclotomic order of the smallest field holding every constant of the model.
    pub field_order: u32,
}

/// s_α(μ) = μ − 2(μ,α)/(α,α) α.
pub fn reflect(alpha: &[Cyc], mu: &[Cyc]) -> Result<Vector, CoxeterError> {
    let nn = dot(alpha, alpha);
    if nn.is_zero() {
        return Err(CoxeterError::ZeroRoot);
    }
    let f = &(&Cyc::from_int(2) * &dot(mu, alpha)) / &nn;
    Ok(mu.iter().zip(alpha).map(|(m, a)| m - &(&f * a)).collect())
}

fn e_pm(dim: usize, i: usize, j: usize, sign: i64) -> Vector {
    let mut v = vec![0i64; dim];
    v[i] = 1;
    v[j] = sign;
    int_vector(&v)
}

impl RootSystem {
    pub fn build(label: GroupLabel) -> Result<Self, CoxeterError> {
        let rs = match &label {
            GroupLabel::B(l) => {
                let l = *l;
                if l == 0 {
                    return Err(CoxeterError::UnsupportedFamily("B_0".into()));
                }
                let mut roots = Vec::new();
                let mut simple = Vec::new();
                for i in 0..l {
                    for j in i + 1..l {
                        if j == i + 1 {
                            simple.push(roots.len());
                        }
                        roots.push(e_pm(l, i, j, -1));
                        roots.push(e_pm(l, i, j, 1));
                    }
                }
                for k in 0..l {
                    if k == l - 1 {
                        simple.push(roots.len());
                    }
                    let mut v = vec![0i64; l];
                    v[k] = 1;
                    roots.push(int_vector(&v));
                }
                RootSystem { label: label.clone(), ambient_dim: l, rank: l, positive_roots: roots, simple, field_order: 4 }
            }
            GroupLabel::A(l) => {
                let l = *l;
                if l < 2 {
                    return Err(CoxeterError::UnsupportedFamily("A_0".into()));
                }
                let mut roots = Vec::new();
                let mut simple = Vec::new();
                for i in 0..l {
                    for j in i + 1..l {
                        if j == i + 1 {
                            simple.push(roots.len());
                        }
                        roots.push(e_pm(l, i, j, -1));
                    }
                }
                RootSystem { label: label.clone(), ambient_dim: l, rank: l - 1, positive_roots: roots, simple, field_order: 4 }
            }
            GroupLabel::I2InR3(m) => {
                if *m != 6 {
                    return Err(CoxeterError::UnsupportedFamily(format!("I2({m}) in R3")));
                }
                let roots = [[1, -1, 0], [-1, 0, 1], [0, -1, 1], [-2, 1, 1], [1, -2, 1], [-1, -1, 2]]
                    .iter()
                    .map(|r| int_vector(r))
                    .collect();
                RootSystem { label: label.clone(), ambient_dim: 3, rank: 2, positive_roots: roots, simple: vec![0, 3], field_order: 12 }
            }
            GroupLabel::I2InR2(m) => {
                let m = *m;
                if m < 2 {
                    return Err(CoxeterError::UnsupportedFamily(format!("I2({m})")));
                }
                let order = num_integer::lcm(4, 2 * m);
                let roots: Vec<Vector> = if m == 6 {
                    // e1 - e2, e1 ∓ tan(π/12) e2, e1 + e2, ±e1 + cot(π/12) e2
                    let s3 = &Cyc::root_of_unity(12, 1) + &Cyc::root_of_unity(12, 11);
                    let tan = &Cyc::from_int(2) - &s3;
                    let cot = &Cyc::from_int(2) + &s3;
                    vec![
                        int_vector(&[1, -1]),
                        vec![Cyc::one(), -&tan],
                        vec![Cyc::one(), tan],
                        int_vector(&[1, 1]),
                        vec![Cyc::one(), cot.clone()],
                        vec![Cyc::from_int(-1), cot],
                    ]
                } else {
                    // direction angle −π/4 + kπ/m, scaled by √2
                    (0..m as i64)
                        .map(|k| {
                            let (c, s) = (Cyc::cos_pi(k, m), Cyc::sin_pi(k, m));
                            vec![&c + &s, &s - &c]
                        })
                        .collect()
                };
                let roots = roots
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| x.embed(order).expect("field order")).collect())
                    .collect();
                RootSystem {
                    label: label.clone(),
                    ambient_dim: 2,
                    rank: 2,
                    positive_roots: roots,
                    simple: vec![0, m as usize - 1],
                    field_order: order,
                }
            }
        };
        rs.validate()?;
        Ok(rs)
    }

    pub fn simple_roots(&self) -> Vec<&Vector> {
        self.simple.iter().map(|&i| &self.positive_roots[i]).collect()
    }

    pub fn reflection_matrix(&self, root: usize) -> Mat {
        Mat::reflection(&self.positive_roots[root]).expect("roots are nonzero")
    }

    /// Index of the positive root proportional to `v` and the sign of proportionality.
    pub fn find_root(&self, v: &[Cyc]) -> Option<(usize, bool)> {
        for (i, r) in self.positive_roots.iter().enumerate() {
            if let Some(pos) = proportional(r, v) {
                return Some((i, pos));
            }
        }
        None
    }

    /// Checks the root-system axioms on the stored data.
    pub fn validate(&self) -> Result<(), CoxeterError> {
        let n = self.positive_roots.len();
        for (i, a) in self.positive_roots.iter().enumerate() {
            if a.len() != self.ambient_dim {
                return Err(CoxeterError::Invalid(format!("root {i} has wrong dimension")));
            }
            if is_zero_vec(a) {
                return Err(CoxeterError::ZeroRoot);
            }
            for b in &self.positive_roots[i + 1..] {
                if proportional(a, b).is_some() {
                    return Err(CoxeterError::Invalid("parallel positive roots".into()));
                }
            }
        }
        for a in &self.positive_roots {
            for b in &self.positive_roots {
                let img = reflect(a, b)?;
                if self.find_root(&img).is_none() {
                    return Err(CoxeterError::Invalid("root system is not reflection stable".into()));
                }
            }
        }
        if self.simple.iter().any(|&s| s >= n) {
            return Err(CoxeterError::Invalid("simple root index out of range".into()));
        }
        Ok(())
    }
}

/// `Some(true)` if b = λa with λ > 0, `Some(false)` if λ < 0; vectors are real.
fn proportional(a: &[Cyc], b: &[Cyc]) -> Option<bool> {
    let p = a.iter().position(|x| !x.is_zero())?;
    if b[p].is_zero() {
        return None;
    }
    let lambda = &b[p] / &a[p];
    for (x, y) in a.iter().zip(b) {
        if &(&lambda * x) != y {
            return None;
        }
    }
    Some(lambda.to_complex().0 > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_roots_in_reference_order() {
        let rs = RootSystem::build(GroupLabel::B(2)).unwrap();
        let expect = [[1, -1], [1, 1], [1, 0], [0, 1]];
        assert_eq!(rs.positive_roots.len(), 4);
        for (r, e) in rs.positive_roots.iter().zip(expect.iter()) {
            assert_eq!(*r, int_vector(e));
        }
    }

    #[test]
    fn reflect_basics() {
        let a = int_vector(&[1, -1, 0]);
        assert_eq!(reflect(&a, &a).unwrap(), int_vector(&[-1, 1, 0]));
        assert_eq!(reflect(&a, &int_vector(&[1, 0, 0])).unwrap(), int_vector(&[0, 1, 0]));
        assert!(matches!(reflect(&int_vector(&[0, 0]), &int_vector(&[1, 0])), Err(CoxeterError::ZeroRoot)));
    }

    #[test]
    fn long_reflection_matrix_in_r3() {
        let rs = RootSystem::build(GroupLabel::I2InR3(6)).unwrap();
        let r = rs.reflection_matrix(3);
        let third = Cyc::frac(1, 3);
        let expect: Vec<Vec<Cyc>> = [[-1, 2, 2], [2, 2, -1], [2, -1, 2]]
            .iter()
            .map(|row| row.iter().map(|&x| &third * &Cyc::from_int(x)).collect())
            .collect();
        assert_eq!(r, Mat::from_rows(expect));
    }

    #[test]
    fn dihedral_plane_roots() {
        let rs = RootSystem::build(GroupLabel::I2InR2(6)).unwrap();
        assert_eq!(rs.positive_roots.len(), 6);
        assert_eq!(rs.positive_roots[3], int_vector(&[1, 1]));
        // e1 + cot(π/12) e2 with cot = 2 + √3
        let (re, _) = rs.positive_roots[4][1].to_complex();
        assert!((re - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        for m in [3u32, 4, 5, 8] {
            let rs = RootSystem::build(GroupLabel::I2InR2(m)).unwrap();
            assert_eq!(rs.positive_roots.len(), m as usize);
        }
    }

    #[test]
    fn unsupported() {
        assert!(matches!(RootSystem::build(GroupLabel::I2InR3(4)), Err(CoxeterError::UnsupportedFamily(_))));
    }
}
