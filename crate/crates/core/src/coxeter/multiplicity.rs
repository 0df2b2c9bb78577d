use super::roots::{reflect, GroupLabel, RootSystem};
use super::CoxeterError;
use crate::scalars::Rational;

/// A W-invariant function on the roots, stored per positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityFunction {
    pub values: Vec<Rational>,
}

/// W-orbit class of each positive root (classes numbered by first occurrence).
pub fn root_classes(rs: &RootSystem) -> Vec<usize> {
    let n = rs.positive_roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for a in &rs.positive_roots {
        for (j, b) in rs.positive_roots.iter().enumerate() {
            let img = reflect(a, b).expect("nonzero root");
            let (k, _) = rs.find_root(&img).expect("reflection stable");
            let (x, y) = (find(&mut parent, j), find(&mut parent, k));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut ids: Vec<usize> = Vec::new();
    roots
        .iter()
        .map(|r| match ids.iter().position(|x| x == r) {
            Some(p) => p,
            None => {
                ids.push(*r);
                ids.len() - 1
            }
        })
        .collect()
}

impl MultiplicityFunction {
    /// Per-root values; fails if two roots in one W-orbit disagree.
    pub fn from_values(rs: &RootSystem, values: Vec<Rational>) -> Result<Self, CoxeterError> {
        if values.len() != rs.positive_roots.len() {
            return Err(CoxeterError::Invalid("one multiplicity per positive root required".into()));
        }
        for a in &rs.positive_roots {
            for (j, b) in rs.positive_roots.iter().enumerate() {
                let (k, _) = rs.find_root(&reflect(a, b)?).expect("reflection stable");
                if values[j] != values[k] {
                    return Err(CoxeterError::OrbitMismatch(j, k));
                }
            }
        }
        Ok(MultiplicityFunction { values })
    }

    /// Two-coupling assignment used by the models: which orbit is "short"
    /// follows the conventions of each family's explicit Dunkl operators.
    pub fn from_couplings(rs: &RootSystem, k_s: &Rational, k_l: &Rational) -> Result<Self, CoxeterError> {
        let classes = root_classes(rs);
        let short_class = match rs.label {
            // e_k carries k_s; e_i ± e_j carry k_l
            GroupLabel::B(l) => classes[rs.positive_roots.len() - l],
            GroupLabel::A(_) => classes[0],
            // e_i − e_j carry k_s
            GroupLabel::I2InR3(_) => classes[0],
            // even angles carry k_s
            GroupLabel::I2InR2(_) => classes[0],
        };
        let values = classes.iter().map(|&c| if c == short_class { k_s.clone() } else { k_l.clone() }).collect();
        Self::from_values(rs, values)
    }

    pub fn constant(rs: &RootSystem, k: &Rational) -> Self {
        MultiplicityFunction { values: vec![k.clone(); rs.positive_roots.len()] }
    }

    pub fn value(&self, root: usize) -> &Rational {
        &self.values[root]
    }

    /// Exhaustive check of k(β) = k(s_α β).
    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        Self::from_values(rs, self.values.clone()).is_ok()
    }
}
