//! Representations R: W → End((C^N)^{⊗M}).

use std::collections::VecDeque;
use std::sync::Arc;

use super::matrix::SparseMatrix;
use super::space::{SpinMatrix, SpinSpace};
use super::SpinError;
use crate::coxeter::{CoxeterGroup, GroupLabel, Orbit, RelationCheck};
use crate::scalars::Cyc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinModel {
    /// R_{t_i} = P_{i,i+1}, R_r = Q_L.
    BlStandard,
    /// R_r = P_{23}Q_1Q_2Q_3, R_t = P_{12}.
    G2ThreeSpin,
    /// R_a = Q_1Q_2^{-1}, R_b = P_{12}.
    I2mTwoSpin,
}

/// diag(+1 on the first ⌈N/2⌉ entries, −1 on the rest).
pub fn default_involution(n: usize) -> SpinMatrix {
    SparseMatrix::diagonal((0..n).map(|i| if i < n.div_ceil(2) { Cyc::one() } else { Cyc::from_int(-1) }).collect())
}

/// diag(ζ_m^{c_1}, …, ζ_m^{c_N}), by default c_i = i − 1.
pub fn default_root_twist(n: usize, m: u32, exponents: Option<&[i64]>) -> SpinMatrix {
    SparseMatrix::diagonal(
        (0..n).map(|i| Cyc::root_of_unity(m, exponents.map_or(i as i64, |e| e[i % e.len()]))).collect(),
    )
}

/// Checks Q^order = I.
pub fn validate_twist(q: &SpinMatrix, order: u32) -> Result<(), SpinError> {
    if q.pow(order).is_identity() {
        Ok(())
    } else {
        Err(SpinError::InvalidTwistMatrix(format!("Q^{order} is not the identity")))
    }
}

#[derive(Clone, Debug)]
pub struct SpinRepresentation {
    group: Arc<CoxeterGroup>,
    space: SpinSpace,
    images: Vec<SpinMatrix>,
}

impl SpinRepresentation {
    /// Extends named generator images to the whole group, checking the named
    /// relations and then every Cayley edge.
    pub fn from_generators(
        group: Arc<CoxeterGroup>,
        space: SpinSpace,
        gens: &[(&str, SpinMatrix)],
    ) -> Result<Self, SpinError> {
        let dim = space.dim();
        let mut idx = Vec::new();
        for (name, m) in gens {
            if m.dim() != dim {
                return Err(SpinError::ShapeMismatch(format!("image of {name} has size {}", m.dim())));
            }
            let g = group
                .generator(name)
                .ok_or_else(|| SpinError::RelationFailure(format!("unknown generator {name}")))?;
            idx.push(g);
        }
        let image_of = |name: &str| gens.iter().find(|g| g.0 == name).map(|g| &g.1);
        for rel in group.relations() {
            if !rel.word.iter().all(|(n, _)| image_of(n).is_some()) {
                continue;
            }
            let mut acc = SpinMatrix::identity(dim);
            for (n, e) in &rel.word {
                let g = group.generator(n).expect("checked");
                let m = image_of(n).expect("checked");
                let e = if *e < 0 { (element_order(&group, g) as i32 + e) as u32 } else { *e as u32 };
                acc = acc.mul(&m.pow(e));
            }
            if !acc.is_identity() {
                return Err(SpinError::RelationFailure(rel.name.clone()));
            }
        }
        let mut images: Vec<Option<SpinMatrix>> = vec![None; group.order()];
        images[group.identity() as usize] = Some(SpinMatrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(w) = queue.pop_front() {
            let rw = images[w as usize].clone().expect("visited");
            for ((name, m), &g) in gens.iter().zip(&idx) {
                let gw = group.mul(g, w);
                let img = m.mul(&rw);
                match &images[gw as usize] {
                    Some(existing) if *existing != img => {
                        return Err(SpinError::RelationFailure(format!("{name} applied to element {w}")));
                    }
                    Some(_) => {}
                    None => {
                        images[gw as usize] = Some(img);
                        queue.push_back(gw);
                    }
                }
            }
        }
        let images = images
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| SpinError::RelationFailure("generators do not generate the group".into()))?;
        Ok(SpinRepresentation { group, space, images })
    }

    /// R_w v_1⊗…⊗v_M = v_{w̌⁻¹(1)}⊗…⊗v_{w̌⁻¹(M)}.
    pub fn orbit(group: Arc<CoxeterGroup>, orbit: &Orbit, n: usize) -> Result<Self, SpinError> {
        let space = SpinSpace::new(n, orbit.len());
        let images = (0..group.order() as u32)
            .map(|w| space.site_permutation(orbit.induced_permutation(w)))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = SpinRepresentation { group, space, images };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    pub fn builtin(group: Arc<CoxeterGroup>, model: BuiltinModel, n: usize, q: &SpinMatrix) -> Result<Self, SpinError> {
        let label = group
            .root_system
            .as_ref()
            .map(|r| r.label.clone())
            .ok_or_else(|| SpinError::ShapeMismatch("group without root system".into()))?;
        if q.dim() != n {
            return Err(SpinError::ShapeMismatch(format!("Q has size {}, expected {n}", q.dim())));
        }
        match (model, label) {
            (BuiltinModel::BlStandard, GroupLabel::B(l)) => {
                validate_twist(q, 2)?;
                let space = SpinSpace::new(n, l);
                let mut gens: Vec<(String, SpinMatrix)> = (1..l)
                    .map(|i| Ok((format!("t{i}"), space.transposition(i - 1, i)?)))
                    .collect::<Result<_, SpinError>>()?;
                gens.push(("r".into(), space.local(q, l - 1)?));
                let refs: Vec<(&str, SpinMatrix)> = gens.iter().map(|(s, m)| (s.as_str(), m.clone())).collect();
                Self::from_generators(group, space, &refs)
            }
            (BuiltinModel::G2ThreeSpin, GroupLabel::I2InR3(6)) => {
                validate_twist(q, 2)?;
                let space = SpinSpace::new(n, 3);
                let qqq = space.local(q, 0)?.mul(&space.local(q, 1)?).mul(&space.local(q, 2)?);
                let r = space.transposition(1, 2)?.mul(&qqq);
                let t = space.transposition(0, 1)?;
                Self::from_generators(group, space, &[("r", r), ("t", t)])
            }
            (BuiltinModel::I2mTwoSpin, GroupLabel::I2InR2(m)) => {
                validate_twist(q, m)?;
                let space = SpinSpace::new(n, 2);
                let qinv = q.pow(m - 1);
                let a = space.local(q, 0)?.mul(&space.local(&qinv, 1)?);
                let b = space.transposition(0, 1)?;
                Self::from_generators(group, space, &[("a", a), ("b", b)])
            }
            (model, label) => Err(SpinError::ShapeMismatch(format!("{model:?} is not defined for {label}"))),
        }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn image(&self, w: u32) -> &SpinMatrix {
        &self.images[w as usize]
    }

    pub fn inverse_image(&self, w: u32) -> &SpinMatrix {
        &self.images[self.group.inv(w) as usize]
    }

    /// R_w ⊗ I on `extra` appended sites.
    pub fn extend(&self, extra: usize) -> Self {
        let factor = self.space.n.pow(extra as u32);
        SpinRepresentation {
            group: self.group.clone(),
            space: self.space.with_extra(extra),
            images: self.images.iter().map(|m| m.extend(factor)).collect(),
        }
    }

    pub fn check_homomorphism(&self) -> Result<(), SpinError> {
        for (name, g) in self.group.generators() {
            for w in 0..self.group.order() as u32 {
                if self.image(*g).mul(self.image(w)) != *self.image(self.group.mul(*g, w)) {
                    return Err(SpinError::RelationFailure(format!("{name} applied to element {w}")));
                }
            }
        }
        Ok(())
    }

    /// Every defining relation of the group's presentation, evaluated on R.
    pub fn verify_relations(&self) -> Vec<RelationCheck> {
        let dim = self.space.dim();
        self.group
            .relations()
            .iter()
            .map(|rel| {
                let mut acc = SpinMatrix::identity(dim);
                let mut ok = true;
                for (n, e) in &rel.word {
                    match self.group.generator(n) {
                        Some(g) => {
                            let m = if *e < 0 { self.inverse_image(g) } else { self.image(g) };
                            acc = acc.mul(&m.pow(e.unsigned_abs()));
                        }
                        None => ok = false,
                    }
                }
                RelationCheck { name: rel.name.clone(), holds: ok && acc.is_identity() }
            })
            .collect()
    }
}

fn element_order(group: &CoxeterGroup, g: u32) -> u32 {
    let mut k = 1;
    let mut acc = g;
    while acc != group.identity() {
        acc = group.mul(acc, g);
        k += 1;
    }
    k
}
