//! The spin Calogero models: group, spin representation, monodromy sites and twist.

use std::sync::Arc;

use super::hierarchy::extended_projector;
use super::series::{apply_shifted_twist, apply_twist, build_monodromy, AuxSeries, TwistData};
use super::MonodromyError;
use crate::coxeter::{int_vector, CoxeterGroup, GroupLabel, MultiplicityFunction, Orbit, RootSystem, Vector};
use crate::opalg::{Action, DunklFamily, Poly};
use crate::scalars::{Cyc, Rational};
use crate::spin::{default_involution, default_root_twist, BuiltinModel, Projector, SpinMatrix, SpinRepresentation, SpinSpace};

#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind {
    /// B_L with R_{t_i} = P_{i,i+1}, R_r = Q_L and the order-2 twist.
    BlStandard { l: usize },
    /// B_L on the orbit of e_1, ordered (e_1, −e_1, e_2, −e_2, …).
    BlOrbit { l: usize },
    /// I₂(6) in R³ on the six-point orbit of e_1.
    G2SixSpins,
    /// I₂(6) in R³ with R_r = P_23Q_1Q_2Q_3, R_t = P_12 and the D-shifted twist.
    G2ThreeSpins,
    /// I₂(m) in R² with R_a = Q_1Q_2⁻¹, R_b = P_12 and the dd̄-shifted twist.
    I2mTwoSpins { m: u32 },
    /// Any supported group on the orbit of a base point.
    Custom { label: GroupLabel, base_point: Vector, order: Option<Vec<Vector>> },
}

#[derive(Clone, Debug)]
pub struct Model {
    pub kind: ModelKind,
    pub roots: RootSystem,
    pub action: Arc<Action>,
    pub rep: SpinRepresentation,
    /// Monodromy directions ξ_k, possibly complex.
    pub sites: Vec<Vector>,
    pub twist: TwistData,
    /// The local matrix Q of the representation, identity for orbit models.
    pub q: SpinMatrix,
}

fn third(v: [i64; 3]) -> Vector {
    v.iter().map(|&x| Cyc::frac(x, 3)).collect()
}

impl Model {
    /// Builds the model with local dimension n; `q` overrides the default twist matrix.
    pub fn build(kind: ModelKind, n: usize, q: Option<SpinMatrix>) -> Result<Model, MonodromyError> {
        let label = match &kind {
            ModelKind::BlStandard { l } | ModelKind::BlOrbit { l } => GroupLabel::B(*l),
            ModelKind::G2SixSpins | ModelKind::G2ThreeSpins => GroupLabel::I2InR3(6),
            ModelKind::I2mTwoSpins { m } => GroupLabel::I2InR2(*m),
            ModelKind::Custom { label, .. } => label.clone(),
        };
        let roots = RootSystem::build(label)?;
        let group = Arc::new(CoxeterGroup::generate(&roots)?);
        let action = Arc::new(Action::new(group.clone()));
        let identity = SpinMatrix::identity(n);
        let orbit_model = |base: Vector, order: Option<Vec<Vector>>| -> Result<(SpinRepresentation, Vec<Vector>), MonodromyError> {
            let orbit = Orbit::new(&group, &base, order)?;
            let rep = SpinRepresentation::orbit(group.clone(), &orbit, n)?;
            Ok((rep, orbit.points.clone()))
        };
        let (rep, sites, twist, q) = match &kind {
            ModelKind::BlStandard { l } => {
                let q = q.unwrap_or_else(|| default_involution(n));
                let rep = SpinRepresentation::builtin(group.clone(), BuiltinModel::BlStandard, n, &q)?;
                let sites = (0..*l).map(|k| unit(*l, k)).collect();
                (rep, sites, TwistData::new(q.clone(), 2)?, q)
            }
            ModelKind::BlOrbit { l } => {
                let order: Vec<Vector> = (0..*l).flat_map(|k| [unit(*l, k), neg(&unit(*l, k))]).collect();
                let (rep, sites) = orbit_model(unit(*l, 0), Some(order))?;
                (rep, sites, TwistData::trivial(n), identity)
            }
            ModelKind::G2SixSpins => {
                let order = vec![
                    int_vector(&[1, 0, 0]),
                    int_vector(&[0, 1, 0]),
                    int_vector(&[0, 0, 1]),
                    third([-1, 2, 2]),
                    third([2, -1, 2]),
                    third([2, 2, -1]),
                ];
                let (rep, sites) = orbit_model(int_vector(&[1, 0, 0]), Some(order))?;
                (rep, sites, TwistData::trivial(n), identity)
            }
            ModelKind::G2ThreeSpins => {
                let q = q.unwrap_or_else(|| default_involution(n));
                let rep = SpinRepresentation::builtin(group.clone(), BuiltinModel::G2ThreeSpin, n, &q)?;
                let sites = (0..3).map(|k| unit(3, k)).collect();
                // S = S' = D/2 with D = (2/3)(d_1 + d_2 + d_3)
                let half_d = Poly::linear(&[Cyc::frac(1, 3), Cyc::frac(1, 3), Cyc::frac(1, 3)]);
                let tw = TwistData::shifted(q.clone(), 2, half_d.clone(), half_d, Cyc::one())?;
                (rep, sites, tw, q)
            }
            ModelKind::I2mTwoSpins { m } => {
                let q = q.unwrap_or_else(|| default_root_twist(n, *m, None));
                let rep = SpinRepresentation::builtin(group.clone(), BuiltinModel::I2mTwoSpin, n, &q)?;
                // d = d_1 + i d_2 and i d̄ = i d_1 + d_2
                let sites = vec![vec![Cyc::one(), Cyc::i()], vec![Cyc::i(), Cyc::one()]];
                let s = Poly::var(0).pow(2).add(&Poly::var(1).pow(2));
                let tw = TwistData::shifted(q.pow(m - 1), *m, s, Poly::zero(), Cyc::one())?;
                (rep, sites, tw, q)
            }
            ModelKind::Custom { base_point, order, .. } => {
                let (rep, sites) = orbit_model(base_point.clone(), order.clone())?;
                (rep, sites, TwistData::trivial(n), identity)
            }
        };
        Ok(Model { kind, roots, action, rep, sites, twist, q })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            ModelKind::BlStandard { l } => format!("B{l} standard"),
            ModelKind::BlOrbit { l } => format!("B{l} orbit"),
            ModelKind::G2SixSpins => "I2(6) six spins".into(),
            ModelKind::G2ThreeSpins => "I2(6) three spins".into(),
            ModelKind::I2mTwoSpins { m } => format!("I2({m}) two spins"),
            ModelKind::Custom { label, .. } => format!("{label} orbit"),
        }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.action.group()
    }

    pub fn physical_space(&self) -> SpinSpace {
        self.rep.space()
    }

    pub fn symmetry_tag(&self) -> String {
        match (self.twist.order, self.twist.is_shifted()) {
            (1, false) => "half-loop".into(),
            (n, false) => format!("twisted half-loop, order {n}"),
            (n, true) => format!("shifted twisted half-loop, order {n}"),
        }
    }

    pub fn family(&self, k_s: &Rational, k_l: &Rational) -> Result<DunklFamily, MonodromyError> {
        let k = MultiplicityFunction::from_couplings(&self.roots, k_s, k_l)?;
        Ok(DunklFamily::new(self.action.clone(), k)?)
    }

    /// Λ on the physical sites followed by `aux` auxiliary sites.
    pub fn projector(&self, aux: usize) -> Projector {
        extended_projector(&Projector::new(self.action.clone(), self.rep.clone()), aux)
    }

    pub fn monodromy(&self, cutoff: usize) -> Result<AuxSeries, MonodromyError> {
        build_monodromy(self.action.clone(), self.physical_space(), &self.sites, cutoff)
    }

    /// B(u), or B̂(u) for shifted twists.
    pub fn twisted(&self, cutoff: usize) -> Result<AuxSeries, MonodromyError> {
        let t = self.monodromy(cutoff)?;
        if self.twist.is_shifted() {
            apply_shifted_twist(&t, &self.twist)
        } else {
            apply_twist(&t, &self.twist)
        }
    }

    /// Index n of the trace coefficient b^{(n)} holding the Hamiltonian, and the
    /// constant c with b^{(n)} = c·Σ_j d_j².
    pub fn hamiltonian_coefficient(&self) -> (usize, Cyc) {
        match &self.kind {
            ModelKind::BlStandard { .. } => (2, Cyc::one()),
            ModelKind::BlOrbit { .. } | ModelKind::G2SixSpins | ModelKind::G2ThreeSpins => (2, Cyc::from_int(2)),
            ModelKind::I2mTwoSpins { m } => (1, Cyc::from_int(2 * *m as i64)),
            ModelKind::Custom { .. } => {
                // Σ_μ (μ, y)² = c Σ y_j² when the ambient representation is irreducible
                let dim = self.action.dim() as i64;
                let norm: Cyc = self.sites.iter().map(|s| crate::coxeter::dot(s, s)).fold(Cyc::zero(), |a, b| &a + &b);
                (2, &norm * &Cyc::frac(1, dim))
            }
        }
    }
}

fn unit(l: usize, k: usize) -> Vector {
    crate::coxeter::unit_vector(l, k)
}

fn neg(v: &[Cyc]) -> Vector {
    v.iter().map(|c| -c).collect()
}
