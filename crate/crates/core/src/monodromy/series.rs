use std::sync::Arc;

use super::report::RelationReport;
use super::MonodromyError;
use crate::opalg::{Action, DunklFamily, Poly};
use crate::scalars::Cyc;
use crate::spin::{constant_poly_matrix, lower, CombinedOperator, SparseMatrix, SpinElem, SpinMatrix, SpinSpace};

/// S(u) = Σ_{n ≤ cutoff} S^{(n)} u^{−n−1}, with the auxiliary space as the last
/// site of `space`.
#[derive(Clone, Debug)]
pub struct AuxSeries {
    action: Arc<Action>,
    space: SpinSpace,
    aux: usize,
    coeffs: Vec<SparseMatrix<Poly>>,
}

impl PartialEq for AuxSeries {
    fn eq(&self, o: &Self) -> bool {
        self.space == o.space && self.aux == o.aux && self.coeffs == o.coeffs
    }
}

impl AuxSeries {
    pub fn new(action: Arc<Action>, space: SpinSpace, coeffs: Vec<SparseMatrix<Poly>>) -> Self {
        assert!(space.sites >= 1 && coeffs.iter().all(|c| c.dim() == space.dim()));
        let aux = space.sites - 1;
        AuxSeries { action, space, aux, coeffs }
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &SparseMatrix<Poly> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[SparseMatrix<Poly>] {
        &self.coeffs
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(cutoff + 1);
        s
    }

    pub fn map(&self, f: impl Fn(usize, &SparseMatrix<Poly>) -> SparseMatrix<Poly>) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(n, c)| f(n, c)).collect();
        AuxSeries { coeffs, ..self.clone() }
    }

    pub fn elem(&self, n: usize) -> SpinElem {
        SpinElem::from_coeff(self.action.clone(), self.coeffs[n].clone())
    }

    pub fn lower(&self, n: usize, family: &DunklFamily) -> Result<CombinedOperator, MonodromyError> {
        Ok(lower(&self.elem(n), family)?)
    }

    /// A matrix acting on the auxiliary site only.
    pub fn aux_local(&self, m: &SpinMatrix) -> Result<SpinMatrix, MonodromyError> {
        Ok(self.space.local(m, self.aux)?)
    }
}

/// σ, its order n, τ, and for shifted twists the operator shift S, S' and the
/// overall scale c of B̂(u) = c Σ_j τ^j σ^j T(τ^j(u − S) + S') σ^{−j}.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistData {
    pub sigma: SpinMatrix,
    pub order: u32,
    pub tau: Cyc,
    pub shift: Option<Poly>,
    pub shift_prime: Poly,
    pub scale: Cyc,
}

impl TwistData {
    /// τ = e^{2iπ/n}, scale 1/n, no shift.
    pub fn new(sigma: SpinMatrix, order: u32) -> Result<Self, MonodromyError> {
        let tw = TwistData {
            sigma,
            order,
            tau: Cyc::root_of_unity(order, 1),
            shift: None,
            shift_prime: Poly::zero(),
            scale: Cyc::frac(1, order as i64),
        };
        tw.validate()?;
        Ok(tw)
    }

    pub fn trivial(n: usize) -> Self {
        TwistData::new(SpinMatrix::identity(n), 1).expect("identity has order 1")
    }

    pub fn shifted(sigma: SpinMatrix, order: u32, shift: Poly, shift_prime: Poly, scale: Cyc) -> Result<Self, MonodromyError> {
        let tw = TwistData { shift: Some(shift), shift_prime, scale, ..TwistData::new(sigma, order)? };
        tw.validate()?;
        Ok(tw)
    }

    pub fn validate(&self) -> Result<(), MonodromyError> {
        if self.order == 0 || !self.sigma.pow(self.order).is_identity() {
            return Err(MonodromyError::InvalidInput(format!("σ^{} is not the identity", self.order)));
        }
        let tau_pow = |e: u32| self.tau.pow(e as i64).expect("root of unity is invertible");
        if !tau_pow(self.order).is_one() || (1..self.order).any(|d| tau_pow(d).is_one()) {
            return Err(MonodromyError::InvalidInput(format!("τ is not a primitive {}-th root of unity", self.order)));
        }
        Ok(())
    }

    pub fn is_shifted(&self) -> bool {
        self.shift.is_some()
    }

    fn tau_pow(&self, e: i64) -> Cyc {
        self.tau.pow(e).expect("root of unity is invertible")
    }

    fn sigma_pow(&self, j: i64) -> SpinMatrix {
        self.sigma.pow(j.rem_euclid(self.order as i64) as u32)
    }
}

/// T^{(n)} = Σ_k P_{ak} d_{μ_k}^n with the auxiliary site appended after the
/// physical ones.
pub fn build_monodromy(
    action: Arc<Action>,
    physical: SpinSpace,
    sites: &[Vec<Cyc>],
    cutoff: usize,
) -> Result<AuxSeries, MonodromyError> {
    if sites.len() != physical.sites {
        return Err(MonodromyError::InvalidInput(format!("{} site vectors for {} sites", sites.len(), physical.sites)));
    }
    if let Some(bad) = sites.iter().find(|s| s.len() != action.dim()) {
        return Err(MonodromyError::InvalidInput(format!("site vector of length {} in dimension {}", bad.len(), action.dim())));
    }
    let space = physical.with_extra(1);
    let aux = physical.sites;
    let perms: Vec<SpinMatrix> = (0..sites.len()).map(|k| space.transposition(aux, k)).collect::<Result<_, _>>()?;
    let xs: Vec<Poly> = sites.iter().map(|s| Poly::linear(s)).collect();
    let coeffs = (0..=cutoff)
        .map(|n| {
            let mut t = SparseMatrix::zero(space.dim());
            for (p, x) in perms.iter().zip(&xs) {
                let xn = x.pow(n as u32);
                t = t.add(&p.lift(|c| xn.scale(c)));
            }
            t
        })
        .collect();
    Ok(AuxSeries { action, space, aux, coeffs })
}

/// B(u) = (1/n) Σ_j τ^j σ_a^j T(τ^j u) σ_a^{−j}, i.e.
/// B^{(m)} = (1/n) Σ_j τ^{−jm} σ_a^j T^{(m)} σ_a^{−j}.
pub fn apply_twist(t: &AuxSeries, tw: &TwistData) -> Result<AuxSeries, MonodromyError> {
    if tw.is_shifted() {
        return Err(MonodromyError::ShiftNotAllowed);
    }
    let conj = aux_conjugations(t, tw)?;
    Ok(t.map(|m, c| {
        let mut out = SparseMatrix::zero(c.dim());
        for (j, (s, sinv)) in conj.iter().enumerate() {
            let term = constant_poly_matrix(s).mul(c).mul(&constant_poly_matrix(sinv));
            out = out.add(&term.scale(&tw.tau_pow(-(j as i64) * m as i64)));
        }
        out.scale(&tw.scale)
    }))
}

/// The same series computed on the algebra side: each generator e z^m
/// realised as Σ_k e_k d_{μ_k}^m is replaced by 𝒫_m(e) z^m with
/// 𝒫_m = (1/n) Σ_j τ^{−jm} A^j and A(e) = σ⁻¹ e σ acting at site k.
pub fn twist_by_projector(
    action: Arc<Action>,
    physical: SpinSpace,
    sites: &[Vec<Cyc>],
    tw: &TwistData,
    cutoff: usize,
) -> Result<AuxSeries, MonodromyError> {
    if tw.is_shifted() {
        return Err(MonodromyError::ShiftNotAllowed);
    }
    let t = build_monodromy(action, physical, sites, cutoff)?;
    let space = t.space;
    let aux = t.aux;
    let xs: Vec<Poly> = sites.iter().map(|s| Poly::linear(s)).collect();
    let mut coeffs = Vec::with_capacity(cutoff + 1);
    for m in 0..=cutoff {
        let mut b = SparseMatrix::zero(space.dim());
        for (k, x) in xs.iter().enumerate() {
            let p = space.transposition(aux, k)?;
            let xm = x.pow(m as u32);
            for j in 0..tw.order as i64 {
                let left = space.local(&tw.sigma_pow(-j), k)?;
                let right = space.local(&tw.sigma_pow(j), k)?;
                let term = left.mul(&p).mul(&right).scale(&tw.tau_pow(-j * m as i64));
                b = b.add(&term.lift(|c| xm.scale(c)));
            }
        }
        coeffs.push(b.scale(&tw.scale));
    }
    Ok(AuxSeries { coeffs, ..t })
}

/// B̂(u) = c Σ_j τ^j σ_a^j T(τ^j(u − S) + S') σ_a^{−j}. With Z_j = S − τ^{−j}S',
/// T(τ^j(u − Z_j)) expands as Σ_n τ^{−j(n+1)} T^{(n)} Σ_p C(n+p, p) Z_j^p u^{−n−p−1}.
pub fn apply_shifted_twist(t: &AuxSeries, tw: &TwistData) -> Result<AuxSeries, MonodromyError> {
    let shift = tw.shift.clone().unwrap_or_else(Poly::zero);
    let conj = aux_conjugations(t, tw)?;
    let cutoff = t.cutoff();
    let mut coeffs = vec![SparseMatrix::zero(t.space.dim()); cutoff + 1];
    for (j, (s, sinv)) in conj.iter().enumerate() {
        let j = j as i64;
        let z = shift.sub(&tw.shift_prime.scale(&tw.tau_pow(-j)));
        let zpow: Vec<Poly> = (0..=cutoff as u32).map(|p| z.pow(p)).collect();
        for n in 0..=cutoff {
            let conj_t = constant_poly_matrix(s).mul(t.coeff(n)).mul(&constant_poly_matrix(sinv));
            let phase = tw.tau_pow(-j * n as i64);
            for (m, out) in coeffs.iter_mut().enumerate().skip(n) {
                let p = m - n;
                let factor = zpow[p].scale(&(&phase * &Cyc::from_int(crate::opalg::operator::binomial(m as u32, p as u32))));
                *out = out.add(&conj_t.map(|e| e.mul(&factor)));
            }
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c.scale(&tw.scale)).collect();
    Ok(AuxSeries { coeffs, ..t.clone() })
}

/// The shifted twist written from its poles: c Σ_{j,k} σ_a^j P_{ak} σ_a^{−j} / (u − Y_{jk})
/// with Y_{jk} = S + τ^{−j}(d_{μ_k} − S').
pub fn twist_from_poles(
    action: Arc<Action>,
    physical: SpinSpace,
    sites: &[Vec<Cyc>],
    tw: &TwistData,
    cutoff: usize,
) -> Result<AuxSeries, MonodromyError> {
    let t = build_monodromy(action, physical, sites, 0)?;
    let shift = tw.shift.clone().unwrap_or_else(Poly::zero);
    let conj = aux_conjugations(&t, tw)?;
    let mut coeffs = vec![SparseMatrix::zero(t.space.dim()); cutoff + 1];
    for (k, site) in sites.iter().enumerate() {
        let p = constant_poly_matrix(&t.space.transposition(t.aux, k)?);
        let x = Poly::linear(site).sub(&tw.shift_prime);
        for (j, (s, sinv)) in conj.iter().enumerate() {
            let y = shift.add(&x.scale(&tw.tau_pow(-(j as i64))));
            let num = constant_poly_matrix(s).mul(&p).mul(&constant_poly_matrix(sinv));
            let mut yn = Poly::one();
            for out in coeffs.iter_mut() {
                *out = out.add(&num.map(|e| e.mul(&yn)));
                yn = yn.mul(&y);
            }
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c.scale(&tw.scale)).collect();
    Ok(AuxSeries { coeffs, ..t })
}

/// B^{(m)} = τ^{−jm} σ_a^j B^{(m)} σ_a^{−j} for every j.
pub fn check_symmetry(b: &AuxSeries, tw: &TwistData) -> Result<RelationReport, MonodromyError> {
    let mut report = RelationReport::new("symmetry");
    let conj = aux_conjugations(b, tw)?;
    for m in 0..=b.cutoff() {
        for (j, (s, sinv)) in conj.iter().enumerate().skip(1) {
            let rhs = constant_poly_matrix(s)
                .mul(b.coeff(m))
                .mul(&constant_poly_matrix(sinv))
                .scale(&tw.tau_pow(-(j as i64) * m as i64));
            report.record(format!("m={m} j={j}"), &b.coeff(m).sub(&rhs));
        }
    }
    Ok(report)
}

/// (σ_a^j, σ_a^{−j}) for j = 0..n.
fn aux_conjugations(t: &AuxSeries, tw: &TwistData) -> Result<Vec<(SpinMatrix, SpinMatrix)>, MonodromyError> {
    if tw.sigma.dim() != t.space.n {
        return Err(MonodromyError::InvalidInput(format!("σ has size {}, sites have dimension {}", tw.sigma.dim(), t.space.n)));
    }
    (0..tw.order as i64)
        .map(|j| Ok((t.aux_local(&tw.sigma_pow(j))?, t.aux_local(&tw.sigma_pow(-j))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{int_vector, CoxeterGroup, GroupLabel, RootSystem};
    use crate::spin::default_involution;

    fn action(label: GroupLabel) -> Arc<Action> {
        Arc::new(Action::new(Arc::new(CoxeterGroup::generate(&RootSystem::build(label).unwrap()).unwrap())))
    }

    fn b2_standard(cutoff: usize) -> AuxSeries {
        let sites = vec![int_vector(&[1, 0]), int_vector(&[0, 1])];
        build_monodromy(action(GroupLabel::B(2)), SpinSpace::new(2, 2), &sites, cutoff).unwrap()
    }

    #[test]
    fn first_coefficients() {
        let t = b2_standard(3);
        let s = t.space();
        let tr0 = s.partial_trace(t.coeff(0), t.aux());
        assert_eq!(tr0, constant_poly_matrix(&SpinMatrix::identity(s.dim())).scale(&Cyc::from_int(2)));
        let p0 = constant_poly_matrix(&s.transposition(2, 0).unwrap()).map(|c| c.mul(&Poly::var(0)));
        let p1 = constant_poly_matrix(&s.transposition(2, 1).unwrap()).map(|c| c.mul(&Poly::var(1)));
        assert_eq!(*t.coeff(1), p0.add(&p1));
    }

    #[test]
    fn trivial_twist_is_identity() {
        let t = b2_standard(4);
        assert_eq!(apply_twist(&t, &TwistData::trivial(2)).unwrap(), t);
    }

    #[test]
    fn order_two_twist() {
        // B(u) = ½(T(u) − Q_a T(−u) Q_a)
        let t = b2_standard(5);
        let q = default_involution(2);
        let tw = TwistData::new(q.clone(), 2).unwrap();
        let b = apply_twist(&t, &tw).unwrap();
        let qa = constant_poly_matrix(&t.aux_local(&q).unwrap());
        for m in 0..=5 {
            let sign = Cyc::from_int(if m % 2 == 0 { 1 } else { -1 });
            let expected = t.coeff(m).add(&qa.mul(t.coeff(m)).mul(&qa).scale(&sign)).scale(&Cyc::frac(1, 2));
            assert_eq!(*b.coeff(m), expected);
        }
        assert!(check_symmetry(&b, &tw).unwrap().passed());
        let sites = vec![int_vector(&[1, 0]), int_vector(&[0, 1])];
        let via_projector = twist_by_projector(t.action().clone(), SpinSpace::new(2, 2), &sites, &tw, 5).unwrap();
        assert_eq!(via_projector, b);
        assert!(matches!(
            apply_twist(&t, &TwistData::shifted(q, 2, Poly::zero(), Poly::zero(), Cyc::one()).unwrap()),
            Err(MonodromyError::ShiftNotAllowed)
        ));
    }

    #[test]
    fn zero_shift_matches_plain_twist() {
        let t = b2_standard(5);
        let q = default_involution(2);
        let plain = TwistData::new(q.clone(), 2).unwrap();
        let zero = TwistData::shifted(q, 2, Poly::zero(), Poly::zero(), Cyc::frac(1, 2)).unwrap();
        assert_eq!(apply_shifted_twist(&t, &zero).unwrap(), apply_twist(&t, &plain).unwrap());
    }

    #[test]
    fn shifted_twist_from_series_and_poles() {
        let a = action(GroupLabel::I2InR3(6));
        let sites = vec![int_vector(&[1, 0, 0]), int_vector(&[0, 1, 0]), int_vector(&[0, 0, 1])];
        let phys = SpinSpace::new(2, 3);
        let t = build_monodromy(a.clone(), phys, &sites, 4).unwrap();
        let half_d = Poly::linear(&[Cyc::frac(1, 3), Cyc::frac(1, 3), Cyc::frac(1, 3)]);
        let tw = TwistData::shifted(default_involution(2), 2, half_d.clone(), half_d, Cyc::one()).unwrap();
        let from_series = apply_shifted_twist(&t, &tw).unwrap();
        let from_poles = twist_from_poles(a, phys, &sites, &tw, 4).unwrap();
        assert_eq!(from_series, from_poles);
    }

    #[test]
    fn invalid_twists() {
        assert!(TwistData::new(default_involution(2), 3).is_err());
        let mut tw = TwistData::new(default_involution(2), 2).unwrap();
        tw.tau = Cyc::one();
        assert!(tw.validate().is_err());
    }
}
