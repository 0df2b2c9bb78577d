//! J₂ = c·HΛ: the lowered trace coefficient, reduced through ŵΛ = R_w⁻¹Λ,
//! against the explicit Hamiltonians.

use super::models::{Model, ModelKind};
use super::report::RelationReport;
use super::MonodromyError;
use crate::opalg::{DunklElem, DunklFamily, Mono, Operator, Poly, RationalFunction};
use crate::scalars::{Cyc, Rational};
use crate::spin::{CombinedOperator, SpinMatrix, SpinRepresentation};

const MAX_RENDER: usize = 4000;

/// Which explicit Hamiltonian to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianModel {
    /// The printed formula for the model.
    Printed,
    /// The printed formula with long-root terms weighted by (α,α)/2 = 3 and,
    /// for I₂(6), the spin factor read as Q_1^e P_12 Q_1^{−e}.
    PrintedCorrected,
    /// −Σ∂² + Σ_{α>0} k(α)(α,α)(k(α) − R_{s_α})/(α,x)².
    RootSystem,
}

/// Σ F∂^βŵ ↦ Σ F∂^β ⊗ R_w⁻¹, valid to the left of Λ.
pub fn reduce_scalar(op: &Operator, rep: &SpinRepresentation) -> CombinedOperator {
    let action = op.action().clone();
    let id = action.group().identity();
    let mut out = CombinedOperator::zero(action);
    for ((w, beta), f) in op.terms() {
        out.add_term(id, *beta, rep.inverse_image(*w).lift(|c| f.scale(c)));
    }
    out
}

fn render(op: &CombinedOperator) -> String {
    let mut s = op.to_string();
    if s.len() > MAX_RENDER {
        let mut cut = MAX_RENDER;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(&format!(" … ({} terms)", op.len()));
    }
    s
}

struct Builder<'a> {
    model: &'a Model,
    op: CombinedOperator,
    dim: usize,
}

impl<'a> Builder<'a> {
    /// −Σ_j ∂_j² ⊗ I.
    fn new(model: &'a Model) -> Self {
        let action = model.action.clone();
        let id = action.group().identity();
        let dim = model.physical_space().dim();
        let mut op = CombinedOperator::zero(action.clone());
        for j in 0..action.dim() {
            op.add_term(id, Mono::var(j).mul(Mono::var(j)), SpinMatrix::identity(dim).lift(|c| RationalFunction::from(-c)));
        }
        Builder { model, op, dim }
    }

    /// coeff · M / (α, x)².
    fn term(&mut self, alpha: &[Cyc], coeff: &Cyc, m: &SpinMatrix) -> Result<(), MonodromyError> {
        let inv = RationalFunction::inverse_linear(alpha)?;
        let f = inv.mul(&inv).scale(coeff);
        let id = self.model.action.group().identity();
        self.op.add_term(id, Mono::ONE, m.lift(|c| f.scale(c)));
        Ok(())
    }

    /// coeff · (k − M) / (α, x)².
    fn pair(&mut self, alpha: &[Cyc], coeff: &Cyc, k: &Cyc, m: &SpinMatrix) -> Result<(), MonodromyError> {
        let diff = SpinMatrix::identity(self.dim).scale(k).sub(m);
        self.term(alpha, coeff, &diff)
    }
}

fn lin(coeffs: &[i64]) -> Vec<Cyc> {
    coeffs.iter().map(|&c| Cyc::from_int(c)).collect()
}

fn e_pm(l: usize, m: usize, j: usize, sign: i64) -> Vec<Cyc> {
    let mut v = vec![0; l];
    v[m] = 1;
    v[j] = sign;
    lin(&v)
}

/// The printed Hamiltonian of the model, or `None` when no formula is printed.
pub fn printed_form_hamiltonian(model: &Model, k_s: &Rational, k_l: &Rational) -> Result<Option<CombinedOperator>, MonodromyError> {
    printed_hamiltonian(model, k_s, k_l, false)
}

fn printed_hamiltonian(model: &Model, k_s: &Rational, k_l: &Rational, corrected: bool) -> Result<Option<CombinedOperator>, MonodromyError> {
    let ks = Cyc::from_rational(k_s.clone());
    let kl = Cyc::from_rational(k_l.clone());
    let s = model.physical_space();
    let p = |i, j| s.transposition(i, j);
    let mut b = Builder::new(model);
    match &model.kind {
        ModelKind::BlStandard { l } => {
            let l = *l;
            for m in 0..l {
                for j in (0..l).filter(|&j| j != m) {
                    b.pair(&e_pm(l, m, j, -1), &kl, &kl, &p(m, j)?)?;
                    let qj = s.local(&model.q, j)?;
                    b.pair(&e_pm(l, m, j, 1), &kl, &kl, &qj.mul(&p(m, j)?).mul(&qj))?;
                }
            }
            for j in 0..l {
                b.pair(&crate::coxeter::unit_vector(l, j), &ks, &ks, &s.local(&model.q, j)?)?;
            }
        }
        ModelKind::BlOrbit { l } => {
            let l = *l;
            let (x, bar) = (|j: usize| 2 * j, |j: usize| 2 * j + 1);
            for m in 0..l {
                for j in (0..l).filter(|&j| j != m) {
                    b.pair(&e_pm(l, m, j, -1), &kl, &kl, &p(x(m), x(j))?.mul(&p(bar(m), bar(j))?))?;
                    b.pair(&e_pm(l, m, j, 1), &kl, &kl, &p(x(m), bar(j))?.mul(&p(bar(m), x(j))?))?;
                }
            }
            for j in 0..l {
                b.pair(&crate::coxeter::unit_vector(l, j), &ks, &ks, &p(x(j), bar(j))?)?;
            }
        }
        ModelKind::G2SixSpins | ModelKind::G2ThreeSpins => {
            let six = model.kind == ModelKind::G2SixSpins;
            let bar = |j: usize| 3 + j;
            for m in 0..3 {
                for j in (0..3).filter(|&j| j != m) {
                    let spin = if six { p(m, j)?.mul(&p(bar(m), bar(j))?) } else { p(m, j)? };
                    b.pair(&e_pm(3, m, j, -1), &ks, &ks, &spin)?;
                }
            }
            for n in 0..3 {
                for m in (0..3).filter(|&m| m != n) {
                    let j = 3 - n - m;
                    let mut alpha = lin(&[1, 1, 1]);
                    alpha[n] = Cyc::from_int(-2);
                    let spin = if six {
                        p(n, bar(n))?.mul(&p(j, bar(m))?).mul(&p(m, bar(j))?)
                    } else {
                        let q = |i| s.local(&model.q, i);
                        p(m, j)?.mul(&q(n)?).mul(&q(m)?).mul(&q(j)?)
                    };
                    let weight = if corrected { &kl * &Cyc::from_int(3) } else { kl.clone() };
                    b.pair(&alpha, &weight, &kl, &spin)?;
                }
            }
        }
        ModelKind::I2mTwoSpins { m: 6 } => {
            // −∂∂̄ + 4i Σ_e k_e τ^e (Q_1^{−e} P_12 Q_1^e − k_e) / (z − iτ^e z̄)², τ = e^{iπ/3}
            let tau = |e: i64| Cyc::root_of_unity(6, e);
            for e in 0..6i64 {
                let k = if e % 2 == 0 { &ks } else { &kl };
                let c = &Cyc::i() * &tau(e);
                let alpha = vec![&Cyc::one() - &c, &Cyc::i() * &(&Cyc::one() + &c)];
                let (neg, pos) = (((6 - e) % 6) as u32, e as u32);
                let (e1, e2) = if corrected { (pos, neg) } else { (neg, pos) };
                let q_e = s.local(&model.q.pow(e1), 0)?;
                let spin = q_e.mul(&p(0, 1)?).mul(&s.local(&model.q.pow(e2), 0)?);
                let coeff = &(&Cyc::from_int(4) * &Cyc::i()) * &(k * &tau(e));
                b.term(&alpha, &coeff, &spin.sub(&SpinMatrix::identity(s.dim()).scale(k)))?;
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(b.op))
}

/// −Σ∂² + Σ_{α>0} k(α)(α,α)(k(α) − R_{s_α})/(α,x)².
pub fn generic_hamiltonian(model: &Model, family: &DunklFamily) -> Result<CombinedOperator, MonodromyError> {
    let mut b = Builder::new(model);
    let group = model.group();
    for (idx, alpha) in model.roots.positive_roots.iter().enumerate() {
        let k = Cyc::from_rational(family.multiplicity().value(idx).clone());
        if k.is_zero() {
            continue;
        }
        let norm = crate::coxeter::dot(alpha, alpha);
        let r = model.rep.image(group.reflection(idx));
        b.pair(alpha, &(&k * &norm), &k, r)?;
    }
    Ok(b.op)
}

/// b^{(n)} lowered with the family and reduced to the left of Λ.
pub fn reduced_coefficient(model: &Model, family: &DunklFamily, b: &Poly) -> Result<CombinedOperator, MonodromyError> {
    let op = DunklElem::from_coeff(model.action.clone(), b.clone()).lower(family)?;
    Ok(reduce_scalar(&op, &model.rep))
}

/// Compares the reduced Hamiltonian coefficient `b` (a polynomial in the Dunkl
/// operators) with c·H for the chosen explicit formula.
pub fn compare_hamiltonian(
    model: &Model,
    b: &Poly,
    k_s: &Rational,
    k_l: &Rational,
    which: HamiltonianModel,
) -> Result<RelationReport, MonodromyError> {
    let family = model.family(k_s, k_l)?;
    let (_, c) = model.hamiltonian_coefficient();
    let label = format!("k=({k_s},{k_l})");
    let mut report = RelationReport::new(match which {
        HamiltonianModel::Printed => "hamiltonian (printed)",
        HamiltonianModel::PrintedCorrected => "hamiltonian (printed, corrected)",
        HamiltonianModel::RootSystem => "hamiltonian (root system)",
    });
    let h = match which {
        HamiltonianModel::Printed | HamiltonianModel::PrintedCorrected => match printed_hamiltonian(model, k_s, k_l, which == HamiltonianModel::PrintedCorrected)? {
            Some(h) => h,
            None => {
                report.record_unverified(label, "no printed formula");
                return Ok(report);
            }
        },
        HamiltonianModel::RootSystem => generic_hamiltonian(model, &family)?,
    };
    let j = reduced_coefficient(model, &family, b)?;
    let defect = j.sub(&h.scale(&c));
    report.record_bool(label, defect.is_zero(), Some(render(&defect)));
    Ok(report)
}

/// At k = 0 the explicit Hamiltonian is −Σ∂².
pub fn check_free_limit(model: &Model) -> Result<RelationReport, MonodromyError> {
    let zero = Rational::from_int(0);
    let mut report = RelationReport::new("free limit");
    let free = Builder::new(model).op;
    if let Some(h) = printed_form_hamiltonian(model, &zero, &zero)? {
        let d = h.sub(&free);
        report.record_bool("printed H", d.is_zero(), Some(render(&d)));
    }
    let d = generic_hamiltonian(model, &model.family(&zero, &zero)?)?.sub(&free);
    report.record_bool("root-system H", d.is_zero(), Some(render(&d)));
    Ok(report)
}

/// The reduced b^{(1)} equals c·(−i)(∂_1 + … + ∂_n) ⊗ I.
pub fn check_momentum(model: &Model, b1: &Poly, c: &Cyc, k_s: &Rational, k_l: &Rational) -> Result<RelationReport, MonodromyError> {
    let family = model.family(k_s, k_l)?;
    let j = reduced_coefficient(model, &family, b1)?;
    let action = model.action.clone();
    let id = action.group().identity();
    let dim = model.physical_space().dim();
    let coeff = &(-&Cyc::i()) * c;
    let mut p = CombinedOperator::zero(action.clone());
    for v in 0..action.dim() {
        p.add_term(id, Mono::var(v), SpinMatrix::identity(dim).lift(|x| RationalFunction::from(x * &coeff)));
    }
    let d = j.sub(&p);
    let mut report = RelationReport::new("total momentum");
    report.record_bool(format!("k=({k_s},{k_l})"), d.is_zero(), Some(render(&d)));
    Ok(report)
}

/// [S, d_j] = 0 in the operator algebra for a shift S ∈ C[d].
pub fn check_shift_central(model: &Model, k_s: &Rational, k_l: &Rational) -> Result<RelationReport, MonodromyError> {
    let mut report = RelationReport::new("shift centrality");
    let Some(shift) = model.twist.shift.as_ref() else {
        return Ok(report);
    };
    let family = model.family(k_s, k_l)?;
    let s = DunklElem::from_coeff(model.action.clone(), shift.clone()).lower(&family)?;
    for j in 0..model.action.dim() {
        let d = s.commutator(&family.coordinate(j)?);
        report.record_bool(format!("[S, d{}] at k=({k_s},{k_l})", j + 1), d.is_zero(), Some(d.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::hierarchy::trace_and_extract;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn hamiltonian_poly(model: &Model) -> Poly {
        let (n, _) = model.hamiltonian_coefficient();
        let b = model.twisted(n).unwrap();
        trace_and_extract(&b).scalar(n).unwrap()
    }

    #[test]
    fn standard_b2_matches_printed() {
        let m = Model::build(ModelKind::BlStandard { l: 2 }, 2, None).unwrap();
        let b2 = hamiltonian_poly(&m);
        for (ks, kl) in [(q(1, 1), q(1, 1)), (q(1, 2), q(-2, 1))] {
            assert!(compare_hamiltonian(&m, &b2, &ks, &kl, HamiltonianModel::Printed).unwrap().passed());
            assert!(compare_hamiltonian(&m, &b2, &ks, &kl, HamiltonianModel::RootSystem).unwrap().passed());
        }
        assert!(check_free_limit(&m).unwrap().passed());
    }

    #[test]
    fn orbit_b2_matches_printed() {
        let m = Model::build(ModelKind::BlOrbit { l: 2 }, 2, None).unwrap();
        let b2 = hamiltonian_poly(&m);
        let r = compare_hamiltonian(&m, &b2, &q(3, 1), &q(1, 2), HamiltonianModel::Printed).unwrap();
        assert!(r.passed(), "{:?}", r.first_defect());
    }

    #[test]
    fn dihedral_printed_needs_corrections() {
        for kind in [ModelKind::G2ThreeSpins, ModelKind::I2mTwoSpins { m: 6 }] {
            let m = Model::build(kind, 2, None).unwrap();
            let b = hamiltonian_poly(&m);
            let (ks, kl) = (q(1, 2), q(1, 1));
            assert!(!compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::Printed).unwrap().passed());
            assert!(compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::PrintedCorrected).unwrap().passed());
            assert!(compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::RootSystem).unwrap().passed());
        }
    }

    #[test]
    fn shift_is_central() {
        let m = Model::build(ModelKind::G2ThreeSpins, 2, None).unwrap();
        assert!(check_shift_central(&m, &q(1, 1), &q(1, 2)).unwrap().passed());
        let m = Model::build(ModelKind::I2mTwoSpins { m: 6 }, 2, None).unwrap();
        assert!(check_shift_central(&m, &q(1, 1), &q(1, 2)).unwrap().passed());
    }
}
