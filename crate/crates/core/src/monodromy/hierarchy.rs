use super::report::RelationReport;
use super::series::AuxSeries;
use super::MonodromyError;
use crate::opalg::Poly;
use crate::spin::{Projector, SparseMatrix, SpinElem, SpinSpace};

/// b^{(n)} = Tr_a B^{(n)} ⊗ I_a; the conserved quantities are J_n = b^{(n)}Λ.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservedSeries {
    pub space: SpinSpace,
    pub coeffs: Vec<SparseMatrix<Poly>>,
}

impl ConservedSeries {
    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The polynomial p with b^{(n)} = p·I, when b^{(n)} is scalar.
    pub fn scalar(&self, n: usize) -> Option<Poly> {
        let m = &self.coeffs[n];
        if m.is_zero() {
            return Some(Poly::zero());
        }
        let p = m.get(0, 0)?.clone();
        (*m == SparseMatrix::diagonal(vec![p.clone(); m.dim()])).then_some(p)
    }

    pub fn scalars(&self) -> Option<Vec<Poly>> {
        (0..self.coeffs.len()).map(|n| self.scalar(n)).collect()
    }

    /// J_n = b^{(n)}Λ in the group algebra.
    pub fn element(&self, n: usize, proj: &Projector) -> SpinElem {
        SpinElem::from_coeff(proj.element().action().clone(), self.coeffs[n].clone()).mul(proj.element())
    }
}

pub fn trace_and_extract(b: &AuxSeries) -> ConservedSeries {
    let space = b.space();
    let coeffs = b.coeffs().iter().map(|c| space.partial_trace(c, b.aux())).collect();
    ConservedSeries { space, coeffs }
}

/// [J_m, J_n] = 0 and [J_m, B^{(n)}Λ] = 0, using (XΛ)(YΛ) = X π(Y) Λ.
pub fn check_hierarchy(js: &ConservedSeries, b: &AuxSeries, proj: &Projector) -> Result<RelationReport, MonodromyError> {
    check_dim(proj, b)?;
    let top = js.cutoff().min(b.cutoff());
    let pij: Vec<_> = js.coeffs[..=top].iter().map(|x| proj.sandwich(x)).collect();
    let pib: Vec<_> = b.coeffs()[..=top].iter().map(|x| proj.sandwich(x)).collect();
    let mut report = RelationReport::new("hierarchy");
    for m in 0..=top {
        for n in m..=top {
            let d = js.coeffs[m].mul(&pij[n]).sub(&js.coeffs[n].mul(&pij[m]));
            report.record(format!("[J{m}, J{n}]"), &d);
        }
    }
    for m in 0..=top {
        for n in 0..=top {
            let d = js.coeffs[m].mul(&pib[n]).sub(&b.coeff(n).mul(&pij[m]));
            report.record(format!("[J{m}, B{n}Λ]"), &d);
        }
    }
    Ok(report)
}

/// ĝR_g B^{(n)}Λ = B^{(n)}Λ, reduced through ŵΛ = R_w⁻¹Λ, and the stronger
/// ĝR_g B^{(n)} = B^{(n)} ĝR_g, for every generator g.
pub fn check_intertwine(b: &AuxSeries, proj: &Projector) -> Result<RelationReport, MonodromyError> {
    check_dim(proj, b)?;
    let group = proj.representation().group().clone();
    let lam = proj.element();
    let mut report = RelationReport::new("intertwining");
    for n in 0..=b.cutoff() {
        let x = b.elem(n);
        let plain = proj.reduce(&x.mul(lam));
        for (name, g) in group.generators() {
            let hr = proj.hat_r(*g);
            let weak = proj.reduce(&hr.mul(&x).mul(lam)).sub(&plain);
            report.record(format!("{name}: B{n}Λ"), &weak);
            // the commutator has a single term, at g
            let strong = hr.commutator(&x);
            match strong.coefficient(*g) {
                Some(d) => report.record(format!("{name}: [ĝR_g, B{n}]"), d),
                None => report.record_bool(format!("{name}: [ĝR_g, B{n}]"), strong.is_zero(), None),
            }
        }
    }
    Ok(report)
}

/// Odd coefficients of the trace series vanish.
pub fn check_parity(js: &ConservedSeries) -> RelationReport {
    let mut report = RelationReport::new("parity");
    for n in (1..=js.cutoff()).step_by(2) {
        report.record(format!("b{n}"), &js.coeffs[n]);
    }
    report
}

fn check_dim(proj: &Projector, b: &AuxSeries) -> Result<(), MonodromyError> {
    if proj.dim() != b.space().dim() {
        return Err(MonodromyError::InvalidInput(format!(
            "projector acts on dimension {}, series on {}",
            proj.dim(),
            b.space().dim()
        )));
    }
    Ok(())
}

/// Λ on the physical sites extended by the identity on `extra` auxiliary sites.
pub fn extended_projector(proj: &Projector, extra: usize) -> Projector {
    Projector::new(proj.element().action().clone(), proj.representation().extend(extra))
}
