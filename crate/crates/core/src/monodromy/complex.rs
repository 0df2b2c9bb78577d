//! Complex Dunkl operators d = d_{e_1} + i d_{e_2}, d̄ = d_{e_1} − i d_{e_2} for I₂(m) in R².

use super::budget::Budget;
use super::report::RelationReport;
use super::MonodromyError;
use crate::opalg::{DunklElem, DunklFamily, Operator, Poly};
use crate::scalars::Cyc;

#[derive(Clone, Debug)]
pub struct ComplexDunkl {
    pub d: Operator,
    pub dbar: Operator,
    /// Dihedral order m; τ = e^{2iπ/m}.
    pub m: u32,
}

fn forms() -> ([Cyc; 2], [Cyc; 2]) {
    ([Cyc::one(), Cyc::i()], [Cyc::one(), -&Cyc::i()])
}

pub fn build_complex_dunkl(family: &DunklFamily) -> Result<ComplexDunkl, MonodromyError> {
    if family.dim() != 2 {
        return Err(MonodromyError::InvalidInput(format!("complex Dunkl operators need dimension 2, got {}", family.dim())));
    }
    let order = family.action().group().order();
    let (z, zbar) = forms();
    Ok(ComplexDunkl { d: family.operator(&z)?, dbar: family.operator(&zbar)?, m: (order / 2) as u32 })
}

impl ComplexDunkl {
    pub fn tau(&self) -> Cyc {
        Cyc::root_of_unity(self.m, 1)
    }

    /// −i(∂_1 + i∂_2) and −i(∂_1 − i∂_2).
    pub fn free(&self) -> (Operator, Operator) {
        let action = self.d.action().clone();
        let (z, zbar) = forms();
        let mi = -&Cyc::i();
        (Operator::directional(action.clone(), &z).scale(&mi), Operator::directional(action, &zbar).scale(&mi))
    }
}

/// â d = τ⁻¹ d â, â d̄ = τ d̄ â, b̂ d = i d̄ b̂, b̂ d̄ = −i d b̂.
pub fn check_complex_relations(cd: &ComplexDunkl) -> Result<RelationReport, MonodromyError> {
    let group = cd.d.action().group().clone();
    let gen = |name: &str| group.generator(name).ok_or_else(|| MonodromyError::InvalidInput(format!("missing generator {name}")));
    let (a, b) = (gen("a")?, gen("b")?);
    let tau = cd.tau();
    let i = Cyc::i();
    let mut report = RelationReport::new("complex Dunkl conjugation");
    let cases = [
        ("a d = tau^-1 d a", a, &cd.d, cd.d.scale(&Cyc::root_of_unity(cd.m, -1))),
        ("a dbar = tau dbar a", a, &cd.dbar, cd.dbar.scale(&tau)),
        ("b d = i dbar b", b, &cd.d, cd.dbar.scale(&i)),
        ("b dbar = -i d b", b, &cd.dbar, cd.d.scale(&-&i)),
    ];
    for (label, w, lhs, rhs) in cases {
        let defect = lhs.conjugate(w).sub(&rhs);
        report.record_bool(label, defect.is_zero(), Some(defect.to_string()));
    }
    Ok(report)
}

/// d = −i(∂_1 + i∂_2) when every multiplicity vanishes.
pub fn check_free_case(cd: &ComplexDunkl) -> RelationReport {
    let (f, fbar) = cd.free();
    let mut report = RelationReport::new("complex Dunkl free case");
    let (e, ebar) = (cd.d.sub(&f), cd.dbar.sub(&fbar));
    report.record_bool("d = -i(d1 + i d2)", e.is_zero(), Some(e.to_string()));
    report.record_bool("dbar = -i(d1 - i d2)", ebar.is_zero(), Some(ebar.to_string()));
    report
}

/// H = d d̄ and J₆ = d⁶ − d̄⁶ + 2(d d̄)⁶ as Dunkl polynomials.
pub fn h_and_j6(action: std::sync::Arc<crate::opalg::Action>) -> (DunklElem<Poly>, DunklElem<Poly>) {
    let (z, zbar) = forms();
    let d = DunklElem::direction(action.clone(), &z);
    let dbar = DunklElem::direction(action, &zbar);
    let h = d.mul(&dbar);
    let j6 = d.pow(6).sub(&dbar.pow(6)).add(&h.pow(6).scale(&Cyc::from_int(2)));
    (h, j6)
}

/// [H, J₆] = 0 in the Dunkl algebra, [d, d̄] = 0 as explicit operators (so the
/// lowering of the Dunkl-algebra identity is exact), and, within the budget,
/// [H, d⁶ − d̄⁶] = 0 as explicit operators.
pub fn check_h_j6(family: &DunklFamily, budget: &Budget) -> Result<RelationReport, MonodromyError> {
    let mut report = RelationReport::new("[H, J6]");
    let (h, j6) = h_and_j6(family.action().clone());
    let c = h.commutator(&j6);
    report.record_bool("Dunkl algebra", c.is_zero(), Some(format!("{:?}", c.terms())));
    let cd = build_complex_dunkl(family)?;
    let c = cd.d.commutator(&cd.dbar);
    report.record_bool("[d, dbar] operators", c.is_zero(), Some(c.to_string()));
    let h_op = cd.d.compose(&cd.dbar);
    let pow = |x: &Operator, n: u32| -> Result<Operator, MonodromyError> {
        let mut out = x.clone();
        for _ in 1..n {
            out = out.compose(x);
            budget.check(out.len())?;
        }
        Ok(out)
    };
    let explicit = pow(&cd.d, 6).and_then(|d6| Ok(d6.sub(&pow(&cd.dbar, 6)?))).map(|j| h_op.commutator(&j));
    match explicit {
        Ok(c) => report.record_bool("[H, d^6 - dbar^6] operators", c.is_zero(), Some(c.to_string())),
        Err(MonodromyError::BudgetExceeded(why)) => report.record_unverified("[H, d^6 - dbar^6] operators", format!("budget: {why}")),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, GroupLabel, MultiplicityFunction, RootSystem};
    use crate::opalg::Action;
    use crate::scalars::Rational;
    use std::sync::Arc;

    fn family(m: u32, ks: i64, kl: i64) -> DunklFamily {
        let rs = RootSystem::build(GroupLabel::I2InR2(m)).unwrap();
        let action = Arc::new(Action::new(Arc::new(CoxeterGroup::generate(&rs).unwrap())));
        let k = MultiplicityFunction::from_couplings(&rs, &Rational::from_int(ks), &Rational::from_int(kl)).unwrap();
        DunklFamily::new(action, k).unwrap()
    }

    #[test]
    fn conjugations() {
        for m in [4, 6] {
            let cd = build_complex_dunkl(&family(m, 1, 2)).unwrap();
            let r = check_complex_relations(&cd).unwrap();
            assert!(r.passed(), "{:?}", r.first_defect());
            assert!(!check_free_case(&cd).passed());
        }
    }

    #[test]
    fn free_case() {
        let cd = build_complex_dunkl(&family(6, 0, 0)).unwrap();
        assert!(check_free_case(&cd).passed());
    }

    #[test]
    fn j6_invariant() {
        let f = family(6, 1, 1);
        let (h, j6) = h_and_j6(f.action().clone());
        let g = f.action().group().clone();
        for name in ["a", "b"] {
            let w = g.generator(name).unwrap();
            assert_eq!(j6.conjugate(w), j6);
            assert_eq!(h.conjugate(w), h);
        }
    }

    #[test]
    fn h_commutes_with_j6() {
        let budget = Budget::new(Some(std::time::Duration::from_secs(120)), None);
        let r = check_h_j6(&family(6, 1, 1), &budget).unwrap();
        assert!(r.passed(), "{:?}", r.first_defect());
    }
}
