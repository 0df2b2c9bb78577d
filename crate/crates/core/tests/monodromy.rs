use std::time::Duration;

use calogero_core::monodromy::{
    build_complex_dunkl, check_complex_relations, check_free_case, check_free_limit, check_h_j6, check_halfloop,
    check_halfloop_projected, check_hierarchy, check_independence, check_intertwine, check_parity, check_symmetry,
    check_twisted, compare_hamiltonian, corrupt_site_sign, new_invariants, subring_membership, trace_and_extract,
    twist_by_projector, twist_from_poles, Budget, HamiltonianModel, Model, ModelKind,
};
use calogero_core::opalg::Poly;
use calogero_core::scalars::{Cyc, Rational};
use calogero_core::spin::{three_spin_factors, SparseMatrix};
use proptest::prelude::*;

const K_POINTS: [(i64, i64, i64, i64); 5] = [(0, 1, 0, 1), (1, 1, 1, 1), (1, 2, -2, 1), (-2, 1, 3, 1), (3, 1, 1, 2)];

fn k_points() -> Vec<(Rational, Rational)> {
    K_POINTS.iter().map(|&(a, b, c, d)| (Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap())).collect()
}

fn catalog() -> Vec<Model> {
    [
        ModelKind::BlStandard { l: 2 },
        ModelKind::BlOrbit { l: 2 },
        ModelKind::G2SixSpins,
        ModelKind::G2ThreeSpins,
        ModelKind::I2mTwoSpins { m: 6 },
    ]
    .into_iter()
    .map(|k| Model::build(k, 2, None).unwrap())
    .collect()
}

#[test]
fn orbit_model_satisfies_halfloop() {
    let m = Model::build(ModelKind::BlOrbit { l: 2 }, 2, None).unwrap();
    let t = m.monodromy(5).unwrap();
    let r = check_halfloop(&t, 5).unwrap();
    assert!(r.passed(), "{:?}", r.first_defect());
    let r = check_halfloop_projected(&t, &m.projector(2), 5).unwrap();
    assert!(r.passed(), "{:?}", r.first_defect());
    let bad = corrupt_site_sign(&t, 0, &m.sites[0]).unwrap();
    let r = check_halfloop(&bad, 5).unwrap();
    assert!(!r.passed());
    assert!(r.first_defect().is_some());
}

#[test]
fn standard_model_twisted_relation_and_symmetry() {
    let m = Model::build(ModelKind::BlStandard { l: 2 }, 2, None).unwrap();
    let b = m.twisted(5).unwrap();
    let r = check_twisted(&b, &m.twist, 5).unwrap();
    assert!(r.passed(), "{:?}", r.first_defect());
    assert!(check_symmetry(&b, &m.twist).unwrap().passed());
    // B(u) does not satisfy the untwisted relation
    assert!(!check_halfloop(&b, 3).unwrap().passed());
}

#[test]
fn shifted_twists_satisfy_cleared_relation() {
    for kind in [ModelKind::G2ThreeSpins, ModelKind::I2mTwoSpins { m: 4 }] {
        let m = Model::build(kind, 2, None).unwrap();
        let b = m.twisted(5).unwrap();
        let r = check_twisted(&b, &m.twist, 5).unwrap();
        assert!(r.passed(), "{}: {:?}", m.name(), r.first_defect());
        assert_eq!(b, twist_from_poles(m.action.clone(), m.physical_space(), &m.sites, &m.twist, 5).unwrap());
    }
}

#[test]
fn catalog_intertwines_with_projector() {
    for m in catalog() {
        assert!(m.projector(0).is_idempotent(), "{}", m.name());
        let b = m.twisted(7).unwrap();
        let r = check_intertwine(&b, &m.projector(1)).unwrap();
        let weak: Vec<_> = r.entries.iter().filter(|e| e.label.contains("Λ")).collect();
        assert!(weak.iter().all(|e| e.status.label() == "pass"), "{}", m.name());
        if matches!(m.kind, ModelKind::BlStandard { .. } | ModelKind::BlOrbit { .. }) {
            assert!(r.passed(), "{}: {:?}", m.name(), r.first_defect());
        }
    }
}

#[test]
fn three_spin_projector_factorizes() {
    let m = Model::build(ModelKind::G2ThreeSpins, 2, None).unwrap();
    let (lq, lp) = three_spin_factors(&m.action, &m.rep, &m.q).unwrap();
    let lam = m.projector(0).element().clone();
    assert_eq!(lq.mul(&lp), lam);
    assert_eq!(lp.mul(&lq), lam);
}

#[test]
fn catalog_hierarchies_commute() {
    for m in catalog() {
        let b = m.twisted(7).unwrap();
        let js = trace_and_extract(&b);
        let r = check_hierarchy(&js, &b, &m.projector(1)).unwrap();
        assert!(r.passed(), "{}: {:?}", m.name(), r.first_defect());
    }
}

#[test]
fn b_models_have_even_hierarchies() {
    for kind in [ModelKind::BlStandard { l: 2 }, ModelKind::BlOrbit { l: 2 }, ModelKind::BlStandard { l: 3 }] {
        let m = Model::build(kind, 2, None).unwrap();
        let js = trace_and_extract(&m.twisted(7).unwrap());
        assert!(check_parity(&js).passed(), "{}", m.name());
        assert!(js.scalar(2).unwrap().degree() == Some(2));
    }
}

#[test]
fn hamiltonians_at_sample_points() {
    for m in catalog() {
        let (n, _) = m.hamiltonian_coefficient();
        let b = trace_and_extract(&m.twisted(n).unwrap()).scalar(n).unwrap();
        for (ks, kl) in k_points() {
            for which in [HamiltonianModel::RootSystem, HamiltonianModel::PrintedCorrected] {
                let r = compare_hamiltonian(&m, &b, &ks, &kl, which).unwrap();
                assert!(r.passed(), "{} {which:?} ({ks},{kl}): {:?}", m.name(), r.first_defect());
            }
            let printed = compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::Printed).unwrap().passed();
            let expected = match m.kind {
                ModelKind::BlStandard { .. } | ModelKind::BlOrbit { .. } => true,
                ModelKind::I2mTwoSpins { .. } => ks.is_zero() && kl.is_zero(),
                _ => kl.is_zero(),
            };
            assert_eq!(printed, expected, "{} printed at ({ks},{kl})", m.name());
        }
        assert!(check_free_limit(&m).unwrap().passed(), "{}", m.name());
    }
}

#[test]
fn dihedral_complex_structure() {
    let m = Model::build(ModelKind::I2mTwoSpins { m: 6 }, 2, None).unwrap();
    for (ks, kl) in k_points() {
        let f = m.family(&ks, &kl).unwrap();
        let cd = build_complex_dunkl(&f).unwrap();
        let r = check_complex_relations(&cd).unwrap();
        assert!(r.passed(), "({ks},{kl}): {:?}", r.first_defect());
        assert_eq!(check_free_case(&cd).passed(), ks.is_zero() && kl.is_zero());
    }
    let f = m.family(&Rational::from_int(1), &Rational::new(1, 2).unwrap()).unwrap();
    let r = check_h_j6(&f, &Budget::new(Some(Duration::from_secs(120)), None)).unwrap();
    assert!(r.passed(), "{:?}", r.first_defect());
}

#[test]
fn independence_claims() {
    for m in catalog().into_iter().chain([Model::build(ModelKind::BlStandard { l: 3 }, 2, None).unwrap()]) {
        let r = check_independence(&m, 7, 0).unwrap();
        assert!(r.relations.passed(), "{}: {:?}", m.name(), r.relations.failures().collect::<Vec<_>>());
    }
    let m4 = Model::build(ModelKind::I2mTwoSpins { m: 4 }, 2, None).unwrap();
    let r = check_independence(&m4, 7, 1).unwrap();
    assert!(r.relations.passed());
    assert_eq!(r.new_orders, vec![1, 4]);
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn diag_signs(n: usize) -> impl Strategy<Value = SparseMatrix<Cyc>> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|s| SparseMatrix::diagonal(s.into_iter().map(|b| Cyc::from_int(if b { 1 } else { -1 })).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn order_two_twists_agree_and_satisfy_relations(q in diag_signs(2)) {
        let m = Model::build(ModelKind::BlStandard { l: 2 }, 2, Some(q)).unwrap();
        let b = m.twisted(4).unwrap();
        let p = twist_by_projector(m.action.clone(), m.physical_space(), &m.sites, &m.twist, 4).unwrap();
        prop_assert_eq!(&b, &p);
        prop_assert!(check_symmetry(&b, &m.twist).unwrap().passed());
        prop_assert!(check_twisted(&b, &m.twist, 4).unwrap().passed());
        prop_assert!(check_hierarchy(&trace_and_extract(&b), &b, &m.projector(1)).unwrap().passed());
    }

    #[test]
    fn root_system_hamiltonian_matches(ks in rational(), kl in rational()) {
        let m = Model::build(ModelKind::BlStandard { l: 2 }, 2, None).unwrap();
        let b = trace_and_extract(&m.twisted(2).unwrap()).scalar(2).unwrap();
        prop_assert!(compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::RootSystem).unwrap().passed());
        prop_assert!(compare_hamiltonian(&m, &b, &ks, &kl, HamiltonianModel::Printed).unwrap().passed());
    }

    #[test]
    fn polynomials_in_generators_are_members(c in prop::collection::vec(-5i64..=5, 4)) {
        let (y1, y2) = (Poly::var(0), Poly::var(1));
        let p = y1.add(&y2);
        let s = y1.pow(2).add(&y2.pow(2));
        let f = [p.clone(), s.clone(), p.mul(&s), s.pow(2)]
            .iter()
            .zip(&c)
            .fold(Poly::zero(), |acc, (g, k)| acc.add(&g.scale(&Cyc::from_int(*k))));
        prop_assert!(subring_membership(&f, &[p.clone(), s.clone()]).unwrap());
        let odd = f.add(&y1.pow(3));
        prop_assert!(!subring_membership(&odd, &[p.clone(), s.clone()]).unwrap());
        prop_assert!(new_invariants(&[(1, p), (2, s), (3, f)]).unwrap().len() == 2);
    }
}
