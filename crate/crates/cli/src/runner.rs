//! Runs every check of a scenario on a worker pool and assembles the report in
//! a fixed order.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use calogero_core::coxeter::{unit_vector, GroupLabel};
use calogero_core::monodromy::{
    build_complex_dunkl, check_complex_relations, check_free_case, check_free_limit, check_h_j6, check_halfloop,
    check_halfloop_projected, check_hierarchy, check_independence, check_intertwine, check_momentum, check_parity,
    check_shift_central, check_symmetry, check_twisted, check_twisted_projected, compare_hamiltonian, corrupt_site_sign,
    proportional, trace_and_extract, twist_by_projector, twist_from_poles, AuxSeries, Budget, ConservedSeries,
    HamiltonianModel, Model, ModelKind, MonodromyError, RelationReport, Status,
};
use calogero_core::opalg::Poly;
use calogero_core::scalars::{Cyc, Rational};
use calogero_core::spin::{default_root_twist, three_spin_factors, two_spin_factors, validate_twist, SparseMatrix, SpinMatrix};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, QSpec, Scenario, ScenarioConfig};
use crate::report::{CheckRecord, VerificationReport};

/// Environment variable holding the worker count.
pub const WORKERS_VAR: &str = "CALOGERO_WORKERS";

/// Orders m + n checked for the algebra relations.
const RELATION_ORDERS: usize = 5;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),
}

fn invalid(key: &str, msg: impl ToString) -> RunError {
    RunError::Config(ConfigError::InvalidValue { key: key.into(), msg: msg.to_string() })
}

fn twist_order(cfg: &ScenarioConfig) -> u32 {
    match cfg.scenario {
        Scenario::I2mTwoSpins => cfg.m,
        _ => 2,
    }
}

fn q_matrix(cfg: &ScenarioConfig) -> Result<Option<SpinMatrix>, RunError> {
    let order = twist_order(cfg);
    let q = match &cfg.q {
        None => return Ok(None),
        Some(QSpec::Exponents(e)) => default_root_twist(cfg.n, order, Some(e)),
        Some(QSpec::Matrix(rows)) => {
            if rows.len() != cfg.n || rows.iter().any(|r| r.len() != cfg.n) {
                return Err(invalid("Q", format!("expected an {n}×{n} matrix", n = cfg.n)));
            }
            let entries = rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| (i, j, c.clone())));
            SparseMatrix::from_entries(cfg.n, entries.filter(|(_, _, c)| !c.is_zero()))
        }
    };
    validate_twist(&q, order).map_err(|e| invalid("Q", e))?;
    Ok(Some(q))
}

pub fn build_model(cfg: &ScenarioConfig) -> Result<Model, RunError> {
    let kind = match cfg.scenario {
        Scenario::BlStandard => ModelKind::BlStandard { l: cfg.rank },
        Scenario::BlOrbit => ModelKind::BlOrbit { l: cfg.rank },
        Scenario::G2SixSpins => ModelKind::G2SixSpins,
        Scenario::G2ThreeSpins => ModelKind::G2ThreeSpins,
        Scenario::I2mTwoSpins => ModelKind::I2mTwoSpins { m: cfg.m },
        Scenario::Custom => ModelKind::Custom {
            label: cfg.group.clone().ok_or_else(|| ConfigError::Missing("group".into()))?,
            base_point: cfg.base_point.clone().ok_or_else(|| ConfigError::Missing("base_point".into()))?,
            order: cfg.orbit_order.clone(),
        },
    };
    let q = match cfg.scenario {
        Scenario::BlStandard | Scenario::G2ThreeSpins | Scenario::I2mTwoSpins => q_matrix(cfg)?,
        _ => None,
    };
    Model::build(kind, cfg.n, q).map_err(|e| invalid("scenario", e))
}

/// Shared data computed once before the checks run.
pub struct Context {
    pub cfg: ScenarioConfig,
    pub model: Model,
    /// T(u).
    pub monodromy: AuxSeries,
    /// B(u), or B̂(u) for shifted twists.
    pub series: AuxSeries,
    pub conserved: ConservedSeries,
}

impl Context {
    pub fn new(cfg: &ScenarioConfig) -> Result<Self, RunError> {
        let model = build_model(cfg)?;
        let monodromy = model.monodromy(cfg.cutoff).map_err(engine)?;
        let series = model.twisted(cfg.cutoff).map_err(engine)?;
        let conserved = trace_and_extract(&series);
        Ok(Context { cfg: cfg.clone(), model, monodromy, series, conserved })
    }

    fn budget(&self) -> Budget {
        Budget::new(self.cfg.time_limit_secs.map(Duration::from_secs), self.cfg.max_terms)
    }

    fn is_b_model(&self) -> bool {
        matches!(self.model.kind, ModelKind::BlStandard { .. } | ModelKind::BlOrbit { .. })
    }

    fn is_g2(&self) -> bool {
        matches!(self.model.kind, ModelKind::G2SixSpins | ModelKind::G2ThreeSpins)
    }
}

fn engine(e: MonodromyError) -> RunError {
    match e {
        MonodromyError::BudgetExceeded(why) => RunError::ResourceBudgetExceeded(why),
        other => invalid("scenario", other),
    }
}

/// Outcome of one check: status label and defect.
type Outcome = (String, Option<String>);

fn from_report(r: &RelationReport) -> Outcome {
    let status = r.status();
    let defect = match &status {
        Status::Fail => {
            let n = r.failures().count();
            r.first_defect().map(|d| if n > 1 { format!("{d} (and {} more)", n - 1) } else { d })
        }
        _ => None,
    };
    (status.label(), defect.map(clip))
}

/// Longest defect kept in a report, in characters.
const DEFECT_CHARS: usize = 400;

fn clip(d: String) -> String {
    match d.char_indices().nth(DEFECT_CHARS) {
        Some((i, _)) => format!("{} …", &d[..i]),
        None => d,
    }
}

fn from_bool(ok: bool, defect: impl FnOnce() -> String) -> Outcome {
    if ok {
        ("pass".into(), None)
    } else {
        ("fail".into(), Some(defect()))
    }
}

fn from_result(r: Result<Outcome, MonodromyError>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(MonodromyError::BudgetExceeded(why)) => (format!("unverified: budget: {why}"), None),
        Err(e) => ("fail".into(), Some(format!("error: {e}"))),
    }
}

type CheckFn = Box<dyn Fn(&Context) -> Outcome + Send + Sync>;

struct Task {
    name: &'static str,
    params: BTreeMap<String, String>,
    run: CheckFn,
}

fn task(name: &'static str, params: &[(&str, String)], run: impl Fn(&Context) -> Outcome + Send + Sync + 'static) -> Task {
    let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    Task { name, params, run: Box::new(run) }
}

fn k_param(ks: &Rational, kl: &Rational) -> (&'static str, String) {
    ("k", format!("{ks},{kl}"))
}

fn expected_order(label: &GroupLabel) -> usize {
    match label {
        GroupLabel::B(l) => (1..=*l).product::<usize>() << l,
        GroupLabel::A(l) => (1..=*l).product(),
        GroupLabel::I2InR2(m) | GroupLabel::I2InR3(m) => 2 * *m as usize,
    }
}

fn printed_formula_exists(kind: &ModelKind) -> bool {
    !matches!(kind, ModelKind::Custom { .. } | ModelKind::I2mTwoSpins { m: 0..=5 | 7.. })
}

fn hamiltonian_poly(ctx: &Context) -> Result<Poly, MonodromyError> {
    let (n, _) = ctx.model.hamiltonian_coefficient();
    ctx.conserved
        .scalar(n)
        .ok_or_else(|| MonodromyError::InvalidInput(format!("trace coefficient b{n} is not scalar")))
}

fn hamiltonian_task(name: &'static str, which: HamiltonianModel, ks: &Rational, kl: &Rational) -> Task {
    let (a, b) = (ks.clone(), kl.clone());
    task(name, &[k_param(ks, kl)], move |ctx| {
        from_result(hamiltonian_poly(ctx).and_then(|p| compare_hamiltonian(&ctx.model, &p, &a, &b, which)).map(|r| from_report(&r)))
    })
}

fn tasks(ctx: &Context) -> Vec<Task> {
    let cfg = &ctx.cfg;
    let model = &ctx.model;
    let orders = RELATION_ORDERS.min(cfg.cutoff);
    let mut out = Vec::new();

    out.push(task("group.order", &[("group", model.roots.label.to_string())], |ctx| {
        let (got, want) = (ctx.model.group().order(), expected_order(&ctx.model.roots.label));
        from_bool(got == want, || format!("order {got}, expected {want}"))
    }));
    out.push(task("group.presentation", &[], |ctx| {
        let bad: Vec<String> = ctx.model.group().verify_presentation().into_iter().filter(|r| !r.holds).map(|r| r.name).collect();
        from_bool(bad.is_empty(), || format!("relations fail: {}", bad.join(", ")))
    }));

    for (ks, kl) in &cfg.k_values {
        let (a, b) = (ks.clone(), kl.clone());
        out.push(task("dunkl.commutativity", &[k_param(ks, kl)], move |ctx| {
            from_result((|| {
                let f = ctx.model.family(&a, &b)?;
                let ds = (0..f.dim()).map(|j| f.coordinate(j)).collect::<Result<Vec<_>, _>>()?;
                for i in 0..ds.len() {
                    for j in i + 1..ds.len() {
                        let c = ds[i].commutator(&ds[j]);
                        if !c.is_zero() {
                            return Ok(("fail".into(), Some(format!("[d{}, d{}] = {c}", i + 1, j + 1))));
                        }
                    }
                }
                Ok(("pass".into(), None))
            })())
        }));
        let (a, b) = (ks.clone(), kl.clone());
        out.push(task("dunkl.equivariance", &[k_param(ks, kl)], move |ctx| {
            from_result((|| {
                let f = ctx.model.family(&a, &b)?;
                let g = ctx.model.group();
                for &s in &ctx.model.roots.simple {
                    for j in 0..f.dim() {
                        if !f.equivariance_check(g.reflection(s), &unit_vector(f.dim(), j))? {
                            return Ok(("fail".into(), Some(format!("simple root {s}, direction e{}", j + 1))));
                        }
                    }
                }
                Ok(("pass".into(), None))
            })())
        }));
    }

    out.push(task("representation.relations", &[], |ctx| {
        let rep = &ctx.model.rep;
        if let Err(e) = rep.check_homomorphism() {
            return ("fail".into(), Some(e.to_string()));
        }
        let bad: Vec<String> = rep.verify_relations().into_iter().filter(|r| !r.holds).map(|r| r.name).collect();
        from_bool(bad.is_empty(), || format!("relations fail in the spin representation: {}", bad.join(", ")))
    }));
    out.push(task("projector.idempotent", &[], |ctx| {
        from_bool(ctx.model.projector(0).is_idempotent(), || "Λ² ≠ Λ".into())
    }));
    if matches!(model.kind, ModelKind::G2ThreeSpins | ModelKind::I2mTwoSpins { .. }) {
        out.push(task("projector.factorization", &[], |ctx| {
            let m = &ctx.model;
            let factors = match m.kind {
                ModelKind::I2mTwoSpins { m: order } => two_spin_factors(&m.action, &m.rep, &m.q, order, false),
                _ => three_spin_factors(&m.action, &m.rep, &m.q),
            };
            match factors {
                Ok((lq, lp)) => {
                    let lam = m.projector(0).element().clone();
                    let (qp, pq) = (lq.mul(&lp) == lam, lp.mul(&lq) == lam);
                    from_bool(qp && pq, || format!("Λ_QΛ_P = Λ: {qp}, Λ_PΛ_Q = Λ: {pq}"))
                }
                Err(e) => ("fail".into(), Some(e.to_string())),
            }
        }));
    }

    let params = [("orders", format!("m+n<={orders}"))];
    if model.twist.order == 1 {
        out.push(task("monodromy.halfloop", &params, move |ctx| from_result(check_halfloop(&ctx.monodromy, orders).map(|r| from_report(&r)))));
        out.push(task("monodromy.halfloop_projected", &params, move |ctx| {
            from_result(check_halfloop_projected(&ctx.monodromy, &ctx.model.projector(2), orders).map(|r| from_report(&r)))
        }));
        out.push(task("monodromy.negative_control", &params, move |ctx| {
            from_result((|| {
                let bad = corrupt_site_sign(&ctx.monodromy, 0, &ctx.model.sites[0])?;
                let r = check_halfloop(&bad, orders)?;
                Ok(from_bool(r.first_defect().is_some(), || "corrupted monodromy passed the relation".into()))
            })())
        }));
    } else if !model.twist.is_shifted() {
        out.push(task("monodromy.twisted", &params, move |ctx| {
            from_result(check_twisted(&ctx.series, &ctx.model.twist, orders).map(|r| from_report(&r)))
        }));
        out.push(task("monodromy.twisted_projected", &params, move |ctx| {
            from_result(check_twisted_projected(&ctx.series, &ctx.model.twist, &ctx.model.projector(2), orders).map(|r| from_report(&r)))
        }));
        out.push(task("monodromy.symmetry", &[], |ctx| from_result(check_symmetry(&ctx.series, &ctx.model.twist).map(|r| from_report(&r)))));
        out.push(task("monodromy.projector_route", &[], |ctx| {
            let m = &ctx.model;
            from_result(
                twist_by_projector(m.action.clone(), m.physical_space(), &m.sites, &m.twist, ctx.cfg.cutoff)
                    .map(|p| from_bool(p == ctx.series, || "projector route differs from the direct twist".into())),
            )
        }));
    } else {
        out.push(task("monodromy.shifted", &[("cleared", "all representable".into())], |ctx| {
            from_result(check_twisted(&ctx.series, &ctx.model.twist, ctx.cfg.cutoff).map(|r| {
                let (s, d) = from_report(&r);
                (s, d.map(|d| format!("{d}; {} coefficients beyond the cutoff", r.beyond_cutoff)))
            }))
        }));
        out.push(task("monodromy.pole_route", &[], |ctx| {
            let m = &ctx.model;
            from_result(
                twist_from_poles(m.action.clone(), m.physical_space(), &m.sites, &m.twist, ctx.cfg.cutoff)
                    .map(|p| from_bool(p == ctx.series, || "pole expansion differs from the series".into())),
            )
        }));
    }

    let strong = ctx.is_b_model();
    out.push(task("intertwining", &[("n", format!("<={}", cfg.cutoff)), ("strong", strong.to_string())], move |ctx| {
        from_result(check_intertwine(&ctx.series, &ctx.model.projector(1)).map(|mut r| {
            if !strong {
                r.entries.retain(|e| e.label.contains('Λ'));
            }
            from_report(&r)
        }))
    }));

    out.push(task("hierarchy.commutation", &[("n", format!("<={}", cfg.cutoff))], |ctx| {
        from_result(check_hierarchy(&ctx.conserved, &ctx.series, &ctx.model.projector(1)).map(|r| from_report(&r)))
    }));
    if ctx.is_b_model() {
        out.push(task("hierarchy.parity", &[], |ctx| from_report(&check_parity(&ctx.conserved))));
    }
    for (ks, kl) in &cfg.k_values {
        if ctx.is_g2() {
            let (a, b) = (ks.clone(), kl.clone());
            out.push(task("hierarchy.momentum", &[k_param(ks, kl)], move |ctx| {
                let b1 = ctx.conserved.scalar(1).unwrap_or_else(Poly::zero);
                let p = Poly::linear(&[Cyc::one(), Cyc::one(), Cyc::one()]);
                match proportional(&b1, &p) {
                    None => ("fail".into(), Some(format!("b1 = {b1} is not proportional to d1 + d2 + d3"))),
                    Some(c) => from_result(check_momentum(&ctx.model, &b1, &c, &a, &b).map(|r| from_report(&r))),
                }
            }));
        }
        if model.twist.is_shifted() {
            let (a, b) = (ks.clone(), kl.clone());
            out.push(task("hierarchy.shift_central", &[k_param(ks, kl)], move |ctx| {
                from_result(check_shift_central(&ctx.model, &a, &b).map(|r| from_report(&r)))
            }));
        }
    }

    for (ks, kl) in &cfg.k_values {
        if printed_formula_exists(&model.kind) {
            out.push(hamiltonian_task("hamiltonian.printed", HamiltonianModel::Printed, ks, kl));
            if !ctx.is_b_model() {
                out.push(hamiltonian_task("hamiltonian.printed_corrected", HamiltonianModel::PrintedCorrected, ks, kl));
            }
        }
        out.push(hamiltonian_task("hamiltonian.root_system", HamiltonianModel::RootSystem, ks, kl));
    }
    out.push(task("hamiltonian.free_limit", &[], |ctx| from_result(check_free_limit(&ctx.model).map(|r| from_report(&r)))));

    if let ModelKind::I2mTwoSpins { m } = model.kind {
        for (ks, kl) in &cfg.k_values {
            let (a, b) = (ks.clone(), kl.clone());
            out.push(task("complex.conjugation", &[k_param(ks, kl)], move |ctx| {
                from_result((|| {
                    let cd = build_complex_dunkl(&ctx.model.family(&a, &b)?)?;
                    Ok(from_report(&check_complex_relations(&cd)?))
                })())
            }));
        }
        out.push(task("complex.free_case", &[k_param(&Rational::from_int(0), &Rational::from_int(0))], |ctx| {
            let zero = Rational::from_int(0);
            from_result((|| Ok(from_report(&check_free_case(&build_complex_dunkl(&ctx.model.family(&zero, &zero)?)?))))())
        }));
        if m == 6 {
            let (ks, kl) = cfg
                .k_values
                .iter()
                .find(|(a, b)| !a.is_zero() && !b.is_zero())
                .cloned()
                .unwrap_or((Rational::from_int(1), Rational::from_int(1)));
            out.push(task("complex.h_j6", &[k_param(&ks, &kl)], move |ctx| {
                from_result((|| Ok(from_report(&check_h_j6(&ctx.model.family(&ks, &kl)?, &ctx.budget())?)))())
            }));
        }
    }

    if !matches!(model.kind, ModelKind::Custom { .. }) {
        out.push(task("independence", &[("seed_point", cfg.seed_point.to_string())], |ctx| {
            from_result(check_independence(&ctx.model, ctx.cfg.cutoff, ctx.cfg.seed_point).map(|r| {
                let (s, d) = from_report(&r.relations);
                let orders: Vec<String> = r.new_orders.iter().map(|n| format!("u^-{}", n + 1)).collect();
                (s, d.map(|d| format!("{d}; new invariants at {}", orders.join(", "))))
            }))
        }));
    }
    out
}

fn run_task(ctx: &Context, t: &Task) -> CheckRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (t.run)(ctx))).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        ("fail".into(), Some(format!("panic: {}", msg.unwrap_or_default())))
    });
    let elapsed = start.elapsed();
    let (mut status, defect) = outcome;
    if let Some(limit) = ctx.cfg.time_limit_secs {
        if elapsed > Duration::from_secs(limit) && status != "pass" {
            status = format!("unverified: budget: exceeded {limit} s");
        }
    }
    CheckRecord { name: t.name.to_string(), params: t.params.clone(), status, defect, millis: elapsed.as_millis() as u64 }
}

/// Worker count from the environment, defaulting to the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<VerificationReport, RunError> {
    cfg.validate()?;
    let ctx = Arc::new(Context::new(cfg)?);
    let tasks = tasks(&ctx);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| RunError::ResourceBudgetExceeded(format!("worker pool: {e}")))?;
    let records: Vec<CheckRecord> = pool.install(|| tasks.par_iter().map(|t| run_task(&ctx, t)).collect());
    Ok(VerificationReport::new(cfg.echo(), ctx.model.symmetry_tag(), records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_orders() {
        assert_eq!(expected_order(&GroupLabel::B(2)), 8);
        assert_eq!(expected_order(&GroupLabel::B(3)), 48);
        assert_eq!(expected_order(&GroupLabel::A(3)), 6);
        assert_eq!(expected_order(&GroupLabel::I2InR3(6)), 12);
    }

    #[test]
    fn q_override_is_validated() {
        let mut cfg = ScenarioConfig::new(Scenario::BlStandard);
        cfg.q = Some(QSpec::Exponents(vec![0, 1]));
        assert!(build_model(&cfg).is_ok());
        cfg.q = Some(QSpec::Matrix(vec![vec![Cyc::one(), Cyc::zero()], vec![Cyc::zero(), Cyc::i()]]));
        assert!(matches!(build_model(&cfg), Err(RunError::Config(_))));
    }

    #[test]
    fn small_custom_scenario_runs() {
        let mut cfg = crate::catalog::default_config(Scenario::Custom);
        cfg.cutoff = 3;
        cfg.k_values.truncate(2);
        let r = run_scenario(&cfg).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.symmetry, "half-loop");
    }
}
