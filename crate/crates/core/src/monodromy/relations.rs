//! Coefficient-wise checks of the half-loop relation
//! [T_a(u), T_b(v)] = [T_a(u) + T_b(v), P_ab/(u − v)] and of its twisted and
//! shifted variants. The second auxiliary site b is appended after a.

use std::collections::BTreeMap;

use super::report::RelationReport;
use super::series::{AuxSeries, TwistData};
use super::MonodromyError;
use crate::opalg::Poly;
use crate::scalars::Cyc;
use crate::spin::{constant_poly_matrix, Projector, SparseMatrix, SpinSpace};

type PolyMatrix = SparseMatrix<Poly>;

fn commutator(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    x.mul(y).sub(&y.mul(x))
}

fn times_poly(x: &PolyMatrix, p: &Poly) -> PolyMatrix {
    if p.is_constant() {
        return x.scale(&p.constant_term());
    }
    x.map(|e| e.mul(p))
}

/// Both auxiliary copies S_a^{(n)}, S_b^{(n)} of a series on the space with
/// one more site.
struct Doubled {
    space: SpinSpace,
    a: Vec<PolyMatrix>,
    b: Vec<PolyMatrix>,
}

impl Doubled {
    fn new(s: &AuxSeries) -> Result<Self, MonodromyError> {
        let space = s.space().with_extra(1);
        let p = constant_poly_matrix(&space.transposition(s.aux(), s.aux() + 1)?);
        let a: Vec<PolyMatrix> = s.coeffs().iter().map(|c| c.extend(space.n)).collect();
        let b = a.iter().map(|c| p.mul(c).mul(&p)).collect();
        Ok(Doubled { space, a, b })
    }

    /// K_j = σ_b^j P_ab σ_b^{−j}.
    fn twisted_perms(&self, tw: &TwistData) -> Result<Vec<PolyMatrix>, MonodromyError> {
        let b = self.space.sites - 1;
        (0..tw.order)
            .map(|j| {
                let s = self.space.local(&tw.sigma.pow(j), b)?;
                let sinv = self.space.local(&tw.sigma.pow((tw.order - j) % tw.order), b)?;
                Ok(constant_poly_matrix(&s.mul(&self.space.transposition(b - 1, b)?).mul(&sinv)))
            })
            .collect()
    }
}

/// Reduction of [X_aΛ, Y_bΛ] for reflection-free X, Y.
fn projected_commutator(proj: &Projector, x: &PolyMatrix, pix: &PolyMatrix, y: &PolyMatrix, piy: &PolyMatrix) -> PolyMatrix {
    debug_assert_eq!(proj.dim(), x.dim());
    x.mul(piy).sub(&y.mul(pix))
}

/// [T_a^{(m)}, T_b^{(n)}] = [T_b^{(m+n)}, P_ab] for m + n ≤ budget, and the
/// nonnegative v-power identities [T_a^{(q)} + T_b^{(q)}, P_ab] = 0.
pub fn check_halfloop(t: &AuxSeries, order_budget: usize) -> Result<RelationReport, MonodromyError> {
    check_twisted(t, &TwistData::trivial(t.space().n), order_budget).map(|mut r| {
        r.name = "half-loop".into();
        r
    })
}

/// The same relation for T(u)Λ, compared through ΛYΛ = π(Y)Λ.
pub fn check_halfloop_projected(t: &AuxSeries, proj: &Projector, order_budget: usize) -> Result<RelationReport, MonodromyError> {
    check_twisted_projected(t, &TwistData::trivial(t.space().n), proj, order_budget).map(|mut r| {
        r.name = "half-loop (projected)".into();
        r
    })
}

/// Unshifted twisted relation. With c the twist scale,
/// u^{−m−1}v^{−n−1}: [B_a^{(m)}, B_b^{(n)}] = c Σ_j τ^{jm} [B_b^{(m+n)}, K_j];
/// u^{−q−p−2}v^p:   0 = c Σ_j (τ^{j(p+1)} [B_a^{(q)}, K_j] + τ^{j(q+p+1)} [B_b^{(q)}, K_j]),
/// with p running over one period of τ.
pub fn check_twisted(b: &AuxSeries, tw: &TwistData, order_budget: usize) -> Result<RelationReport, MonodromyError> {
    if tw.is_shifted() {
        return check_shifted(b, tw, &tw.scale);
    }
    let d = Doubled::new(b)?;
    let ks = d.twisted_perms(tw)?;
    let tau = |e: i64| tw.tau.pow(e).expect("root of unity");
    let mut report = RelationReport::new(if tw.order == 1 { "half-loop" } else { "twisted half-loop" });
    for total in 0..=order_budget {
        for m in 0..=total {
            let n = total - m;
            let label = format!("u^-{} v^-{}", m + 1, n + 1);
            if total > b.cutoff() {
                report.record_unverified(label, "cutoff");
                continue;
            }
            let lhs = commutator(&d.a[m], &d.b[n]);
            let mut rhs = SparseMatrix::zero(lhs.dim());
            for (j, k) in ks.iter().enumerate() {
                rhs = rhs.add(&commutator(&d.b[total], k).scale(&tau(j as i64 * m as i64)));
            }
            report.record(label, &lhs.sub(&rhs.scale(&tw.scale)));
        }
    }
    for q in 0..=order_budget.min(b.cutoff()) {
        for p in 0..tw.order as i64 {
            let mut sum = SparseMatrix::zero(d.a[q].dim());
            for (j, k) in ks.iter().enumerate() {
                let j = j as i64;
                sum = sum.add(&commutator(&d.a[q], k).scale(&tau(j * (p + 1))));
                sum = sum.add(&commutator(&d.b[q], k).scale(&tau(j * (q as i64 + p + 1))));
            }
            report.record(format!("u^-{} v^{p}", q as i64 + p + 2), &sum.scale(&tw.scale));
        }
    }
    Ok(report)
}

/// The negative-power part of the twisted relation for B(u)Λ. [BΛ, K] = [B, K]Λ
/// since K acts on auxiliary sites only, so only the left side changes.
pub fn check_twisted_projected(
    b: &AuxSeries,
    tw: &TwistData,
    proj: &Projector,
    order_budget: usize,
) -> Result<RelationReport, MonodromyError> {
    let d = Doubled::new(b)?;
    if proj.dim() != d.space.dim() {
        return Err(MonodromyError::InvalidInput(format!(
            "projector acts on dimension {}, relation space has {}",
            proj.dim(),
            d.space.dim()
        )));
    }
    let ks = d.twisted_perms(tw)?;
    let top = order_budget.min(b.cutoff());
    let pia: Vec<PolyMatrix> = d.a[..=top].iter().map(|x| proj.sandwich(x)).collect();
    let pib: Vec<PolyMatrix> = d.b[..=top].iter().map(|x| proj.sandwich(x)).collect();
    let tau = |e: i64| tw.tau.pow(e).expect("root of unity");
    let mut report = RelationReport::new("twisted half-loop (projected)");
    for total in 0..=order_budget {
        for m in 0..=total {
            let n = total - m;
            let label = format!("u^-{} v^-{}", m + 1, n + 1);
            if total > b.cutoff() {
                report.record_unverified(label, "cutoff");
                continue;
            }
            let lhs = projected_commutator(proj, &d.a[m], &pia[m], &d.b[n], &pib[n]);
            let mut rhs = SparseMatrix::zero(lhs.dim());
            for (j, k) in ks.iter().enumerate() {
                rhs = rhs.add(&commutator(&d.b[total], k).scale(&tau(j as i64 * m as i64)));
            }
            report.record(label, &lhs.sub(&rhs.scale(&tw.scale)));
        }
    }
    Ok(report)
}

/// Polynomials in (u, v) with coefficients in C[y].
type Biv = BTreeMap<(u32, u32), Poly>;

fn biv_mul(x: &Biv, y: &Biv) -> Biv {
    let mut out = Biv::new();
    for ((a, b), p) in x {
        for ((c, d), q) in y {
            let e = out.entry((a + c, b + d)).or_insert_with(Poly::zero);
            *e = e.add(&p.mul(q));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn biv_product(factors: impl Iterator<Item = Biv>) -> Biv {
    factors.fold(Biv::from([((0, 0), Poly::one())]), |acc, f| biv_mul(&acc, &f))
}

/// The shifted relation
/// [B̂_a(u), B̂_b(v)] = c Σ_j [τ^j B̂_a(u) + B̂_b(v), K_j / (u − τ^j v − (1 − τ^j)S)]
/// checked after multiplying both sides by Π_j (u − τ^j v − (1 − τ^j)S). Every
/// coefficient u^α v^β whose inputs lie within the cutoff is compared; the
/// others are counted in `beyond_cutoff`.
pub fn check_shifted(b: &AuxSeries, tw: &TwistData, c: &Cyc) -> Result<RelationReport, MonodromyError> {
    let d = Doubled::new(b)?;
    let ks = d.twisted_perms(tw)?;
    let n = tw.order as i64;
    let cutoff = b.cutoff() as i64;
    let s = tw.shift.clone().unwrap_or_else(Poly::zero);
    let tau = |e: i64| tw.tau.pow(e).expect("root of unity");
    let factor = |j: i64| -> Biv {
        let mut f = Biv::from([((1, 0), Poly::one()), ((0, 1), Poly::constant(-&tau(j)))]);
        let c0 = s.scale(&(&tau(j) - &Cyc::one()));
        if !c0.is_zero() {
            f.insert((0, 0), c0);
        }
        f
    };
    let full = biv_product((0..n).map(factor));
    let partial: Vec<Biv> = (0..n).map(|j| biv_product((0..n).filter(|&i| i != j).map(factor))).collect();
    let size = b.cutoff() + 1;
    let mut ab = vec![vec![None; size]; size];
    let mut comm_ab = |m: usize, l: usize| -> PolyMatrix {
        ab[m][l].get_or_insert_with(|| commutator(&d.a[m], &d.b[l])).clone()
    };
    let ak: Vec<Vec<PolyMatrix>> = ks.iter().map(|k| d.a.iter().map(|x| commutator(x, k)).collect()).collect();
    let bk: Vec<Vec<PolyMatrix>> = ks.iter().map(|k| d.b.iter().map(|x| commutator(x, k)).collect()).collect();
    let mut report = RelationReport::new("shifted twisted half-loop");
    let lo = -(cutoff + 1);
    let hi = n;
    let dim = d.space.dim();
    for alpha in lo..=hi {
        for beta in lo..=hi {
            let label = format!("u^{alpha} v^{beta}");
            if n - alpha - 1 > cutoff || n - beta - 1 > cutoff {
                report.beyond_cutoff += 1;
                continue;
            }
            let mut lhs = SparseMatrix::zero(dim);
            for (&(p, q), e) in &full {
                let (m, l) = (p as i64 - alpha - 1, q as i64 - beta - 1);
                if m >= 0 && l >= 0 {
                    lhs = lhs.add(&times_poly(&comm_ab(m as usize, l as usize), e));
                }
            }
            let mut rhs = SparseMatrix::zero(dim);
            for (j, f) in partial.iter().enumerate() {
                for (&(p, q), e) in f {
                    let m = p as i64 - alpha - 1;
                    if q as i64 == beta && m >= 0 {
                        rhs = rhs.add(&times_poly(&ak[j][m as usize], e).scale(&tau(j as i64)));
                    }
                    let l = q as i64 - beta - 1;
                    if p as i64 == alpha && l >= 0 {
                        rhs = rhs.add(&times_poly(&bk[j][l as usize], e));
                    }
                }
            }
            let defect = lhs.sub(&rhs.scale(c));
            if lhs.is_zero() && defect.is_zero() {
                continue;
            }
            report.record(label, &defect);
        }
    }
    Ok(report)
}

/// T with the sign of the k-th site term flipped: T^{(n)} − 2 P_{ak} d_{μ_k}^n.
pub fn corrupt_site_sign(t: &AuxSeries, k: usize, site: &[Cyc]) -> Result<AuxSeries, MonodromyError> {
    let p = constant_poly_matrix(&t.space().transposition(t.aux(), k)?);
    let x = Poly::linear(site);
    Ok(t.map(|n, c| c.sub(&times_poly(&p, &x.pow(n as u32)).scale(&Cyc::from_int(2)))))
}
