//! PDE systems from the zero-curvature condition
//! `∂_n V^(k) − ∂_k V^(n) + [V^(k), V^(n)] = 0` on the phase space of `Ψ_k`.
//!
//! Only one derivation is ever represented: `∂_k` is the total derivative of
//! [`DiffPoly`], and `∂_n` of a composite is obtained on demand by the chain
//! rule through the rules stored in a [`PdeSystem`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffpoly::{rat, DiffPoly, FieldVar};
use crate::error::{Error, Result};
use crate::fnr::{build_psi, lax_matrix, PsiTable};
use crate::loopalg::{LaurentMatrix, Sl2Poly};
use crate::report::CheckReport;

/// `∂_n field = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdeRule {
    pub field: FieldVar,
    pub rhs: DiffPoly,
}

/// Flow `∂_n` on the free fields of `Ψ_k`, right-hand sides in `t_k`-derivatives.
///
/// For `n < k` the rules for `b_p, c_p` with `p ≤ k − n` only define the
/// higher fields and are kept apart in `auxiliary`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdeSystem {
    pub k: u32,
    pub n: u32,
    pub evolution: Vec<PdeRule>,
    pub auxiliary: Vec<PdeRule>,
}

impl PdeSystem {
    pub fn rule(&self, field: FieldVar) -> Option<&DiffPoly> {
        self.all_rules()
            .find(|r| r.field == field.base())
            .map(|r| &r.rhs)
    }

    pub fn all_rules(&self) -> impl Iterator<Item = &PdeRule> + '_ {
        self.auxiliary.iter().chain(self.evolution.iter())
    }

    fn rule_map(&self) -> BTreeMap<FieldVar, &DiffPoly> {
        self.all_rules().map(|r| (r.field, &r.rhs)).collect()
    }

    /// `∂_n p` by the chain rule, `∂_n u^(l) = D^l (∂_n u)`.
    pub fn apply_flow(&self, p: &DiffPoly) -> Result<DiffPoly> {
        let rules = self.rule_map();
        let mut out = DiffPoly::zero();
        for v in p.vars() {
            if v.is_constant() {
                continue;
            }
            let rule = rules.get(&v.base()).ok_or_else(|| {
                Error::InvalidArgument(format!("no t_{} rule for `{}`", self.n, v.base()))
            })?;
            out += p.partial(v) * rule.derive_n(v.dorder);
        }
        Ok(out)
    }

    /// Rules as `∂_n u − rhs`, the "= 0" form.
    pub fn zero_form(&self) -> Vec<(FieldVar, DiffPoly)> {
        self.all_rules().map(|r| (r.field, -&r.rhs)).collect()
    }

    /// Applies `rules` to every right-hand side.
    pub fn substitute(&self, rules: &BTreeMap<FieldVar, DiffPoly>) -> PdeSystem {
        let map = |v: &Vec<PdeRule>| {
            v.iter()
                .map(|r| PdeRule {
                    field: r.field,
                    rhs: r.rhs.substitute(rules),
                })
                .collect()
        };
        PdeSystem {
            k: self.k,
            n: self.n,
            evolution: map(&self.evolution),
            auxiliary: map(&self.auxiliary),
        }
    }
}

/// `∂_k V^(n) − [V^(k), V^(n)]`, which the zero-curvature condition equates
/// with `∂_n V^(k)`.
fn curvature_rhs(table: &PsiTable, n: u32) -> Result<LaurentMatrix> {
    let vk = lax_matrix(table, table.k())?;
    let vn = lax_matrix(table, n)?;
    Ok(vn.derive().sub(&vk.commutator(&vn)))
}

pub fn zero_curvature(table: &PsiTable, n: u32) -> Result<PdeSystem> {
    let k = table.k();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let m = curvature_rhs(table, n)?;
    let mut evolution = Vec::new();
    let mut auxiliary = Vec::new();
    for p in 1..=k {
        let x = m.coeff((k - p) as i32)?;
        let target = if n < k && p <= k - n {
            &mut auxiliary
        } else {
            &mut evolution
        };
        target.push(PdeRule {
            field: FieldVar::b(p),
            rhs: x.bp,
        });
        target.push(PdeRule {
            field: FieldVar::c(p),
            rhs: x.cm,
        });
    }
    let system = PdeSystem {
        k,
        n,
        evolution,
        auxiliary,
    };

    for (e, x) in m.iter() {
        if e >= k as i32 {
            for (component, r) in ["a", "b", "c"].into_iter().zip(x.components()) {
                if !r.is_zero() {
                    return Err(Error::ResidualNonZero {
                        exponent: e,
                        component,
                        residual: r.to_string(),
                    });
                }
            }
        }
    }
    for p in 1..=k {
        let e = (k - p) as i32;
        let lhs = system.apply_flow(&table.row(p as i64)?.a)?;
        let r = &lhs - &m.coeff(e)?.a;
        if !r.is_zero() {
            return Err(Error::ResidualNonZero {
                exponent: e,
                component: "a",
                residual: r.to_string(),
            });
        }
    }
    Ok(system)
}

fn flow_matrix(system: &PdeSystem, v: &LaurentMatrix) -> Result<LaurentMatrix> {
    let mut terms = Vec::new();
    for (e, x) in v.iter() {
        let y = Sl2Poly::new(
            system.apply_flow(&x.a)?,
            system.apply_flow(&x.bp)?,
            system.apply_flow(&x.cm)?,
        );
        terms.push((e, y));
    }
    Ok(LaurentMatrix::from_terms(terms))
}

fn push_matrix(report: &mut CheckReport, m: &LaurentMatrix) {
    for (e, x) in m.iter() {
        for (name, r) in ["a", "b", "c"].into_iter().zip(x.components()) {
            report.push_residual(format!("lambda^{e} {name}"), r.clone());
        }
    }
    if m.is_zero() {
        report.push_flag("all coefficients", true);
    }
}

/// `∂_n V^(m) − ∂_m V^(n) + [V^(m), V^(n)]` for two partner times of `Ψ_k`.
pub fn strong_zc_check(table: &PsiTable, n: u32, m: u32) -> Result<CheckReport> {
    let sn = zero_curvature(table, n)?;
    let sm = zero_curvature(table, m)?;
    let vn = lax_matrix(table, n)?;
    let vm = lax_matrix(table, m)?;
    let total = flow_matrix(&sn, &vm)?
        .sub(&flow_matrix(&sm, &vn)?)
        .add(&vm.commutator(&vn));
    let mut report = CheckReport::new(format!("strong_zc k={} n={n} m={m}", table.k()));
    push_matrix(&mut report, &total);
    Ok(report)
}

/// `∂_n ∂_m u = ∂_m ∂_n u` for every free field.
pub fn flows_commute(table: &PsiTable, n: u32, m: u32) -> Result<CheckReport> {
    let sn = zero_curvature(table, n)?;
    let sm = zero_curvature(table, m)?;
    let mut report = CheckReport::new(format!("flows_commute k={} n={n} m={m}", table.k()));
    for u in table.free_fields() {
        let nm = sn.apply_flow(sm.rule(u).expect("free field"))?;
        let mn = sm.apply_flow(sn.rule(u).expect("free field"))?;
        report.push_eq(u.to_string(), &nm, &mn);
    }
    Ok(report)
}

/// For `n < k`: `∂_n ℓ_p = Σ_{j=0}^{n} [ℓ_{n−j}, ℓ_{p+j}]` in the σ± components.
pub fn truncated_system_check(table: &PsiTable, n: u32) -> Result<CheckReport> {
    let system = zero_curvature(table, n)?;
    let mut report = CheckReport::new(format!("truncated_system k={} n={n}", table.k()));
    for p in 1..=table.k() as i64 {
        let mut sum = Sl2Poly::zero();
        for j in 0..=n as i64 {
            sum = &sum + &table.row(n as i64 - j)?.commutator(table.row(p + j)?);
        }
        report.push_eq(
            format!("b{p}"),
            system.rule(FieldVar::b(p as u32)).unwrap(),
            &sum.bp,
        );
        report.push_eq(
            format!("c{p}"),
            system.rule(FieldVar::c(p as u32)).unwrap(),
            &sum.cm,
        );
    }
    Ok(report)
}

/// `V^(n) = λ V^(n−1) + ℓ_n` and `V^(n)|_{λ^0} = ℓ_n` for `n = 1..nmax`.
pub fn generating_recurrence_check(table: &PsiTable, nmax: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("generating_recurrence k={}", table.k()));
    let mut prev = lax_matrix(table, 0)?;
    for n in 1..=nmax {
        let vn = lax_matrix(table, n)?;
        let row = table.row(n as i64)?;
        let rec = prev.shift(1).add(&LaurentMatrix::monomial(0, row.clone()));
        let mut sub = CheckReport::new(format!("n={n}"));
        push_matrix(&mut sub, &vn.sub(&rec));
        report.extend(sub);
        let c0 = vn.coeff(0)?;
        let ok = &c0 == row;
        report.push_flag(format!("n={n} constant term"), ok);
        prev = vn;
    }
    Ok(report)
}

fn take_field(rhs: &DiffPoly, field: FieldVar, coeff: i64) -> Result<DiffPoly> {
    let lead = DiffPoly::var(field).scale(&rat(coeff, 1));
    let rest = rhs - &lead;
    if rest.coeff(&crate::diffpoly::Monomial::var(field)) != rat(0, 1) {
        return Err(Error::EliminationFailure(format!(
            "`{field}` does not enter `{rhs}` with coefficient {coeff}"
        )));
    }
    Ok(rest)
}

/// Shows that the `(V_n^(n), V_n^(k))` and `(V_k^(n), V_k^(k))` Lax pairs give
/// the same equations for `b_1..b_n, c_1..c_n`. Returns the common system in
/// `t_n`-derivatives together with the itemized comparison.
pub fn dual_equivalence(n: u32, k: u32, depth: u32) -> Result<(PdeSystem, CheckReport)> {
    if !(1 <= n && n < k && k <= depth) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n < k <= depth, got n={n} k={k} depth={depth}"
        )));
    }
    let psi_n = build_psi(n, depth)?;
    let psi_k = build_psi(k, depth)?;
    let a = zero_curvature(&psi_n, k)?;
    let b = zero_curvature(&psi_k, n)?;
    let mut report = CheckReport::new(format!("dual_equivalence n={n} k={k}"));

    // b_j, c_j of Ψ_k as polynomials in the t_n model.
    let mut elim: BTreeMap<FieldVar, DiffPoly> = BTreeMap::new();
    for j in 1..=n {
        elim.insert(FieldVar::b(j), DiffPoly::b(j));
        elim.insert(FieldVar::c(j), DiffPoly::c(j));
    }
    for p in 1..=k - n {
        let (bn, cn) = (FieldVar::b(n + p), FieldVar::c(n + p));
        let rb = take_field(b.rule(FieldVar::b(p)).unwrap(), bn, 2)?;
        let rc = take_field(b.rule(FieldVar::c(p)).unwrap(), cn, -2)?;
        if !rb.is_derivative_free() || !rc.is_derivative_free() {
            return Err(Error::EliminationFailure(format!(
                "defining relation for {bn}, {cn} carries t_{k}-derivatives"
            )));
        }
        let known = |q: &DiffPoly| {
            q.vars()
                .iter()
                .all(|v| v.is_constant() || elim.contains_key(&v.base()))
        };
        if !known(&rb) || !known(&rc) {
            return Err(Error::EliminationFailure(format!(
                "defining relation for {bn}, {cn} refers to a field not yet eliminated"
            )));
        }
        let eb = (elim[&FieldVar::b(p)].derive() - rb.substitute(&elim)).scale(&rat(1, 2));
        let ec = (elim[&FieldVar::c(p)].derive() - rc.substitute(&elim)).scale(&rat(-1, 2));
        elim.insert(bn, eb);
        elim.insert(cn, ec);
    }
    for j in n + 1..=k {
        let row = psi_n.row(j as i64)?;
        report.push_eq(format!("eliminated b{j}"), &elim[&FieldVar::b(j)], &row.bp);
        report.push_eq(format!("eliminated c{j}"), &elim[&FieldVar::c(j)], &row.cm);
    }

    // ∂_n b_{k−n+m} = ∂_k b_m + Q  ⇒  ∂_k b_m = ∂_n b_{k−n+m} − Q
    for m in 1..=n {
        for (field, partner) in [
            (FieldVar::b(m), FieldVar::b(k - n + m)),
            (FieldVar::c(m), FieldVar::c(k - n + m)),
        ] {
            let rhs = b.rule(partner).unwrap();
            let q = rhs - &DiffPoly::var(field.with_dorder(1));
            if !q.is_derivative_free() {
                return Err(Error::EliminationFailure(format!(
                    "evolution of {partner} is not of the form {field}' + (derivative-free)"
                )));
            }
            let via_b = elim[&partner].derive() - q.substitute(&elim);
            report.push_eq(format!("d_t{k} {field}"), &via_b, a.rule(field).unwrap());
        }
    }
    Ok((a, report))
}
