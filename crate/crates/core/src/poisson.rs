//! Ultralocal brackets on the free fields of `Ψ_k`, the linear r-matrix
//! algebra of `V^(k)`, and the Hamiltonians extracted from the monodromy
//! expansion `T = (1 + W) e^Z (1 + W)^{-1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffpoly::{int, rat, DiffPoly, FieldVar};
use crate::error::{Error, Result};
use crate::fnr::{lax_matrix, PsiTable};
use crate::loopalg::{Gl2, LaurentMatrix, Sl2Poly};
use crate::report::CheckReport;
use crate::zerocurv::{zero_curvature, PdeRule, PdeSystem};

/// Prefactor of `{b_m, c_n} = ν·2·a_{m+n−k−1}`, fixed by `{b_1, c_1} = 4` at `k = 1`.
pub const NU: i64 = 2;

/// Sklyanin constant: `(λ − μ){V(λ) ⊗, V(μ)} = κ [t, V(λ) ⊗ 1 + 1 ⊗ V(μ)]`.
pub const KAPPA: i64 = -2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: FieldVar,
    pub right: FieldVar,
    pub value: DiffPoly,
}

/// `{u(t), v(τ)} = P[u, v] δ(t − τ)` on the generators `b_1..b_k, c_1..c_k`.
///
/// Only the nonzero entries with `u < v` are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTable {
    pub k: u32,
    pub entries: Vec<BracketEntry>,
}

impl BracketTable {
    pub fn get(&self, u: FieldVar, v: FieldVar) -> DiffPoly {
        let (x, y, sign) = if u <= v { (u, v, 1) } else { (v, u, -1) };
        self.entries
            .iter()
            .find(|e| e.left == x && e.right == y)
            .map(|e| e.value.scale(&int(sign)))
            .unwrap_or_default()
    }

    pub fn generators(&self) -> Vec<FieldVar> {
        (1..=self.k)
            .flat_map(|j| [FieldVar::b(j), FieldVar::c(j)])
            .collect()
    }

    /// `{p, q}` for derivative-free `p`, `q` (Leibniz over the table).
    pub fn bracket(&self, p: &DiffPoly, q: &DiffPoly) -> DiffPoly {
        let gens = self.generators();
        let mut out = DiffPoly::zero();
        for &u in &gens {
            let pu = p.partial(u);
            if pu.is_zero() {
                continue;
            }
            for &v in &gens {
                let puv = self.get(u, v);
                if puv.is_zero() {
                    continue;
                }
                let qv = q.partial(v);
                if !qv.is_zero() {
                    out += &pu * &qv * puv;
                }
            }
        }
        out
    }

    /// `∫ Σ P[u,v] (δF/δu)(δG/δv)` as a density.
    pub fn functional_bracket(&self, f: &DiffPoly, g: &DiffPoly) -> DiffPoly {
        let gens = self.generators();
        let mut out = DiffPoly::zero();
        for &u in &gens {
            let fu = f.euler_derivative(u);
            if fu.is_zero() {
                continue;
            }
            for &v in &gens {
                let puv = self.get(u, v);
                if !puv.is_zero() {
                    out += &fu * &g.euler_derivative(v) * puv;
                }
            }
        }
        out
    }
}

/// `a_j` of `Ψ_k` with `a_0 = 1` and `a_j = 0` for `j < 0`.
fn a_index(table: &PsiTable, j: i64) -> Result<DiffPoly> {
    match j {
        j if j < 0 => Ok(DiffPoly::zero()),
        0 => Ok(DiffPoly::one()),
        j => Ok(table.row(j)?.a.clone()),
    }
}

pub fn field_bracket_table(table: &PsiTable) -> Result<BracketTable> {
    let k = table.k();
    let mut entries = Vec::new();
    for m in 1..=k {
        for n in 1..=k {
            let j = m as i64 + n as i64 - k as i64 - 1;
            let value = a_index(table, j)?.scale(&int(2 * NU));
            if !value.is_zero() {
                entries.push(BracketEntry {
                    left: FieldVar::b(m),
                    right: FieldVar::c(n),
                    value,
                });
            }
        }
    }
    entries.sort_by_key(|e| (e.left, e.right));
    Ok(BracketTable { k, entries })
}

/// Antisymmetry, ultralocality, and the Jacobi identity of the bivector.
pub fn jacobi_check(bt: &BracketTable) -> CheckReport {
    let mut report = CheckReport::new(format!("bracket_bivector k={}", bt.k));
    let gens = bt.generators();
    for &u in &gens {
        for &v in &gens {
            let s = bt.get(u, v) + bt.get(v, u);
            report.push_residual(format!("antisymmetry {u},{v}"), s);
        }
    }
    for e in &bt.entries {
        report.push_flag(
            format!("ultralocal {},{}", e.left, e.right),
            e.value.is_derivative_free(),
        );
    }
    for (i, &u) in gens.iter().enumerate() {
        for (j, &v) in gens.iter().enumerate().skip(i + 1) {
            for &z in gens.iter().skip(j + 1) {
                let mut sum = DiffPoly::zero();
                for (x, y, w) in [(u, v, z), (v, z, u), (z, u, v)] {
                    for &g in &gens {
                        let pxg = bt.get(x, g);
                        if !pxg.is_zero() {
                            sum += pxg * bt.get(y, w).partial(g);
                        }
                    }
                }
                report.push_residual(format!("jacobi {u},{v},{z}"), sum);
            }
        }
    }
    report
}

/// `{b_m, a_n} = −ν b_{m+n−k−1}` and `{c_m, a_n} = ν c_{m+n−k−1}`, with
/// `b_j = c_j = 0` for `j ≤ 0`.
pub fn leibniz_consistency_check(table: &PsiTable) -> Result<CheckReport> {
    let k = table.k();
    let bt = field_bracket_table(table)?;
    let mut report = CheckReport::new(format!("leibniz_consistency k={k}"));
    for m in 1..=k {
        for n in 1..=k {
            let an = &table.row(n as i64)?.a;
            let idx = m as i64 + n as i64 - k as i64 - 1;
            let row = table.row(idx)?;
            let (bj, cj) = if idx <= 0 {
                (DiffPoly::zero(), DiffPoly::zero())
            } else {
                (row.bp.clone(), row.cm.clone())
            };
            let lb = bt.bracket(&DiffPoly::b(m), an);
            report.push_eq(format!("b{m},a{n}"), &lb, &bj.scale(&int(-NU)));
            let lc = bt.bracket(&DiffPoly::c(m), an);
            report.push_eq(format!("c{m},a{n}"), &lc, &cj.scale(&int(NU)));
        }
    }
    Ok(report)
}

/// Polynomial in `λ, μ` with `sl2 ⊗ sl2` component coefficients:
/// `(i, j) ↦ 3×3` array over the basis `(σ3, σ+, σ−)`.
pub type TensorPoly = BTreeMap<(u32, u32), [[DiffPoly; 3]; 3]>;

fn tensor_add(out: &mut TensorPoly, key: (u32, u32), i: usize, j: usize, v: DiffPoly) {
    if v.is_zero() {
        return;
    }
    let slot = out.entry(key).or_default();
    slot[i][j] += v;
}

fn basis() -> [Sl2Poly; 3] {
    [
        Sl2Poly::sigma3(),
        Sl2Poly::sigma_plus(),
        Sl2Poly::sigma_minus(),
    ]
}

/// Casimir `t = ½ σ3⊗σ3 + σ+⊗σ− + σ−⊗σ+` in components.
fn casimir_tensor() -> [[DiffPoly; 3]; 3] {
    let mut t: [[DiffPoly; 3]; 3] = Default::default();
    t[0][0] = DiffPoly::constant(rat(1, 2));
    t[1][2] = DiffPoly::one();
    t[2][1] = DiffPoly::one();
    t
}

/// Residual `(λ − μ){V_1(λ), V_2(μ)} − κ[t, V_1(λ) + V_2(μ)]` for an exact
/// polynomial Lax matrix `v` in non-negative powers of `λ`.
pub fn sklyanin_residuals(v: &LaurentMatrix, bt: &BracketTable) -> Result<TensorPoly> {
    let mut coeffs = Vec::new();
    for (e, x) in v.iter() {
        if e < 0 {
            return Err(Error::InvalidArgument(
                "Lax matrix must be polynomial in lambda".into(),
            ));
        }
        coeffs.push((e as u32, x));
    }
    let mut out = TensorPoly::new();

    // (λ − μ) · LHS
    for &(i, x) in &coeffs {
        for &(j, y) in &coeffs {
            for (p, xp) in x.components().into_iter().enumerate() {
                for (q, yq) in y.components().into_iter().enumerate() {
                    let br = bt.bracket(xp, yq);
                    if br.is_zero() {
                        continue;
                    }
                    tensor_add(&mut out, (i + 1, j), p, q, br.clone());
                    tensor_add(&mut out, (i, j + 1), p, q, -br);
                }
            }
        }
    }

    // − κ [t, V(λ) ⊗ 1 + 1 ⊗ V(μ)]
    let t = casimir_tensor();
    let e = basis();
    let kappa = int(KAPPA);
    for &(i, x) in &coeffs {
        for alpha in 0..3 {
            for beta in 0..3 {
                if t[alpha][beta].is_zero() {
                    continue;
                }
                let tc = t[alpha][beta].scale(&kappa);
                // [e_α, X] ⊗ e_β at λ^i μ^0
                let left = e[alpha].commutator(x);
                for (p, val) in left.components().into_iter().enumerate() {
                    tensor_add(&mut out, (i, 0), p, beta, -(val * &tc));
                }
                // e_α ⊗ [e_β, X] at λ^0 μ^i
                let right = e[beta].commutator(x);
                for (q, val) in right.components().into_iter().enumerate() {
                    tensor_add(&mut out, (0, i), alpha, q, -(val * &tc));
                }
            }
        }
    }
    out.retain(|_, m| m.iter().flatten().any(|p| !p.is_zero()));
    Ok(out)
}

const COMPONENT: [&str; 3] = ["s3", "s+", "s-"];

pub fn sklyanin_check(table: &PsiTable) -> Result<CheckReport> {
    let k = table.k();
    let bt = field_bracket_table(table)?;
    let v = lax_matrix(table, k)?;
    let residuals = sklyanin_residuals(&v, &bt)?;
    let mut report = CheckReport::new(format!("sklyanin k={k}"));
    for ((i, j), m) in &residuals {
        for (p, row) in m.iter().enumerate() {
            for (q, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    report.push_residual(
                        format!("lambda^{i} mu^{j} {}x{}", COMPONENT[p], COMPONENT[q]),
                        r.clone(),
                    );
                }
            }
        }
    }
    if residuals.is_empty() {
        report.push_flag("all lambda^i mu^j coefficients", true);
    }
    Ok(report)
}

/// Off-diagonal `W = Σ w_j λ^{-j}` solving `∂W = O + [D, W] − W O W` for
/// `V^(k) = D + O`, plus the coefficients of `½Tr(σ3 O W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WZExpansion {
    pub k: u32,
    pub depth: u32,
    /// `w[j − 1] = β_j σ+ + γ_j σ−`.
    pub w: Vec<Sl2Poly>,
    /// `zdot_densities[n − 1]` is the `λ^{-n}` coefficient, for every `n`
    /// whose contributions are all determined by `w`.
    pub zdot_densities: Vec<DiffPoly>,
}

impl WZExpansion {
    pub fn w(&self, j: usize) -> Result<&Sl2Poly> {
        self.w.get(j.wrapping_sub(1)).ok_or(Error::DepthExhausted {
            exponent: -(j as i64),
            known_from: -(self.depth as i64),
        })
    }
}

pub fn wz_expand(table: &PsiTable, depth: u32) -> Result<WZExpansion> {
    let k = table.k() as usize;
    let mut a = Vec::with_capacity(k + 1);
    for m in 0..=k {
        a.push(table.row(m as i64)?.clone());
    }
    let mut w: Vec<Sl2Poly> = Vec::with_capacity(depth as usize);
    for j in 1..=depth as usize {
        let (mut xp, mut xm) = if j <= k {
            (a[j].bp.clone(), a[j].cm.clone())
        } else {
            (DiffPoly::zero(), DiffPoly::zero())
        };
        // a_m [σ3, w_{j−m}] = 2 a_m β σ+ − 2 a_m γ σ−
        for m in 1..=k.min(j - 1) {
            let wj = &w[j - m - 1];
            xp += (&a[m].a * &wj.bp).scale(&int(2));
            xm -= (&a[m].a * &wj.cm).scale(&int(2));
        }
        // w_i O_m w_l with i + m + l = j
        for (m, am) in a
            .iter()
            .enumerate()
            .take(k.min(j.saturating_sub(2)) + 1)
            .skip(1)
        {
            for i in 1..j - m {
                let l = j - m - i;
                let (wi, wl) = (&w[i - 1], &w[l - 1]);
                xp -= &wi.bp * &am.cm * &wl.bp;
                xm -= &wi.cm * &am.bp * &wl.cm;
            }
        }
        if j > k {
            let dw = w[j - k - 1].derive();
            xp -= dw.bp;
            xm -= dw.cm;
        }
        w.push(Sl2Poly::new(
            DiffPoly::zero(),
            xp.scale(&rat(-1, 2)),
            xm.scale(&rat(1, 2)),
        ));
    }
    let mut zdot_densities = Vec::new();
    let mut n = 1usize;
    while n + k <= depth as usize + 1 {
        let mut d = DiffPoly::zero();
        for m in 1..=k {
            let wj = &w[n + k - m - 1];
            d += &a[m].bp * &wj.cm - &a[m].cm * &wj.bp;
        }
        zdot_densities.push(d.scale(&rat(1, 2)));
        n += 1;
    }
    Ok(WZExpansion {
        k: table.k(),
        depth,
        w,
        zdot_densities,
    })
}

/// Density of `H_k^(n)`: the `λ^{-(n+1)}` coefficient of `½Tr(σ3 O W)`.
pub fn hamiltonian_density(table: &PsiTable, n: u32) -> Result<DiffPoly> {
    let wz = wz_expand(table, n + table.k())?;
    Ok(wz.zdot_densities[n as usize].clone())
}

/// `∂_n u = Σ_v P[u, v] δH/δv` with `H = H_k^(n)`.
pub fn flow_from_hamiltonian(table: &PsiTable, n: u32) -> Result<PdeSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let k = table.k();
    let bt = field_bracket_table(table)?;
    let h = hamiltonian_density(table, n)?;
    let grads: BTreeMap<FieldVar, DiffPoly> = bt
        .generators()
        .into_iter()
        .map(|v| (v, h.euler_derivative(v)))
        .collect();
    let mut evolution = Vec::new();
    let mut auxiliary = Vec::new();
    for u in bt.generators() {
        let mut rhs = DiffPoly::zero();
        for (&v, g) in &grads {
            let puv = bt.get(u, v);
            if !puv.is_zero() {
                rhs += puv * g;
            }
        }
        let target = if n < k && u.index <= k - n {
            &mut auxiliary
        } else {
            &mut evolution
        };
        target.push(PdeRule { field: u, rhs });
    }
    Ok(PdeSystem {
        k,
        n,
        evolution,
        auxiliary,
    })
}

pub fn flow_matches_zc(table: &PsiTable, n: u32) -> Result<CheckReport> {
    let ham = flow_from_hamiltonian(table, n)?;
    let zc = zero_curvature(table, n)?;
    let mut report = CheckReport::new(format!("flow_matches_zc k={} n={n}", table.k()));
    for r in zc.all_rules() {
        let h = ham.rule(r.field).expect("same generators");
        report.push_eq(r.field.to_string(), h, &r.rhs);
    }
    Ok(report)
}

/// `{H_k^(n), H_k^(m)}` is a total derivative.
pub fn hamiltonians_commute(table: &PsiTable, n: u32, m: u32) -> Result<CheckReport> {
    let bt = field_bracket_table(table)?;
    let hn = hamiltonian_density(table, n)?;
    let hm = hamiltonian_density(table, m)?;
    let b = bt.functional_bracket(&hn, &hm);
    let mut report = CheckReport::new(format!("hamiltonians_commute k={} n={n} m={m}", table.k()));
    report.push_flag(
        "bracket is a total derivative",
        b.is_variationally_trivial(),
    );
    Ok(report)
}

/// `(1 + W) σ3 (1 + W)^{-1} = Ψ_k(L)` through `λ^{-depth}`.
pub fn resolvent_check(table: &PsiTable, depth: u32) -> Result<CheckReport> {
    let wz = wz_expand(table, depth)?;
    let d = depth as usize;
    let g: Vec<Gl2> = std::iter::once(Gl2::identity())
        .chain(wz.w.iter().cloned().map(Gl2::from_sl2))
        .collect();
    let mut inv: Vec<Gl2> = vec![Gl2::identity()];
    for j in 1..=d {
        let mut s = Gl2::default();
        for i in 1..=j {
            s = s.add(&g[i].mul(&inv[j - i]));
        }
        inv.push(s.neg());
    }
    let s3 = Gl2::from_sl2(Sl2Poly::sigma3());
    let mut report = CheckReport::new(format!("resolvent k={} depth={depth}", table.k()));
    for j in 0..=d {
        let mut r = Gl2::default();
        for i in 0..=j {
            r = r.add(&g[i].mul(&s3).mul(&inv[j - i]));
        }
        let row = table.row(j as i64)?;
        report.push_residual(format!("lambda^-{j} trace"), r.scalar);
        for (name, (x, y)) in ["a", "b", "c"]
            .into_iter()
            .zip(r.traceless.components().into_iter().zip(row.components()))
        {
            report.push_eq(format!("lambda^-{j} {name}"), x, y);
        }
    }
    Ok(report)
}
