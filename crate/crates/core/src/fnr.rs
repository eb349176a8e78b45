//! The constraint map `Ψ_k`: solving the FNR flow `∂_k L = [L^(k), L]` for a
//! fixed time `t_k`.
//!
//! With `ℓ_0 = σ3`, the fields `b_j, c_j` for `j ≤ k` stay free; the
//! off-diagonal entries of `ℓ_{p+k}` follow from the σ± components of
//! `∂_k ℓ_p = Σ_{j=0}^{k} [ℓ_j, ℓ_{p+k−j}]` and the diagonal entries from
//! requiring `Tr L² = 2` (all Casimirs fixed to zero, so no integration
//! constants appear). The σ3 component of the flow is left as an independent
//! consistency check, see [`diag_consistency`].

use serde::{Deserialize, Serialize};

use crate::diffpoly::{rat, DiffPoly, FieldVar};
use crate::error::{Error, Result};
use crate::loopalg::{LaurentMatrix, Sl2Poly};
use crate::report::CheckReport;

/// Rows `ℓ_0..ℓ_depth` of `Ψ_k(L)`, every entry a differential polynomial in
/// `b_1..b_k, c_1..c_k` and their `t_k`-derivatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiTable {
    k: u32,
    depth: u32,
    rows: Vec<Sl2Poly>,
}

impl PsiTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `ℓ_j`; rows with negative index are zero.
    pub fn row(&self, j: i64) -> Result<&Sl2Poly> {
        static ZERO: std::sync::OnceLock<Sl2Poly> = std::sync::OnceLock::new();
        if j < 0 {
            return Ok(ZERO.get_or_init(Sl2Poly::zero));
        }
        self.rows.get(j as usize).ok_or(Error::DepthExhausted {
            exponent: -j,
            known_from: -(self.depth as i64),
        })
    }

    pub fn rows(&self) -> &[Sl2Poly] {
        &self.rows
    }

    /// The free fields `b_1, c_1, .., b_k, c_k`.
    pub fn free_fields(&self) -> Vec<FieldVar> {
        (1..=self.k)
            .flat_map(|j| [FieldVar::b(j), FieldVar::c(j)])
            .collect()
    }

    /// `Ψ_k(L) = Σ ℓ_j λ^{-j}` as a series known to `λ^{-depth}`.
    pub fn series(&self) -> LaurentMatrix {
        LaurentMatrix::truncated(
            self.rows
                .iter()
                .enumerate()
                .map(|(j, x)| (-(j as i32), x.clone())),
            self.depth,
        )
    }
}

/// `a_m` from the vanishing of the `λ^{-m}` coefficient of `Tr L²`, given rows
/// `0..m` and `b_m, c_m`:
/// `a_m = −¼ Σ_{i=1}^{m−1} (2 a_i a_{m−i} + b_i c_{m−i} + b_{m−i} c_i)`.
pub fn casimir_closure_a(rows: &[Sl2Poly], m: usize) -> DiffPoly {
    let mut sum = DiffPoly::zero();
    for i in 1..m {
        let (x, y) = (&rows[i], &rows[m - i]);
        sum += x.trace_with(y);
    }
    sum.scale(&rat(-1, 4))
}

/// `(b_{p+k}, c_{p+k})` from the σ± components of
/// `∂_k ℓ_p = Σ_{j=0}^{k} [ℓ_j, ℓ_{p+k−j}]`, where the `j = 0` term is
/// `[σ3, ℓ_{p+k}] = 2 b_{p+k} σ+ − 2 c_{p+k} σ−`.
pub fn extend_offdiagonal(rows: &[Sl2Poly], k: usize, p: usize) -> (DiffPoly, DiffPoly) {
    let mut rest = Sl2Poly::zero();
    for j in 1..=k {
        rest = &rest + &rows[j].commutator(&rows[p + k - j]);
    }
    let dp = rows[p].derive();
    let b = (&dp.bp - &rest.bp).scale(&rat(1, 2));
    let c = (&dp.cm - &rest.cm).scale(&rat(-1, 2));
    (b, c)
}

pub fn build_psi(k: u32, depth: u32) -> Result<PsiTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if depth < k {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} must be >= k = {k}"
        )));
    }
    let ku = k as usize;
    let mut rows: Vec<Sl2Poly> = Vec::with_capacity(depth as usize + 1);
    rows.push(Sl2Poly::sigma3());
    for j in 1..=depth as usize {
        let (b, c) = if j <= ku {
            (DiffPoly::b(j as u32), DiffPoly::c(j as u32))
        } else {
            extend_offdiagonal(&rows, ku, j - ku)
        };
        rows.push(Sl2Poly::new(DiffPoly::zero(), b, c));
        rows[j].a = casimir_closure_a(&rows, j);
    }
    Ok(PsiTable { k, depth, rows })
}

/// Checks the σ3 component of the flow,
/// `∂_k a_p = Σ_{j=0}^{k} (b_j c_{p+k−j} − c_j b_{p+k−j})`, for every `p` with
/// `p + k ≤ depth`.
pub fn diag_consistency(table: &PsiTable) -> CheckReport {
    let k = table.k as usize;
    let rows = &table.rows;
    let mut report = CheckReport::new(format!("diag_consistency k={}", table.k));
    for p in 1..=(table.depth as usize).saturating_sub(k) {
        let mut rhs = DiffPoly::zero();
        for j in 0..=k {
            rhs += rows[j].commutator(&rows[p + k - j]).a;
        }
        report.push_eq(format!("p={p}"), &rows[p].a.derive(), &rhs);
    }
    report
}

/// `Tr(Ψ_k L)² − 2`, coefficient by coefficient down to `λ^{-depth}`.
pub fn squared_trace_check(table: &PsiTable) -> CheckReport {
    let mut report = CheckReport::new(format!("squared_trace k={}", table.k));
    let rows = &table.rows;
    for m in 1..=table.depth as usize {
        let mut coeff = DiffPoly::zero();
        for i in 0..=m {
            coeff += rows[i].trace_with(&rows[m - i]);
        }
        report.push_residual(format!("lambda^-{m}"), coeff);
    }
    report
}

/// `V_k^(n) = P_+(λ^n Ψ_k(L)) = Σ_{m=0}^{n} ℓ_m λ^{n−m}`.
pub fn lax_matrix(table: &PsiTable, n: u32) -> Result<LaurentMatrix> {
    if n > table.depth {
        return Err(Error::DepthExhausted {
            exponent: -(n as i64),
            known_from: -(table.depth as i64),
        });
    }
    Ok(LaurentMatrix::from_terms((0..=n).map(|m| {
        (n as i32 - m as i32, table.rows[m as usize].clone())
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopalg::Projection;

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    fn row(t: &PsiTable, j: usize) -> (String, String, String) {
        let r = &t.rows()[j];
        (r.a.to_string(), r.bp.to_string(), r.cm.to_string())
    }

    #[test]
    fn closure_examples() {
        let t1 = build_psi(1, 2).unwrap();
        assert!(t1.rows()[1].a.is_zero());
        assert_eq!(t1.rows()[2].a, p("-1/2*b1*c1"));
        let t2 = build_psi(2, 4).unwrap();
        assert_eq!(t2.rows()[3].a, p("-1/2*b2*c1 - 1/2*b1*c2"));
        // ⅛(2 b1 ∂c1 − 2 ∂b1 c1 − 4 b2 c2 − b1² c1²)
        let expected = p("2*b1*c1' - 2*b1'*c1 - 4*b2*c2 - b1^2*c1^2").scale(&rat(1, 8));
        assert_eq!(t2.rows()[4].a, expected);
    }

    #[test]
    fn offdiagonal_examples() {
        let t1 = build_psi(1, 2).unwrap();
        assert_eq!(row(&t1, 2).1, "1/2*b1'");
        assert_eq!(row(&t1, 2).2, "-1/2*c1'");
        let t2 = build_psi(2, 4).unwrap();
        assert_eq!(t2.rows()[3].bp, p("1/2*b1'"));
        assert_eq!(t2.rows()[4].bp, p("1/2*b2' - 1/2*c2*b1^2 - 1/2*b2*c1*b1"));
        assert_eq!(t2.rows()[4].cm, p("-1/2*c2' - 1/2*b2*c1^2 - 1/2*b1*c2*c1"));
    }

    #[test]
    fn row_zero_and_free_rows() {
        for k in 1..=4 {
            let t = build_psi(k, k).unwrap();
            assert_eq!(t.rows()[0], Sl2Poly::sigma3());
            for j in 1..=k as usize {
                assert_eq!(t.rows()[j].bp, DiffPoly::b(j as u32));
                assert_eq!(t.rows()[j].cm, DiffPoly::c(j as u32));
                assert!(t.rows()[j].a.is_derivative_free());
            }
        }
    }

    #[test]
    fn higher_rows_carry_derivatives() {
        let t = build_psi(2, 5).unwrap();
        assert!(!t.rows()[3].bp.is_derivative_free());
        assert!(!t.rows()[4].a.is_derivative_free());
    }

    #[test]
    fn diag_consistency_small() {
        let t1 = build_psi(1, 3).unwrap();
        let r = diag_consistency(&t1);
        assert_eq!(r.entries.len(), 2);
        assert!(r.all_passed(), "{r:?}");
        assert!(diag_consistency(&build_psi(2, 4).unwrap()).all_passed());
    }

    #[test]
    fn invalid_arguments() {
        assert!(build_psi(0, 3).is_err());
        assert!(build_psi(3, 2).is_err());
    }

    #[test]
    fn lax_matrices() {
        let t1 = build_psi(1, 3).unwrap();
        let v1 = lax_matrix(&t1, 1).unwrap();
        assert_eq!(
            v1,
            LaurentMatrix::from_terms([
                (1, Sl2Poly::sigma3()),
                (0, Sl2Poly::new(DiffPoly::zero(), p("b1"), p("c1"))),
            ])
        );
        assert_eq!(
            lax_matrix(&t1, 0).unwrap(),
            LaurentMatrix::monomial(0, Sl2Poly::sigma3())
        );
        assert!(matches!(
            lax_matrix(&t1, 4),
            Err(Error::DepthExhausted { .. })
        ));
        // V^(n) = P_+(λ^n Ψ(L))
        let series = t1.series();
        assert_eq!(
            series.shift(3).project(Projection::Plus),
            lax_matrix(&t1, 3).unwrap()
        );
    }

    #[test]
    fn table_row_accessor() {
        let t = build_psi(2, 3).unwrap();
        assert!(t.row(-1).unwrap().is_zero());
        assert!(t.row(4).is_err());
        assert_eq!(t.free_fields().len(), 4);
    }
}
