//! LaTeX rendering. Derivatives are written against an explicit time label,
//! e.g. `\partial_{t_2}^{2} b_{1}`.

use std::fmt::Write;

use num_traits::{One, Signed};

use crate::diffpoly::{DiffPoly, FieldKind, FieldVar, Monomial, Rational};
use crate::loopalg::LaurentMatrix;
use crate::zerocurv::PdeSystem;

fn rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn base_name(v: FieldVar) -> String {
    match v.kind {
        FieldKind::B => format!("b_{{{}}}", v.index),
        FieldKind::C => format!("c_{{{}}}", v.index),
        FieldKind::Sym(n) | FieldKind::Param(n) => n.as_str().to_string(),
    }
}

pub fn field_var(v: FieldVar, time: u32) -> String {
    match v.dorder {
        0 => base_name(v),
        1 => format!("\\partial_{{t_{time}}} {}", base_name(v)),
        d => format!("\\partial_{{t_{time}}}^{{{d}}} {}", base_name(v)),
    }
}

fn monomial(m: &Monomial, time: u32) -> String {
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|&(v, e)| {
            let s = field_var(v, time);
            match (e, v.dorder) {
                (1, _) => s,
                (e, 0) => format!("{s}^{{{e}}}"),
                (e, _) => format!("\\left({s}\\right)^{{{e}}}"),
            }
        })
        .collect();
    parts.join(" ")
}

pub fn diffpoly(p: &DiffPoly, time: u32) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let abs = c.abs();
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&rational(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial(m, time));
        } else {
            write!(out, "{} {}", rational(&abs), monomial(m, time)).unwrap();
        }
    }
    out
}

fn lambda_power(e: i32) -> String {
    match e {
        0 => String::new(),
        1 => "\\lambda".into(),
        e => format!("\\lambda^{{{e}}}"),
    }
}

/// Laurent polynomial in `λ` with the given coefficients, highest power first.
fn lambda_poly(coeffs: &[(i32, DiffPoly)], time: u32) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().rev().filter(|(_, c)| !c.is_zero()) {
        let lam = lambda_power(*e);
        let neg = c.len() == 1 && c.terms().next().unwrap().1.is_negative();
        let body = if neg { -c } else { c.clone() };
        let body_tex = diffpoly(&body, time);
        let constant = lam.is_empty();
        let term = if constant {
            body_tex
        } else if body == DiffPoly::one() {
            lam
        } else if body.len() == 1 {
            format!("{body_tex} {lam}")
        } else {
            format!("\\left({body_tex}\\right) {lam}")
        };
        // a multi-term constant coefficient carries its own leading sign
        let (neg, term) = match term.strip_prefix('-') {
            Some(rest) if !neg && constant => (true, rest.to_string()),
            _ => (neg, term),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `\begin{pmatrix} α & β \\ γ & −α \end{pmatrix}`.
pub fn lax_matrix(v: &LaurentMatrix, time: u32) -> String {
    let collect = |pick: fn(&crate::loopalg::Sl2Poly) -> DiffPoly| -> Vec<(i32, DiffPoly)> {
        v.iter().map(|(e, x)| (e, pick(x))).collect()
    };
    let alpha = collect(|x| x.a.clone());
    let beta = collect(|x| x.bp.clone());
    let gamma = collect(|x| x.cm.clone());
    let minus: Vec<(i32, DiffPoly)> = alpha.iter().map(|(e, c)| (*e, -c)).collect();
    let mut out = String::from("\\begin{pmatrix}\n");
    writeln!(
        out,
        " {} & {} \\\\",
        lambda_poly(&alpha, time),
        lambda_poly(&beta, time)
    )
    .unwrap();
    writeln!(
        out,
        " {} & {}",
        lambda_poly(&gamma, time),
        lambda_poly(&minus, time)
    )
    .unwrap();
    out.push_str("\\end{pmatrix}");
    out
}

/// One `aligned` row per rule; `zero_form` writes `∂_n u − rhs = 0`.
pub fn pde_system(s: &PdeSystem, zero_form: bool) -> String {
    let mut out = String::from("\\begin{aligned}\n");
    let rules: Vec<_> = s.all_rules().collect();
    for (i, r) in rules.iter().enumerate() {
        let lhs = format!("\\partial_{{t_{}}} {}", s.n, base_name(r.field));
        let line = if zero_form {
            let rhs = diffpoly(&-&r.rhs, s.k);
            let joined = if let Some(rest) = rhs.strip_prefix('-') {
                format!("{lhs} - {rest}")
            } else if rhs == "0" {
                lhs
            } else {
                format!("{lhs} + {rhs}")
            };
            format!("&{joined} = 0")
        } else {
            format!("{lhs} &= {}", diffpoly(&r.rhs, s.k))
        };
        out.push_str(&line);
        if i + 1 < rules.len() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{aligned}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnr::{build_psi, lax_matrix as lax};

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    #[test]
    fn polys() {
        assert_eq!(
            diffpoly(&p("1/2*b1'' - b1^2*c1"), 1),
            "\\frac{1}{2} \\partial_{t_1}^{2} b_{1} - b_{1}^{2} c_{1}"
        );
        assert_eq!(
            diffpoly(&p("b1'^2"), 2),
            "\\left(\\partial_{t_2} b_{1}\\right)^{2}"
        );
        assert_eq!(diffpoly(&DiffPoly::zero(), 1), "0");
    }

    #[test]
    fn matrix_layout() {
        let t = build_psi(1, 2).unwrap();
        let tex = lax_matrix(&lax(&t, 2).unwrap(), 1);
        assert_eq!(
            tex,
            "\\begin{pmatrix}\n \\lambda^{2} - \\frac{1}{2} b_{1} c_{1} & b_{1} \\lambda + \\frac{1}{2} \\partial_{t_1} b_{1} \\\\\n c_{1} \\lambda - \\frac{1}{2} \\partial_{t_1} c_{1} & -\\lambda^{2} + \\frac{1}{2} b_{1} c_{1}\n\\end{pmatrix}"
        );
    }

    #[test]
    fn negative_constant_coefficient_joins_with_minus() {
        let t = build_psi(2, 4).unwrap();
        let tex = lax_matrix(&lax(&t, 4).unwrap(), 2);
        assert!(!tex.contains("+ -"), "{tex}");
        assert!(
            tex.contains(r"\lambda - \frac{1}{2} \partial_{t_2} c_{2}"),
            "{tex}"
        );
    }
}
