//! Text, LaTeX and JSON renderings. Every renderer is a pure function of its
//! input, so output is byte-for-byte reproducible.

use std::fmt::Write;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::ValueEnum;
use fnrlax_core::poisson::BracketTable;
use fnrlax_core::{latex, CheckReport, DiffPoly, LaurentMatrix, PdeSystem, PsiTable};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => bail!("unknown format `{s}` (text, latex, json)"),
        }
    }
}

fn tt(s: &str) -> String {
    s.replace('_', "\\_")
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `lhs` followed by `+ p` / `- p`, for the `... = 0` form.
fn join_signed(lhs: &str, p: &DiffPoly) -> String {
    let s = p.to_string();
    if p.is_zero() {
        lhs.to_string()
    } else if let Some(rest) = s.strip_prefix('-') {
        format!("{lhs} - {rest}")
    } else {
        format!("{lhs} + {s}")
    }
}

pub fn psi(table: &PsiTable, format: Format) -> String {
    match format {
        Format::Json => json(table),
        Format::Text => {
            let mut out = format!(
                "# Psi_{}: rows l_0..l_{} (derivatives in t_{})\n",
                table.k(),
                table.depth(),
                table.k()
            );
            for (j, r) in table.rows().iter().enumerate() {
                writeln!(out, "l_{j}.a = {}", r.a).unwrap();
                writeln!(out, "l_{j}.b = {}", r.bp).unwrap();
                writeln!(out, "l_{j}.c = {}", r.cm).unwrap();
            }
            out
        }
        Format::Latex => {
            let k = table.k();
            let mut out = String::from("\\begin{aligned}\n");
            let n = table.rows().len();
            for (j, r) in table.rows().iter().enumerate() {
                let m = LaurentMatrix::monomial(0, r.clone());
                let body = latex::lax_matrix(&m, k).replace('\n', " ");
                write!(out, "\\ell_{{{j}}} &= {body}").unwrap();
                out.push_str(if j + 1 < n { " \\\\\n" } else { "\n" });
            }
            out.push_str("\\end{aligned}\n");
            out
        }
    }
}

pub fn lax(v: &LaurentMatrix, k: u32, n: u32, format: Format) -> String {
    match format {
        Format::Json => json(v),
        Format::Text => {
            let mut out = format!("# V_{k}^({n}) (derivatives in t_{k})\n");
            for (e, x) in v.iter().rev() {
                writeln!(out, "lambda^{e}: a = {}; b = {}; c = {}", x.a, x.bp, x.cm).unwrap();
            }
            out
        }
        Format::Latex => format!("V_{{{k}}}^{{({n})}} = {}\n", latex::lax_matrix(v, k)),
    }
}

pub fn system(s: &PdeSystem, zero_form: bool, format: Format) -> String {
    match format {
        Format::Json => {
            if zero_form {
                #[derive(Serialize)]
                struct Row {
                    field: String,
                    expression: DiffPoly,
                }
                #[derive(Serialize)]
                struct ZeroForm {
                    k: u32,
                    n: u32,
                    zero_form: Vec<Row>,
                }
                let rows = s
                    .zero_form()
                    .into_iter()
                    .map(|(f, p)| Row {
                        field: f.to_string(),
                        expression: p,
                    })
                    .collect();
                json(&ZeroForm {
                    k: s.k,
                    n: s.n,
                    zero_form: rows,
                })
            } else {
                json(s)
            }
        }
        Format::Latex => format!("{}\n", latex::pde_system(s, zero_form)),
        Format::Text => {
            let mut out = format!(
                "# t_{} flow on the phase space of Psi_{} (derivatives in t_{})\n",
                s.n, s.k, s.k
            );
            let line = |out: &mut String, r: &fnrlax_core::PdeRule| {
                let lhs = format!("d_t{} {}", s.n, r.field);
                if zero_form {
                    writeln!(out, "{} = 0", join_signed(&lhs, &-&r.rhs)).unwrap();
                } else {
                    writeln!(out, "{lhs} = {}", r.rhs).unwrap();
                }
            };
            if !s.auxiliary.is_empty() {
                out.push_str("# auxiliary\n");
                for r in &s.auxiliary {
                    line(&mut out, r);
                }
                out.push_str("# evolution\n");
            }
            for r in &s.evolution {
                line(&mut out, r);
            }
            out
        }
    }
}

pub fn density(k: u32, n: u32, h: &DiffPoly, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Density<'a> {
                k: u32,
                n: u32,
                density: &'a DiffPoly,
            }
            json(&Density { k, n, density: h })
        }
        Format::Text => format!("# density of H_{k}^({n}) (derivatives in t_{k})\n{h}\n"),
        Format::Latex => format!(
            "\\mathcal{{H}}_{{{k}}}^{{({n})}} = {}\n",
            latex::diffpoly(h, k)
        ),
    }
}

pub fn brackets(bt: &BracketTable, format: Format) -> String {
    match format {
        Format::Json => json(bt),
        Format::Text => {
            let mut out = format!("# nonzero brackets {{u, v}} = P delta, t_{}\n", bt.k);
            for e in &bt.entries {
                writeln!(out, "{{{}, {}}} = {}", e.left, e.right, e.value).unwrap();
            }
            out
        }
        Format::Latex => {
            let mut out = String::from("\\begin{aligned}\n");
            for (i, e) in bt.entries.iter().enumerate() {
                write!(
                    out,
                    "\\{{{}, {}\\}} &= {}",
                    latex::field_var(e.left, bt.k),
                    latex::field_var(e.right, bt.k),
                    latex::diffpoly(&e.value, bt.k)
                )
                .unwrap();
                out.push_str(if i + 1 < bt.entries.len() {
                    " \\\\\n"
                } else {
                    "\n"
                });
            }
            out.push_str("\\end{aligned}\n");
            out
        }
    }
}

/// `time` labels derivatives in LaTeX residuals.
pub fn reports(reports: &[CheckReport], time: u32, format: Format) -> String {
    let passed = reports.iter().all(CheckReport::all_passed);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                passed: bool,
                reports: &'a [CheckReport],
            }
            json(&Out { passed, reports })
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let ok = r.entries.iter().filter(|e| e.passed).count();
                let status = if r.all_passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {} ({ok}/{} identities)",
                    r.check,
                    r.entries.len()
                )
                .unwrap();
                for e in r.failures() {
                    writeln!(out, "  FAIL {}: residual {}", e.label, e.residual).unwrap();
                }
            }
            writeln!(
                out,
                "{}",
                if passed {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            )
            .unwrap();
            out
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{ll}\n");
            for r in reports {
                let status = if r.all_passed() { "pass" } else { "fail" };
                writeln!(out, "\\texttt{{{}}} & {status} \\\\", tt(&r.check)).unwrap();
                for e in r.failures() {
                    writeln!(
                        out,
                        "\\quad \\texttt{{{}}} & ${}$ \\\\",
                        tt(&e.label),
                        latex::diffpoly(&e.residual, time)
                    )
                    .unwrap();
                }
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}
