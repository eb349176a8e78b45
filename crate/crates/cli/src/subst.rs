//! Substitution files: one `field = expression` per line, `const NAME` lines
//! declaring constant parameters, `#` comments.
//!
//! ```text
//! const e
//! c1 = e*b1s
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{bail, Context, Result};
use fnrlax_core::diffpoly::parse_field_var;
use fnrlax_core::{DiffPoly, FieldKind, FieldVar};

pub fn parse(src: &str) -> Result<BTreeMap<FieldVar, DiffPoly>> {
    let mut params = BTreeSet::new();
    let mut pending = Vec::new();
    for (no, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("const ") {
            for n in name.split(',') {
                params.insert(n.trim().to_string());
            }
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            bail!("line {}: expected `field = expression`", no + 1);
        };
        pending.push((no + 1, lhs.trim().to_string(), rhs.trim().to_string()));
    }
    let mut rules = BTreeMap::new();
    for (no, lhs, rhs) in pending {
        let field = parse_field_var(&lhs).with_context(|| format!("line {no}"))?;
        if !matches!(field.kind, FieldKind::B | FieldKind::C) || field.dorder != 0 {
            bail!("line {no}: left side must be an underived field b<i> or c<i>");
        }
        let expr =
            DiffPoly::parse_with_params(&rhs, &params).with_context(|| format!("line {no}"))?;
        if rules.insert(field, expr).is_some() {
            bail!("line {no}: `{lhs}` substituted twice");
        }
    }
    Ok(rules)
}

pub fn load(path: &Path) -> Result<BTreeMap<FieldVar, DiffPoly>> {
    let src = std::fs::read_to_string(path)
        .with_context(|| format!("reading substitution file {}", path.display()))?;
    parse(&src).with_context(|| format!("in substitution file {}", path.display()))
}
