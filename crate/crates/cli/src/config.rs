//! Flat `key = value` run configuration. Command-line flags win over the
//! file, the file wins over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::emit::Format;

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub depth: Option<u32>,
    pub sub: Option<PathBuf>,
    pub zero_form: Option<bool>,
}

const KEYS: [&str; 5] = ["format", "output", "depth", "sub", "zero_form"];

pub fn parse(src: &str) -> Result<FileConfig> {
    let mut seen = BTreeMap::new();
    for (no, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected `key = value`", no + 1);
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            bail!("line {}: unknown key `{key}`", no + 1);
        }
        seen.insert(key.to_string(), value.trim().to_string());
    }
    let mut cfg = FileConfig::default();
    if let Some(v) = seen.get("format") {
        cfg.format = Some(v.parse()?);
    }
    if let Some(v) = seen.get("output") {
        cfg.output = Some(PathBuf::from(v));
    }
    if let Some(v) = seen.get("depth") {
        cfg.depth = Some(v.parse().with_context(|| format!("bad depth `{v}`"))?);
    }
    if let Some(v) = seen.get("sub") {
        cfg.sub = Some(PathBuf::from(v));
    }
    if let Some(v) = seen.get("zero_form") {
        cfg.zero_form = Some(v.parse().with_context(|| format!("bad zero_form `{v}`"))?);
    }
    Ok(cfg)
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let src = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    parse(&src).with_context(|| format!("in config {}", path.display()))
}
