use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use subcube_core::dimacs::{parse_cnf, parse_cubes};
use subcube_core::{ClauseMultiset, CubeMultiset};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `--out` when given, else stdout.
pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn read_cnf(path: &Path) -> Result<ClauseMultiset> {
    let text = read(path)?;
    Ok(parse_cnf(&text).with_context(|| format!("parsing {}", path.display()))?.value)
}

pub fn read_cubes(path: &Path) -> Result<CubeMultiset> {
    let text = read(path)?;
    Ok(parse_cubes(&text).with_context(|| format!("parsing {}", path.display()))?.value)
}

pub fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
