//! Deterministic CSV and key-value serialization.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::CliError;

pub const SCHEMA_LINE: &str = "# geophase-schema v1";

/// 17 significant digits; `nan`, `inf` and `-inf` for non-finite values.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x == 0.0 {
        // drop the sign of negative zero
        format!("{:.16e}", 0.0)
    } else {
        format!("{x:.16e}")
    }
}

/// A CSV table with a schema comment and a header row.
#[derive(Debug, Clone)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Csv {
        Csv { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(SCHEMA_LINE);
        out.push('\n');
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Flat `key = value` record whose values are valid TOML scalars.
#[derive(Debug, Clone, Default)]
pub struct Summary {
    lines: Vec<(String, String)>,
}

impl Summary {
    pub fn new() -> Summary {
        Summary::default()
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.lines.push((key.into(), num(value)));
        self
    }

    pub fn opt(&mut self, key: &str, value: Option<f64>) -> &mut Self {
        if let Some(v) = value {
            self.num(key, v);
        }
        self
    }

    pub fn int(&mut self, key: &str, value: usize) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    pub fn text(&mut self, key: &str, value: &str) -> &mut Self {
        let escaped = value.replace('\\', "\\\\").replace('"', "\\\"");
        self.lines.push((key.into(), format!("\"{escaped}\"")));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
