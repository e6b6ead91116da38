//! CSV output: `#`-prefixed metadata comments, comma separation, and
//! shortest round-trip float formatting. Output is a pure function of the
//! input table, so identical runs produce bitwise-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

/// An in-memory table ready to be serialized: metadata lines, column names,
/// and numeric rows (`None` renders as an empty cell).
#[derive(Clone, Debug)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Column values by name; missing cells come back as NaN.
    pub fn column(&self, name: &str) -> Vec<f64> {
        let idx = self
            .columns
            .iter()
            .position(|c| *c == name)
            .unwrap_or_else(|| panic!("no column named {name}"));
        self.rows.iter().map(|r| r[idx].unwrap_or(f64::NAN)).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.meta {
            let _ = writeln!(out, "# {key}: {value}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                if let Some(v) = cell {
                    // both forms are the shortest string that parses back to
                    // the same bits; the magnitude split keeps mid-range
                    // values plain while tails stay compact
                    let mag = v.abs();
                    if mag != 0.0 && !(1e-4..1e16).contains(&mag) {
                        let _ = write!(out, "{v:e}");
                    } else {
                        let _ = write!(out, "{v}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}
