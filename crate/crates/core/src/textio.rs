//! Vertex-per-line text tables shared by curve and sampled-map files.
//!
//! One row per line, 1 to 3 decimal fields separated by whitespace and/or
//! commas. Lines whose first non-blank character is `#` are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::Real;

/// Parsed table: column count and rows padded with zeros to 3 entries.
pub(crate) struct Table {
    pub cols: usize,
    pub rows: Vec<[f64; 3]>,
}

pub(crate) fn parse_table(text: &str, allowed: &[usize]) -> Result<Table> {
    let mut cols = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let expected = *cols.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(Error::ColumnMismatch {
                line,
                expected,
                found: fields.len(),
            });
        }
        if !allowed.contains(&expected) {
            return Err(Error::Parse {
                line,
                msg: format!("expected {allowed:?} columns, found {expected}"),
            });
        }
        let mut row = [0.0; 3];
        for (slot, f) in row.iter_mut().zip(&fields) {
            *slot = f.parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("`{f}`: {e}"),
            })?;
        }
        rows.push(row);
    }
    Ok(Table {
        cols: cols.unwrap_or(0),
        rows,
    })
}

/// Formats rows with 17 significant digits, which round-trips `f64`.
pub(crate) fn format_rows<T: Real>(rows: impl Iterator<Item = [T; 3]>, cols: usize) -> String {
    let mut out = String::new();
    for row in rows {
        for (c, v) in row.iter().take(cols).enumerate() {
            if c > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.16e}", v.as_f64());
        }
        out.push('\n');
    }
    out
}
