//! Curve sources on the command line: a generator name (`circle`,
//! `wavy(3,0.2)`, ...), `inverted-<generator>` for its inversion in the
//! unit circle, or a file (`file:<path>`, or any existing path).

use std::path::Path;

use ohara::{generate, read_curve, sphere_inversion, CurveKind, PolyCurve64, Vec3d};

use crate::CliError;

pub fn load_curve(source: &str, n: usize) -> Result<PolyCurve64, CliError> {
    if let Some(path) = source.strip_prefix("file:") {
        return Ok(read_curve(path)?);
    }
    if let Some(inner) = source.strip_prefix("inverted-") {
        let base = load_curve(inner, n)?;
        return Ok(sphere_inversion(&base, Vec3d::zero(), 1.0, None)?);
    }
    match source.parse::<CurveKind>() {
        Ok(kind) => Ok(generate(kind, n)?),
        Err(_) if Path::new(source).exists() => Ok(read_curve(source)?),
        Err(e) => Err(e.into()),
    }
}

/// `id=source` entries separated by commas or whitespace; a bare source
/// is its own id. Parentheses may contain commas (`wavy(3,0.2)`).
pub fn parse_curve_list(list: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in list.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == ',' || ch.is_whitespace()) {
            if !cur.is_empty() {
                items.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        items.push(cur);
    }
    if items.is_empty() {
        return Err(CliError::Config("no curves given".into()));
    }
    Ok(items
        .into_iter()
        .map(|it| match it.split_once('=') {
            Some((id, src)) => (id.to_string(), src.to_string()),
            None => (it.clone(), it),
        })
        .collect())
}
