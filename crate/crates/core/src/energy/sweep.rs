use std::fmt::Write as _;

use rayon::prelude::*;

use crate::curve::{distortion_with, ArcTable, PolyCurve};
use crate::error::{Error, Result};
use crate::Real;

use super::stable_with;

/// One named input curve of a sweep.
#[derive(Debug, Clone)]
pub struct SweepCell<T> {
    pub id: String,
    pub curve: PolyCurve<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub curve: String,
    /// Scaled energy, or the error kind that flagged this cell.
    pub value: std::result::Result<f64, &'static str>,
    pub beta: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    /// Ordered by α first, then by input curve order.
    pub rows: Vec<SweepRow>,
}

pub const CSV_HEADER: &str = "alpha,curve,value,beta,n";

impl SweepTable {
    /// CSV with 12 significant digits; flagged cells are written as `nan`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let value = match r.value {
                Ok(v) => format_g(v, 12),
                Err(_) => "nan".into(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                format_g(r.alpha, 12),
                r.curve,
                value,
                format_g(r.beta, 12),
                r.n
            );
        }
        out
    }

    pub fn flagged(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.value.is_err())
    }

    /// Gnuplot script drawing value against α, one line per curve id.
    /// Written for reference only; nothing reads it back.
    pub fn plot_script(&self, csv_path: &str, png_path: &str) -> String {
        let mut ids: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !ids.contains(&r.curve.as_str()) {
                ids.push(&r.curve);
            }
        }
        format!(
            "# value against alpha per curve, generated with {csv_path}\n\
             set datafile separator ','\n\
             set terminal pngcairo size 900,600\n\
             set output '{png_path}'\n\
             set xlabel 'alpha'\n\
             set ylabel '(1/alpha) E^(alpha/2)'\n\
             set key top right\n\
             ids = \"{}\"\n\
             plot for [c in ids] '{csv_path}' every ::1 \
             using 1:(strcol(2) eq c ? $3 : NaN) with linespoints title c\n",
            ids.join(" ")
        )
    }
}

/// Scaled energies (stable form) for every pair of α and curve.
///
/// Curve ids must be unique and every α must lie in `(0, 2]`. Errors in
/// a single cell are recorded in that row and do not abort the sweep.
pub fn alpha_sweep<T: Real>(cells: &[SweepCell<T>], alphas: &[f64]) -> Result<SweepTable> {
    for (i, c) in cells.iter().enumerate() {
        if cells[..i].iter().any(|o| o.id == c.id) {
            return Err(Error::InvalidParams(format!("duplicate curve id `{}`", c.id)));
        }
    }
    if let Some(a) = alphas.iter().find(|&&a| !(a > 0.0 && a <= 2.0)) {
        return Err(Error::InvalidParams(format!("sweep alpha {a} outside (0, 2]")));
    }
    let prepared: Vec<(ArcTable<T>, std::result::Result<T, &'static str>)> = cells
        .par_iter()
        .map(|c| {
            let arc = ArcTable::new(&c.curve);
            let beta = distortion_with(&c.curve, &arc).map_err(|e| e.kind());
            (arc, beta)
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..alphas.len())
        .flat_map(|a| (0..cells.len()).map(move |c| (a, c)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(ai, ci)| {
            let cell = &cells[ci];
            let (arc, beta) = &prepared[ci];
            let value = beta.and_then(|b| {
                stable_with(&cell.curve, arc, T::lit(alphas[ai]), b, None)
                    .map(|(v, _)| v.as_f64())
                    .map_err(|e| e.kind())
            });
            SweepRow {
                alpha: alphas[ai],
                curve: cell.id.clone(),
                value,
                beta: beta.map(|b| b.as_f64()).unwrap_or(f64::NAN),
                n: cell.curve.len(),
            }
        })
        .collect();
    Ok(SweepTable { rows })
}

/// `n` equally spaced values from `a` to `b` inclusive.
pub fn alpha_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Formats like C's `%.{sig}g`: `sig` significant digits, trailing zeros
/// dropped, scientific notation for very small or large magnitudes.
pub fn format_g(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
