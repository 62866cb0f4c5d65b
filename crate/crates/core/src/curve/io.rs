use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::textio::{format_rows, parse_table};
use crate::Real;

use super::PolyCurve;

/// Parses a curve file body. The dimension is the column count (2 or 3).
pub fn parse_curve<T: Real>(text: &str) -> Result<PolyCurve<T>> {
    let table = parse_table(text, &[2, 3])?;
    if table.rows.len() < 3 {
        return Err(Error::TooFewVertices(table.rows.len()));
    }
    let verts = table
        .rows
        .iter()
        .map(|r| Vec3::new(T::lit(r[0]), T::lit(r[1]), T::lit(r[2])))
        .collect();
    PolyCurve::new(verts, table.cols)
}

pub fn read_curve<T: Real>(path: impl AsRef<Path>) -> Result<PolyCurve<T>> {
    parse_curve(&std::fs::read_to_string(path)?)
}

pub fn format_curve<T: Real>(curve: &PolyCurve<T>) -> String {
    format_rows(curve.vertices().iter().map(|v| v.to_array()), curve.dim())
}

pub fn write_curve<T: Real>(curve: &PolyCurve<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_curve(curve))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{generate, CurveKind};

    #[test]
    fn round_trip_circle() {
        let c = generate::<f64>(CurveKind::Circle, 64).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        write_curve(&c, &path).unwrap();
        let back: PolyCurve<f64> = read_curve(&path).unwrap();
        assert_eq!(back.dim(), 2);
        for (a, b) in c.vertices().iter().zip(back.vertices()) {
            assert!(a.dist(*b) < 1e-12);
        }
    }

    #[test]
    fn two_and_three_columns() {
        let c: PolyCurve<f64> = parse_curve("0 0\n1 0\n0 1\n").unwrap();
        assert_eq!(c.dim(), 2);
        let c: PolyCurve<f64> = parse_curve("0,0,0\n1,0,0\n0,1,1\n").unwrap();
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            parse_curve::<f64>("0 0\n1 0\n0 1\n1 0\n"),
            Err(Error::SelfIntersection(1, 3))
        ));
        assert!(matches!(
            parse_curve::<f64>("0 0\n1 0\n"),
            Err(Error::TooFewVertices(2))
        ));
        assert!(matches!(
            parse_curve::<f64>("0 0\n1 0 0\n0 1\n"),
            Err(Error::ColumnMismatch { .. })
        ));
        assert!(matches!(
            parse_curve::<f64>("0 0\n1 zero\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
