use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::textio::{format_rows, parse_table};
use crate::Real;

use super::{SampledMap, SphereMap};

/// Unit-norm tolerance applied to rows of a sphere-map file.
pub const READ_UNIT_TOL: f64 = 1e-8;

fn rows<T: Real>(text: &str, cols: &[usize]) -> Result<Vec<Vec3<T>>> {
    let t = parse_table(text, cols)?;
    Ok(t.rows
        .iter()
        .map(|r| Vec3::new(T::lit(r[0]), T::lit(r[1]), T::lit(r[2])))
        .collect())
}

/// Parses a 3-column map file. Rows within `1e-8` of unit norm are
/// normalized; with `renormalize`, every nonzero row is.
pub fn parse_sphere_map<T: Real>(text: &str, renormalize: bool) -> Result<SphereMap<T>> {
    let v = rows::<T>(text, &[3])?;
    if !renormalize {
        let tol = T::lit(READ_UNIT_TOL);
        for (index, s) in v.iter().enumerate() {
            let norm = s.norm();
            if (norm - T::one()).abs() > tol {
                return Err(Error::NotUnit {
                    index,
                    norm: norm.as_f64(),
                });
            }
        }
    }
    SphereMap::normalized(v)
}

pub fn read_sphere_map<T: Real>(path: impl AsRef<Path>, renormalize: bool) -> Result<SphereMap<T>> {
    parse_sphere_map(&std::fs::read_to_string(path)?, renormalize)
}

/// Reads 1 to 3 columns; missing components are zero.
pub fn read_sampled_map<T: Real>(path: impl AsRef<Path>) -> Result<SampledMap<T>> {
    SampledMap::new(rows(&std::fs::read_to_string(path)?, &[1, 2, 3])?)
}

pub fn format_map<T: Real>(u: &SampledMap<T>) -> String {
    format_rows(u.samples().iter().map(|v| v.to_array()), 3)
}

pub fn write_map<T: Real>(u: &SampledMap<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_map(u))?;
    Ok(())
}
