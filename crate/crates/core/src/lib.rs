//! Discrete O'hara knot energies on closed polygonal curves, the
//! equivalent tangent-map energy on sphere-valued maps, Gromov distortion
//! and fractional Sobolev seminorms.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*64` and
//! `*32` aliases name the common instantiations.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod energy;
pub mod error;
pub mod geom;
pub mod quad;
pub mod scalar;
pub mod seminorm;
pub mod sum;
pub mod tangentmap;
mod textio;

pub use curve::{
    build_arc_table, distortion, generate, intrinsic_dist, read_curve, sphere_inversion,
    total_curvature, write_curve, ArcTable, CurveKind, PolyCurve,
};
pub use energy::{
    alpha_sweep, ohara_energy, ohara_energy_full, scaled_energy_stable, total_curvature_limit,
    EnergyParams, EnergyReport, SweepTable,
};
pub use error::{Error, ErrorClass, Result};
pub use geom::Vec3;
pub use scalar::Real;
pub use seminorm::{ast_integral, bracket_seminorm, gagliardo, SeminormParams, Support};
pub use tangentmap::{
    el_operators, energy_e, energy_e_tilde, lambda_bound, ElOperators, Lagrangian, SampledMap,
    SphereMap,
};

pub type PolyCurve64 = PolyCurve<f64>;
pub type PolyCurve32 = PolyCurve<f32>;
pub type Vec3d = Vec3<f64>;
pub type EnergyParams64 = EnergyParams<f64>;
pub type EnergyReport64 = EnergyReport<f64>;
pub type SampledMap64 = SampledMap<f64>;
pub type SphereMap64 = SphereMap<f64>;
pub type SphereMap32 = SphereMap<f32>;
