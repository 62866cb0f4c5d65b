//! Closed polygonal curves in the plane or in space.
//!
//! A [`PolyCurve`] stores its vertices once, closure is implicit:
//! `x[j + N] == x[j]`. Arc lengths are polygonal (sums of edge lengths)
//! and all distances are Euclidean.

mod generate;
mod io;

pub use generate::{generate, CurveKind};
pub use io::{format_curve, parse_curve, read_curve, write_curve};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::sum::{reduce_rows, NeumaierSum};
use crate::Real;

/// Default guard for [`sphere_inversion`], relative to the radius.
pub const INVERSION_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve<T> {
    vertices: Vec<Vec3<T>>,
    dim: usize,
}

impl<T: Real> PolyCurve<T> {
    /// Validates and wraps a vertex list. `dim` is 2 or 3; for planar
    /// curves the third coordinate must be zero.
    ///
    /// Rejects fewer than 3 vertices, non-finite coordinates, zero-length
    /// edges and coincident vertices.
    pub fn new(vertices: Vec<Vec3<T>>, dim: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidParams(format!(
                "curve dimension must be 2 or 3, got {dim}"
            )));
        }
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() || (dim == 2 && v.z != T::zero()) {
                return Err(Error::NonFinite(i));
            }
        }
        for j in 0..n {
            let next = vertices[(j + 1) % n];
            if vertices[j] == next {
                return Err(Error::DegenerateEdge(j));
            }
        }
        if let Some((i, j)) = first_duplicate(&vertices) {
            return Err(Error::SelfIntersection(i, j));
        }
        Ok(Self { vertices, dim })
    }

    pub fn planar(points: &[[T; 2]]) -> Result<Self> {
        Self::new(
            points.iter().map(|p| Vec3::planar(p[0], p[1])).collect(),
            2,
        )
    }

    pub fn spatial(points: &[[T; 3]]) -> Result<Self> {
        Self::new(points.iter().map(|&p| Vec3::from(p)).collect(), 3)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: a valid curve has at least three vertices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec3<T>] {
        &self.vertices
    }

    /// Vertex with cyclic indexing.
    #[inline]
    pub fn vertex(&self, j: isize) -> Vec3<T> {
        let n = self.len() as isize;
        self.vertices[j.rem_euclid(n) as usize]
    }

    /// `|x[j+1] - x[j]|`.
    #[inline]
    pub fn edge_len(&self, j: usize) -> T {
        let n = self.len();
        self.vertices[(j + 1) % n].dist(self.vertices[j % n])
    }

    /// Applies `f` to every vertex and revalidates.
    pub fn map_vertices<F: Fn(Vec3<T>) -> Vec3<T>>(&self, f: F) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| f(v)).collect(), self.dim)
    }

    pub fn scaled(&self, s: T) -> Result<Self> {
        self.map_vertices(|v| v * s)
    }

    pub fn translated(&self, t: Vec3<T>) -> Result<Self> {
        self.map_vertices(|v| v + t)
    }

    /// Same vertex set traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self {
            vertices: v,
            dim: self.dim,
        }
    }

    /// Converts the coordinate type.
    pub fn cast<U: Real>(&self) -> Result<PolyCurve<U>> {
        PolyCurve::new(
            self.vertices
                .iter()
                .map(|v| Vec3::new(U::lit(v.x.as_f64()), U::lit(v.y.as_f64()), U::lit(v.z.as_f64())))
                .collect(),
            self.dim,
        )
    }
}

fn first_duplicate<T: Real>(v: &[Vec3<T>]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    let key = |i: usize| v[i].to_array();
    order.sort_by(|&a, &b| {
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    order.windows(2).find_map(|w| {
        (v[w[0]] == v[w[1]]).then(|| (w[0].min(w[1]), w[0].max(w[1])))
    })
}

/// Cumulative polygonal arc lengths and mid-point weights of a curve.
#[derive(Debug, Clone)]
pub struct ArcTable<T> {
    /// `s[0] = 0`, `s[j] = |x1-x0| + ... + |xj - x(j-1)|`, `s[N] = L`.
    cumulative: Vec<T>,
    /// `Δ_j = (|x(j+1)-xj| + |xj-x(j-1)|) / 2`.
    weights: Vec<T>,
}

impl<T: Real> ArcTable<T> {
    pub fn new(curve: &PolyCurve<T>) -> Self {
        let n = curve.len();
        let edges: Vec<T> = (0..n).map(|j| curve.edge_len(j)).collect();
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = NeumaierSum::new();
        cumulative.push(T::zero());
        for &e in &edges {
            acc.add(e);
            cumulative.push(acc.value());
        }
        let half = T::lit(0.5);
        let weights = (0..n)
            .map(|j| half * (edges[j] + edges[(j + n - 1) % n]))
            .collect();
        Self {
            cumulative,
            weights,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total polygonal length `L`.
    #[inline]
    pub fn length(&self) -> T {
        self.cumulative[self.len()]
    }

    #[inline]
    pub fn cumulative(&self) -> &[T] {
        &self.cumulative
    }

    #[inline]
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, j: usize) -> T {
        self.weights[j]
    }

    /// Absolute rounding error bound of [`Self::intrinsic_dist`]. Arcs
    /// that exceed their chord by less than this are straight.
    #[inline]
    pub fn rounding_floor(&self) -> T {
        T::lit(4.0) * T::epsilon() * self.length()
    }

    /// Shorter polygonal arc between vertices `j` and `k`.
    #[inline]
    pub fn intrinsic_dist(&self, j: usize, k: usize) -> T {
        let fwd = (self.cumulative[k] - self.cumulative[j]).abs();
        fwd.min(self.length() - fwd)
    }
}

/// Builds the arc table. Curves are validated on construction, so this
/// cannot fail.
pub fn build_arc_table<T: Real>(curve: &PolyCurve<T>) -> ArcTable<T> {
    ArcTable::new(curve)
}

pub fn intrinsic_dist<T: Real>(arc: &ArcTable<T>, j: usize, k: usize) -> T {
    arc.intrinsic_dist(j, k)
}

/// Discrete Gromov distortion `max_{j≠k} d(j,k) / |x_j - x_k|`.
pub fn distortion<T: Real>(curve: &PolyCurve<T>) -> Result<T> {
    let arc = ArcTable::new(curve);
    distortion_with(curve, &arc)
}

pub(crate) fn distortion_with<T: Real>(curve: &PolyCurve<T>, arc: &ArcTable<T>) -> Result<T> {
    let n = curve.len();
    let x = curve.vertices();
    let best = reduce_rows(
        n,
        Ok(T::one()),
        |j| {
            let mut best = T::one();
            for k in (j + 1)..n {
                let chord = x[j].dist(x[k]);
                if chord == T::zero() {
                    return Err(Error::SelfIntersection(j, k));
                }
                let q = arc.intrinsic_dist(j, k) / chord;
                if q > best {
                    best = q;
                }
            }
            Ok(best)
        },
        |acc: Result<T>, r: Result<T>| Ok(acc?.max(r?)),
    )?;
    Ok(best)
}

/// Inversion in the sphere `|x - center| = radius`, vertex by vertex.
///
/// `guard` defaults to [`INVERSION_GUARD`] and is measured relative to
/// `radius`.
pub fn sphere_inversion<T: Real>(
    curve: &PolyCurve<T>,
    center: Vec3<T>,
    radius: T,
    guard: Option<T>,
) -> Result<PolyCurve<T>> {
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::InvalidParams(format!(
            "inversion radius must be positive, got {radius}"
        )));
    }
    if curve.dim() == 2 && center.z != T::zero() {
        return Err(Error::InvalidParams(
            "planar curve needs a planar inversion center".into(),
        ));
    }
    let guard = guard.unwrap_or_else(|| T::lit(INVERSION_GUARD));
    let mut out = Vec::with_capacity(curve.len());
    for (i, &v) in curve.vertices().iter().enumerate() {
        let d = v - center;
        let dn = d.norm();
        if dn <= guard * radius {
            return Err(Error::InversionSingularity {
                index: i,
                guard: (guard * radius).as_f64(),
            });
        }
        // r² (x - c) / |x - c|², scaled in two steps to keep the
        // intermediate finite for tiny |x - c|.
        let s = radius / dn;
        out.push(center + d * (s * s));
    }
    PolyCurve::new(out, curve.dim())
}

/// Sum of exterior turning angles, each in `[0, π]`.
pub fn total_curvature<T: Real>(curve: &PolyCurve<T>) -> T {
    let n = curve.len();
    let x = curve.vertices();
    let angles: Vec<T> = (0..n)
        .into_par_iter()
        .map(|j| {
            let prev = x[j] - x[(j + n - 1) % n];
            let next = x[(j + 1) % n] - x[j];
            prev.cross(next).norm().atan2(prev.dot(next))
        })
        .collect();
    crate::sum::compensated_sum(angles)
}
