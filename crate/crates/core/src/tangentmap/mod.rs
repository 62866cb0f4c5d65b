//! Sampled maps `u: ℝ/ℤ → ℝ³` and the tangent-map form of the O'hara
//! energy.
//!
//! Sample `u[i]` is the value of `u` on the cell `[i/N, (i+1)/N)`: the
//! unit tangent of edge `i` for a polygon, or an analytic map evaluated at
//! the cell center. Between grid points `i/N` and `j/N` the shorter arc
//! consists of whole cells, and arc means are cell averages. Antipodal
//! grid pairs (even `N`, distance exactly ½) are skipped everywhere.

mod el;
mod energy;
mod io;
mod lagrangian;

pub use el::{
    arbitrate_signs, el_operators, first_variation_fd, lower_order_bound, normalized_variation,
    random_tangential_field, ElOperators, LowerOrderRatio, SignArbitration, EL_SIGNS, FD_STEP,
};
pub use energy::{energy_e, energy_e_tilde};
pub use io::{format_map, parse_sphere_map, read_sampled_map, read_sphere_map, write_map};
pub use lagrangian::Lagrangian;

use std::ops::Deref;

use crate::curve::PolyCurve;
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::sum::{NeumaierSum, NeumaierSum3};
use crate::Real;

/// Arcs with at most this many cells are averaged directly instead of by
/// prefix-sum differences, which lose relative accuracy on short arcs.
pub(crate) const SHORT_ARC: usize = 32;

/// Tolerance on `|u_i| = 1` for [`SphereMap`].
pub const UNIT_TOL: f64 = 1e-10;

/// Samples of a map into ℝ³ with prefix sums over a doubled index range,
/// so that every cyclic arc is a contiguous slice.
#[derive(Debug, Clone)]
pub struct SampledMap<T> {
    samples: Vec<Vec3<T>>,
    mean: Vec3<T>,
    /// `Σ_{l<k} u_l`, `k ∈ 0..=2N`.
    pre_u: Vec<Vec3<T>>,
    /// `Σ_{l<k} |u_l|²`.
    pre_sq: Vec<T>,
    /// `Σ_{l<k} |u_l − ū|`.
    pre_dev: Vec<T>,
}

impl<T: Real> SampledMap<T> {
    pub fn new(samples: Vec<Vec3<T>>) -> Result<Self> {
        let n = samples.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let mean = samples.iter().copied().collect::<NeumaierSum3<T>>().value() / T::of_usize(n);
        let mut pre_u = Vec::with_capacity(2 * n + 1);
        let mut pre_sq = Vec::with_capacity(2 * n + 1);
        let mut pre_dev = Vec::with_capacity(2 * n + 1);
        let (mut su, mut ss, mut sd) = (NeumaierSum3::new(), NeumaierSum::new(), NeumaierSum::new());
        pre_u.push(Vec3::zero());
        pre_sq.push(T::zero());
        pre_dev.push(T::zero());
        for k in 0..2 * n {
            let v = samples[k % n];
            su.add(v);
            ss.add(v.norm_sq());
            sd.add((v - mean).norm());
            pre_u.push(su.value());
            pre_sq.push(ss.value());
            pre_dev.push(sd.value());
        }
        Ok(Self {
            samples,
            mean,
            pre_u,
            pre_sq,
            pre_dev,
        })
    }

    /// Samples `f` at the cell centers `(i + ½)/N`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> [f64; 3]) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| {
                    let v = f((i as f64 + 0.5) / n as f64);
                    Vec3::new(T::lit(v[0]), T::lit(v[1]), T::lit(v[2]))
                })
                .collect(),
        )
    }

    /// Derivative of the polygon parametrized proportionally to vertex
    /// index over `[0, 1)`: `u_i = N·(x_{i+1} − x_i)`.
    pub fn derivative_of(curve: &PolyCurve<T>) -> Self {
        let n = curve.len();
        let scale = T::of_usize(n);
        Self::new(
            (0..n)
                .map(|i| (curve.vertex(i as isize + 1) - curve.vertex(i as isize)) * scale)
                .collect(),
        )
        .expect("edges of a valid curve are finite")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn samples(&self) -> &[Vec3<T>] {
        &self.samples
    }

    /// `(u)_{ℝ/ℤ}`.
    #[inline]
    pub fn mean(&self) -> Vec3<T> {
        self.mean
    }

    pub fn sup_norm(&self) -> T {
        self.samples.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// `∫|u|` over ℝ/ℤ.
    pub fn l1_norm(&self) -> T {
        crate::sum::compensated_sum(self.samples.iter().map(|v| v.norm())) / T::of_usize(self.len())
    }

    pub fn scaled(&self, s: T) -> Result<Self> {
        Self::new(self.samples.iter().map(|&v| v * s).collect())
    }

    pub fn map(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Result<Self> {
        Self::new(self.samples.iter().map(|&v| f(v)).collect())
    }

    /// Cyclic shift by `k` cells: `u'(i) = u(i + k)`.
    pub fn shifted(&self, k: usize) -> Self {
        let n = self.len();
        Self::new((0..n).map(|i| self.samples[(i + k) % n]).collect())
            .expect("shift keeps samples finite")
    }

    /// Mean of `u` over cells `s..s+m` (cyclic, `m ≥ 1`).
    pub fn arc_mean(&self, s: usize, m: usize) -> Vec3<T> {
        let inv = T::one() / T::of_usize(m);
        if m <= SHORT_ARC {
            let mut acc = NeumaierSum3::new();
            for l in s..s + m {
                acc.add(self.samples[l % self.len()]);
            }
            acc.value() * inv
        } else {
            (self.pre_u[s + m] - self.pre_u[s]) * inv
        }
    }

    /// Sum of `|u − ū|` over cells `s..s+m`.
    pub fn arc_dev_sum(&self, s: usize, m: usize) -> T {
        if m <= SHORT_ARC {
            let n = self.len();
            crate::sum::compensated_sum((s..s + m).map(|l| (self.samples[l % n] - self.mean).norm()))
        } else {
            self.pre_dev[s + m] - self.pre_dev[s]
        }
    }

    /// `Σ_i |u_i − ū|`.
    pub fn total_dev(&self) -> T {
        self.pre_dev[self.len()]
    }

    /// `⟨u,u⟩` on cells `s..s+m`, given their mean.
    pub(crate) fn arc_self_bracket(&self, s: usize, m: usize, mean: Vec3<T>) -> T {
        let n = self.len();
        let two = T::lit(2.0);
        let inv = T::one() / T::of_usize(m);
        if m <= SHORT_ARC {
            let mut acc = NeumaierSum::new();
            for l in s..s + m {
                acc.add((self.samples[l % n] - mean).norm_sq());
            }
            two * acc.value() * inv
        } else {
            let msq = (self.pre_sq[s + m] - self.pre_sq[s]) * inv;
            (two * (msq - mean.norm_sq())).max(T::zero())
        }
    }
}

/// Cross prefix sums `Σ_{l<k} u_l·v_l` over the doubled range.
pub(crate) fn cross_prefix<T: Real>(u: &SampledMap<T>, v: &SampledMap<T>) -> Vec<T> {
    let n = u.len();
    let mut acc = NeumaierSum::new();
    let mut out = Vec::with_capacity(2 * n + 1);
    out.push(T::zero());
    for k in 0..2 * n {
        acc.add(u.samples[k % n].dot(v.samples[k % n]));
        out.push(acc.value());
    }
    out
}

/// `⟨u,v⟩` on cells `s..s+m`: `2(mean(u·v) − mean u · mean v)`, directly
/// on short arcs.
pub(crate) fn arc_bracket<T: Real>(
    u: &SampledMap<T>,
    v: &SampledMap<T>,
    pre_uv: &[T],
    s: usize,
    m: usize,
) -> T {
    let n = u.len();
    let two = T::lit(2.0);
    let mu = u.arc_mean(s, m);
    let mv = v.arc_mean(s, m);
    let inv = T::one() / T::of_usize(m);
    if m <= SHORT_ARC {
        let mut acc = NeumaierSum::new();
        for l in s..s + m {
            acc.add((u.samples[l % n] - mu).dot(v.samples[l % n] - mv));
        }
        two * acc.value() * inv
    } else {
        two * ((pre_uv[s + m] - pre_uv[s]) * inv - mu.dot(mv))
    }
}

/// Shorter arc between grid points `i` and `j` as `(first cell, cell
/// count, forward)`; `forward` means the arc runs from `i` to `j`. `None`
/// for `i = j` and for antipodal pairs.
pub fn grid_arc(n: usize, i: usize, j: usize) -> Option<(usize, usize, bool)> {
    let (i, j) = (i % n, j % n);
    let fwd = (j + n - i) % n;
    if fwd == 0 || 2 * fwd == n {
        None
    } else if 2 * fwd < n {
        Some((i, fwd, true))
    } else {
        Some((j, n - fwd, false))
    }
}

/// Largest `m` with `m/N < ½`.
#[inline]
pub(crate) fn max_offset(n: usize) -> usize {
    (n - 1) / 2
}

/// Unit-norm samples.
#[derive(Debug, Clone)]
pub struct SphereMap<T>(SampledMap<T>);

impl<T: Real> SphereMap<T> {
    /// Checks `||u_i| − 1| < 1e-10` for every sample.
    pub fn new(samples: Vec<Vec3<T>>) -> Result<Self> {
        Self::from_sampled(SampledMap::new(samples)?)
    }

    pub fn from_sampled(map: SampledMap<T>) -> Result<Self> {
        let tol = T::lit(UNIT_TOL).max(T::epsilon() * T::lit(16.0));
        for (index, v) in map.samples().iter().enumerate() {
            let norm = v.norm();
            if (norm - T::one()).abs() >= tol {
                return Err(Error::NotUnit {
                    index,
                    norm: norm.as_f64(),
                });
            }
        }
        Ok(Self(map))
    }

    /// Normalizes every sample; zero samples are rejected.
    pub fn normalized(samples: Vec<Vec3<T>>) -> Result<Self> {
        let mut out = Vec::with_capacity(samples.len());
        for (index, v) in samples.into_iter().enumerate() {
            let norm = v.norm();
            if !(norm > T::zero()) {
                return Err(Error::NotUnit {
                    index,
                    norm: norm.as_f64(),
                });
            }
            out.push(v / norm);
        }
        Self::new(out)
    }

    /// Unit edge tangents of a polygon.
    pub fn tangent_of(curve: &PolyCurve<T>) -> Self {
        let n = curve.len();
        Self::normalized(
            (0..n)
                .map(|i| curve.vertex(i as isize + 1) - curve.vertex(i as isize))
                .collect(),
        )
        .expect("edges of a valid curve are nonzero")
    }

    /// Tangent of the unit-speed circle in the xy-plane at cell centers.
    pub fn circle_tangent(n: usize) -> Result<Self> {
        let tau = 2.0 * std::f64::consts::PI;
        Self::from_sampled(SampledMap::from_fn(n, |t| {
            [-(tau * t).sin(), (tau * t).cos(), 0.0]
        })?)
    }

    pub fn into_inner(self) -> SampledMap<T> {
        self.0
    }
}

impl<T> Deref for SphereMap<T> {
    type Target = SampledMap<T>;

    fn deref(&self) -> &SampledMap<T> {
        &self.0
    }
}

/// `⟨u,v⟩(i,j)` with the arc it was taken over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketValue<T> {
    pub value: T,
    pub i: usize,
    pub j: usize,
    /// The shorter arc runs from `i` forward to `j`.
    pub forward: bool,
}

/// `⟨u,v⟩(i/N, j/N)`: double mean over the shorter arc of
/// `(u(z₁) − u(z₂))·(v(z₁) − v(z₂))`. `Ok(None)` marks a skipped pair
/// (`i = j` or antipodal).
pub fn bracket<T: Real>(
    u: &SampledMap<T>,
    v: &SampledMap<T>,
    i: usize,
    j: usize,
) -> Result<Option<BracketValue<T>>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let Some((s, m, forward)) = grid_arc(u.len(), i, j) else {
        return Ok(None);
    };
    let pre = cross_prefix(u, v);
    Ok(Some(BracketValue {
        value: arc_bracket(u, v, &pre, s, m),
        i,
        j,
        forward,
    }))
}

/// `sup ⟨u,u⟩` over non-antipodal grid pairs.
pub fn lambda_bound<T: Real>(u: &SampledMap<T>) -> T {
    let n = u.len();
    crate::sum::reduce_rows(
        n,
        T::zero(),
        |i| {
            let mut best = T::zero();
            for m in 1..=max_offset(n) {
                let mean = u.arc_mean(i, m);
                best = best.max(u.arc_self_bracket(i, m, mean));
            }
            best
        },
        |a, b| a.max(b),
    )
}

/// Upper bound `2 − 2L²/c²` on `⟨u,u⟩` for the tangent of a curve with
/// constant speed `c` and bilipschitz constant `L`.
pub fn bilipschitz_lambda<T: Real>(lipschitz: T, speed: T) -> T {
    let two = T::lit(2.0);
    two - two * (lipschitz / speed).powi(2)
}
