//! Fractional Sobolev seminorms of sampled maps on ℝ/ℤ.
//!
//! For samples `u_i` on the cells of the `N`-grid,
//!
//! ```text
//! [u]^p = Σ_{i≠j} |u_i − u_j|^p ρ_{ij}^{−1−βp} / N²
//! ⟦u⟧^p = Σ_{i≠j} ⟨u,u⟩(i,j)^{p/2} ρ_{ij}^{−1−βp} / N²
//! ```
//!
//! with `ρ_{ij}` the distance of grid points and the bracket taken over the
//! cells between them. The diagonal is excluded and no singular-cell
//! correction is applied.

use crate::error::{Error, Result};
use crate::quad::integrate_to_infinity;
use crate::sum::{reduce_rows, NeumaierSum};
use crate::tangentmap::{max_offset, SampledMap};
use crate::Real;

/// Domain of the double integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// All of ℝ/ℤ; ρ is the geodesic distance.
    Circle,
    /// Grid points `start..start+len` (cyclic indices). Pairs are joined
    /// through the interval, so `len` must not exceed `N/2 + 1`.
    Range { start: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeminormParams<T> {
    pub beta: T,
    pub p: T,
    pub support: Support,
}

impl<T: Real> SeminormParams<T> {
    pub fn new(beta: T, p: T, support: Support) -> Result<Self> {
        if !(beta > T::zero() && beta < T::one()) {
            return Err(Error::InvalidParams(format!("beta must lie in (0, 1), got {beta}")));
        }
        if !(p > T::one()) || !p.is_finite() {
            return Err(Error::InvalidParams(format!("p must lie in (1, ∞), got {p}")));
        }
        Ok(Self { beta, p, support })
    }

    pub fn circle(beta: T, p: T) -> Result<Self> {
        Self::new(beta, p, Support::Circle)
    }

    /// `β > 1/p − 1/2`, the range in which both seminorms are comparable.
    pub fn in_equivalence_range(&self) -> bool {
        self.beta > T::one() / self.p - T::lit(0.5)
    }
}

/// Iterates the unordered pairs `(i, i+m)` of the support with their
/// multiplicity in the ordered double sum. `bracket_pairs` drops the
/// antipodal pair of the circle.
fn pair_sum<T: Real, F>(n: usize, support: Support, with_antipodal: bool, term: F) -> Result<T>
where
    F: Fn(usize, usize) -> Result<T> + Sync + Send,
{
    let (rows, limit): (usize, Box<dyn Fn(usize) -> usize + Sync + Send>) = match support {
        Support::Circle => {
            let top = if with_antipodal { n / 2 } else { max_offset(n) };
            (n, Box::new(move |_| top))
        }
        Support::Range { start: _, len } => {
            if len < 2 || 2 * (len - 1) > n {
                return Err(Error::InvalidParams(format!(
                    "interval of {len} grid points does not fit a grid of {n}"
                )));
            }
            (len, Box::new(move |r| len - 1 - r))
        }
    };
    let offset = match support {
        Support::Circle => 0,
        Support::Range { start, .. } => start,
    };
    let two = T::lit(2.0);
    let acc = reduce_rows(
        rows,
        Ok(NeumaierSum::new()),
        |r| {
            let i = (offset + r) % n;
            let mut acc = NeumaierSum::new();
            for m in 1..=limit(r) {
                let mult = if support == Support::Circle && 2 * m == n { T::one() } else { two };
                acc.add(mult * term(i, m)?);
            }
            Ok(acc)
        },
        |a: Result<NeumaierSum<T>>, b: Result<NeumaierSum<T>>| {
            let mut a = a?;
            a.add(b?.value());
            Ok(a)
        },
    )?;
    let nt = T::of_usize(n);
    Ok(acc.value() / (nt * nt))
}

/// Gagliardo seminorm `[u]_{W^{β,p}}`.
pub fn gagliardo<T: Real>(u: &SampledMap<T>, params: SeminormParams<T>) -> Result<T> {
    let n = u.len();
    let nt = T::of_usize(n);
    let expo = -(T::one() + params.beta * params.p);
    let s = u.samples();
    let sum = pair_sum(n, params.support, true, |i, m| {
        let rho = T::of_usize(m) / nt;
        Ok((s[i] - s[(i + m) % n]).norm().powf(params.p) * rho.powf(expo))
    })?;
    Ok(sum.powf(T::one() / params.p))
}

/// Bracket seminorm `⟦u⟧_{W^{β,p}}`; antipodal pairs are skipped.
pub fn bracket_seminorm<T: Real>(u: &SampledMap<T>, params: SeminormParams<T>) -> Result<T> {
    let n = u.len();
    let nt = T::of_usize(n);
    let expo = -(T::one() + params.beta * params.p);
    let half_p = params.p * T::lit(0.5);
    let sum = pair_sum(n, params.support, false, |i, m| {
        let rho = T::of_usize(m) / nt;
        let a = u.arc_self_bracket(i, m, u.arc_mean(i, m));
        Ok(a.powf(half_p) * rho.powf(expo))
    })?;
    Ok(sum.powf(T::one() / params.p))
}

/// `∫_{A(s,t)} ρ(x,y)^{−2−μ} d(x,y) = 2/(μ(1+μ))·|t − s|^{−μ}`, where
/// `A(s,t)` is the set of pairs whose interval contains both `s` and `t`.
pub fn ast_integral(s: f64, t: f64, mu: f64) -> Result<f64> {
    check_ast(s, t, mu)?;
    Ok(2.0 / (mu * (1.0 + mu)) * (t - s).abs().powf(-mu))
}

/// Same value with the last integration done numerically:
/// `(2/(1+μ)) ∫_{|t−s|}^∞ r^{−1−μ} dr` by adaptive Gauss-Kronrod.
pub fn ast_integral_numeric(s: f64, t: f64, mu: f64) -> Result<f64> {
    check_ast(s, t, mu)?;
    let d = (t - s).abs();
    let q = integrate_to_infinity(|r| r.powf(-1.0 - mu), d, 1e-13, 1e-11, 4000);
    Ok(2.0 / (1.0 + mu) * q.value)
}

fn check_ast(s: f64, t: f64, mu: f64) -> Result<()> {
    if s == t {
        return Err(Error::SingularInput("ast_integral needs s ≠ t".into()));
    }
    if !(mu > 0.0) || !mu.is_finite() || !s.is_finite() || !t.is_finite() {
        return Err(Error::InvalidParams(format!(
            "ast_integral needs finite s, t and mu > 0, got mu = {mu}"
        )));
    }
    Ok(())
}

/// The fixed suite of test maps: trigonometric polynomials of degree at
/// most 5, a Lipschitz hat and a Weierstrass sum
/// `Σ_{k<8} 2^{−0.7k} cos(2π 2^k x)`, all sampled at cell centers.
pub fn test_suite<T: Real>(n: usize) -> Result<Vec<(&'static str, SampledMap<T>)>> {
    use std::f64::consts::PI;
    let tau = 2.0 * PI;
    let c = |k: f64, x: f64| (tau * k * x).cos();
    let s = |k: f64, x: f64| (tau * k * x).sin();
    Ok(vec![
        ("trig-circle", SampledMap::from_fn(n, |x| [c(1.0, x), s(1.0, x), 0.0])?),
        ("trig-cos2", SampledMap::from_fn(n, |x| [c(2.0, x), 0.0, 0.0])?),
        ("trig-sin5", SampledMap::from_fn(n, |x| [s(5.0, x), 0.0, 0.0])?),
        ("trig-mixed", SampledMap::from_fn(n, |x| {
            [c(1.0, x) + 0.3 * s(3.0, x), s(2.0, x) - 0.2 * c(5.0, x), 0.5 * c(4.0, x)]
        })?),
        ("trig-knot", SampledMap::from_fn(n, |x| {
            [s(1.0, x) + 2.0 * s(2.0, x), c(1.0, x) - 2.0 * c(2.0, x), -s(3.0, x)]
        })?),
        ("trig-low", SampledMap::from_fn(n, |x| {
            [0.7 * c(1.0, x) - 0.1 * s(4.0, x), 0.4 * s(1.0, x) + 0.25 * c(3.0, x), 0.0]
        })?),
        ("trig-helix", SampledMap::from_fn(n, |x| [c(3.0, x), s(3.0, x), 0.6 * c(1.0, x)])?),
        ("trig-beat", SampledMap::from_fn(n, |x| [c(4.0, x) * c(1.0, x), s(5.0, x), 0.0])?),
        ("hat", SampledMap::from_fn(n, |x| [1.0 - (2.0 * x - 1.0).abs(), 0.0, 0.0])?),
        ("weierstrass", SampledMap::from_fn(n, |x| {
            let w: f64 = (0..8)
                .map(|k| 2f64.powf(-0.7 * k as f64) * c(2f64.powi(k), x))
                .sum();
            [w, 0.0, 0.0]
        })?),
    ])
}
