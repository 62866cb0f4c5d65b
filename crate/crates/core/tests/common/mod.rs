//! Test-side oracles. Nothing here calls into the library's numerics.
#![allow(dead_code)]

use std::f64::consts::PI;

use ohara::{PolyCurve64, Vec3d};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Möbius energy of the round circle, `∫∫ |γ(s) − γ(t)|^{−2} − D^{−2}`.
pub const CIRCLE_MOBIUS: f64 = 4.0;

/// Distortion of the round circle.
pub const CIRCLE_DISTORTION: f64 = PI / 2.0;

/// Richardson extrapolation from values on grids `h`, `h/2`, `h/4` with
/// the convergence order estimated from the same three values.
pub fn richardson(e: [f64; 3]) -> (f64, f64) {
    let order = ((e[0] - e[1]) / (e[1] - e[2])).log2();
    let limit = e[2] + (e[2] - e[1]) / (2f64.powf(order) - 1.0);
    (limit, order)
}

/// One panel `[a, b]` with its endpoint and midpoint values.
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
}

fn simpson(f: &dyn Fn(f64) -> f64, p: Panel, whole: f64, tol: f64, depth: u32) -> f64 {
    let Panel { a, b, fa, fm, fb } = p;
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, Panel { a, b: m, fa, fm: flm, fb: fm }, left, tol / 2.0, depth - 1)
        + simpson(f, Panel { a: m, b, fa: fm, fm: frm, fb }, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, Panel { a, b, fa, fm, fb }, whole, tol, 40)
}

/// `∫|κ| ds` of the polar curve `r(θ) = 1 + amp·cos(kθ)`.
pub fn wavy_total_curvature(k: u32, amp: f64) -> f64 {
    let k = k as f64;
    let integrand = |t: f64| {
        let r = 1.0 + amp * (k * t).cos();
        let r1 = -amp * k * (k * t).sin();
        let r2 = -amp * k * k * (k * t).cos();
        ((r * r + 2.0 * r1 * r1 - r * r2) / (r * r + r1 * r1)).abs()
    };
    // split at the period so no kink of |·| straddles a long panel
    let pieces = 8 * k as usize;
    (0..pieces)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / pieces as f64;
            let b = 2.0 * PI * (i + 1) as f64 / pieces as f64;
            adaptive_simpson(integrand, a, b, 1e-12)
        })
        .sum()
}

/// Closed polygon length, summed directly from the vertices.
pub fn polygon_length(v: &[Vec3d]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].dist(v[(i + 1) % n])).sum()
}

/// Seeded star-shaped perturbation of the unit circle,
/// `r(θ) = 1 + Σ_{k=2}^{6} a_k cos kθ + b_k sin kθ` with
/// `Σ|a_k| + |b_k| ≤ amplitude`, rescaled to length 2π.
pub fn perturbed_circle(seed: u64, n: usize, amplitude: f64) -> PolyCurve64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coef: Vec<(f64, f64)> = (2..=6).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let l1: f64 = coef.iter().map(|c| c.0.abs() + c.1.abs()).sum();
    let target = rng.gen_range(0.0..=amplitude);
    for c in coef.iter_mut() {
        c.0 *= target / l1;
        c.1 *= target / l1;
    }
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            let r = 1.0
                + coef
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let k = (j + 2) as f64;
                        c.0 * (k * t).cos() + c.1 * (k * t).sin()
                    })
                    .sum::<f64>();
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    let raw = PolyCurve64::planar(&pts).unwrap();
    let len = polygon_length(raw.vertices());
    raw.scaled(2.0 * PI / len).unwrap()
}

/// `|a − b| / |b|`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
