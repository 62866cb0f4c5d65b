use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::sum::{reduce_rows, NeumaierSum, NeumaierSum3};
use crate::Real;

use super::energy::energy_e;
use super::lagrangian::Lagrangian;
use super::{arc_bracket, cross_prefix, max_offset, SampledMap, SphereMap};

/// Signs `(s₁, s₂)` in `δE(u, φ) = Q + s₁R₁ + s₂R₂`, fixed by
/// [`arbitrate_signs`] against finite differences.
pub const EL_SIGNS: (i8, i8) = (1, -1);

/// Step of the central difference in [`first_variation_fd`].
pub const FD_STEP: f64 = 1e-5;

/// Tolerance on `|u_i·φ_i|` for a test function to count as tangential.
const TANGENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElOperators<T> {
    pub q: T,
    pub r1: T,
    pub r2: T,
    /// Sum of the absolute values of all three integrands. Stays of
    /// order one where the operators themselves cancel to zero.
    pub scale: T,
}

impl<T: Real> ElOperators<T> {
    /// `Q + s₁R₁ + s₂R₂` with the given signs.
    pub fn combine(&self, signs: (i8, i8)) -> T {
        self.q + T::lit(signs.0 as f64) * self.r1 + T::lit(signs.1 as f64) * self.r2
    }

    /// `Q + R₁ − R₂`.
    pub fn variation(&self) -> T {
        self.combine(EL_SIGNS)
    }

    /// `|Q| + |R₁| + |R₂|`.
    pub fn magnitude(&self) -> T {
        self.q.abs() + self.r1.abs() + self.r2.abs()
    }

    /// `|fd − (Q + s₁R₁ + s₂R₂)| / scale`.
    pub fn relative_error(&self, fd: T, signs: (i8, i8)) -> T {
        (fd - self.combine(signs)).abs() / self.scale
    }
}

fn check_tangential<T: Real>(u: &SphereMap<T>, phi: &SampledMap<T>) -> Result<()> {
    if u.len() != phi.len() {
        return Err(Error::LengthMismatch(u.len(), phi.len()));
    }
    let tol = T::lit(TANGENT_TOL);
    for (index, (a, b)) in u.samples().iter().zip(phi.samples()).enumerate() {
        let dot = a.dot(*b);
        if dot.abs() > tol * b.norm().max(T::one()) {
            return Err(Error::NonTangential {
                index,
                dot: dot.as_f64(),
            });
        }
    }
    Ok(())
}

/// The operators of the first variation at a sphere map with zero mean:
///
/// ```text
/// Q  = 2 ∬ G′(⟨u,u⟩) ⟨u,φ⟩ ρ^{−αp/2}
/// R₁ =   ∬ H(⟨u,u⟩) ⨍u · (φ)   ρ^{−αp/2}
/// R₂ =   ∬ G(⟨u,u⟩) (u(x) + u(y)) · (φ) ρ^{−αp/2}
/// ```
///
/// on the same grid as [`energy_e`]. φ must be tangential.
pub fn el_operators<T: Real>(
    u: &SphereMap<T>,
    phi: &SampledMap<T>,
    params: EnergyParams<T>,
) -> Result<ElOperators<T>> {
    check_tangential(u, phi)?;
    let n = u.len();
    let lag = Lagrangian::new(params);
    let nt = T::of_usize(n);
    let expo = -(params.alpha * params.p * T::lit(0.5));
    let pre_uu = cross_prefix(u, u);
    let pre_up = cross_prefix(u, phi);
    let phi_mean = phi.mean();
    let two = T::lit(2.0);
    let acc = reduce_rows(
        n,
        Ok((NeumaierSum3::new(), NeumaierSum::new())),
        |i| {
            let mut acc = NeumaierSum3::new();
            let mut abs = NeumaierSum::new();
            for m in 1..=max_offset(n) {
                let j = (i + m) % n;
                let a = arc_bracket(u, u, &pre_uu, i, m);
                let w = (T::of_usize(m) / nt).powf(expo);
                let up = arc_bracket(u, phi, &pre_up, i, m);
                let q = two * lag.g_prime(a)? * up;
                let r1 = lag.h(a)? * u.arc_mean(i, m).dot(phi_mean);
                let r2 = lag.g(a)? * (u.samples()[i] + u.samples()[j]).dot(phi_mean);
                acc.add(Vec3::new(q * w, r1 * w, r2 * w));
                abs.add((q.abs() + r1.abs() + r2.abs()) * w);
            }
            Ok((acc, abs))
        },
        |a: Result<(NeumaierSum3<T>, NeumaierSum<T>)>, b: Result<(NeumaierSum3<T>, NeumaierSum<T>)>| {
            let (mut a, mut sa) = a?;
            let (b, sb) = b?;
            a.add(b.value());
            sa.add(sb.value());
            Ok((a, sa))
        },
    )?;
    let (acc, abs) = (acc.0.value(), acc.1.value());
    // ordered pairs: each unordered pair counted twice
    let scale = two / (nt * nt);
    Ok(ElOperators {
        q: acc.x * scale,
        r1: acc.y * scale,
        r2: acc.z * scale,
        scale: abs * scale,
    })
}

/// `(u + εφ)/|u + εφ|`.
pub fn normalized_variation<T: Real>(
    u: &SampledMap<T>,
    phi: &SampledMap<T>,
    eps: T,
) -> Result<SphereMap<T>> {
    if u.len() != phi.len() {
        return Err(Error::LengthMismatch(u.len(), phi.len()));
    }
    SphereMap::normalized(
        u.samples()
            .iter()
            .zip(phi.samples())
            .map(|(&a, &b)| a + b * eps)
            .collect(),
    )
}

/// Central difference of `ε ↦ energy_e((u + εφ)/|u + εφ|)` at 0.
pub fn first_variation_fd<T: Real>(
    u: &SphereMap<T>,
    phi: &SampledMap<T>,
    params: EnergyParams<T>,
    eps: T,
) -> Result<T> {
    let up = normalized_variation(u, phi, eps)?;
    let um = normalized_variation(u, phi, -eps)?;
    let plus = energy_e(&up, params)?;
    let minus = energy_e(&um, params)?;
    Ok((plus - minus) / (T::lit(2.0) * eps))
}

/// Smooth random field, projected onto the tangent planes of `u`.
///
/// Each component is a trigonometric polynomial of degree `degree` with
/// coefficients uniform in `[-1, 1]`, evaluated at cell centers.
pub fn random_tangential_field<T: Real>(
    u: &SphereMap<T>,
    degree: usize,
    seed: u64,
) -> SampledMap<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coef = vec![[[0.0f64; 2]; 3]; degree + 1];
    for k in coef.iter_mut() {
        for comp in k.iter_mut() {
            comp[0] = rng.gen_range(-1.0..=1.0);
            comp[1] = rng.gen_range(-1.0..=1.0);
        }
    }
    let n = u.len();
    let tau = 2.0 * std::f64::consts::PI;
    let samples = (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            let mut v = [0.0; 3];
            for (k, ck) in coef.iter().enumerate() {
                let (s, c) = (tau * k as f64 * t).sin_cos();
                for d in 0..3 {
                    v[d] += ck[d][0] * c + ck[d][1] * s;
                }
            }
            let v = Vec3::new(T::lit(v[0]), T::lit(v[1]), T::lit(v[2]));
            let ui = u.samples()[i];
            v - ui * ui.dot(v)
        })
        .collect();
    SampledMap::new(samples).expect("finite field")
}

/// Outcome of the sign arbitration.
#[derive(Debug, Clone)]
pub struct SignArbitration {
    /// Sign pair with the smallest worst-case error.
    pub signs: (i8, i8),
    /// Worst relative error for every candidate pair.
    pub errors: Vec<((i8, i8), f64)>,
}

/// Compares the finite-difference first variation with `Q + s₁R₁ + s₂R₂`
/// for all four sign pairs over the given tangential test fields.
/// Errors are [`ElOperators::relative_error`].
pub fn arbitrate_signs<T: Real>(
    u: &SphereMap<T>,
    phis: &[SampledMap<T>],
    params: EnergyParams<T>,
) -> Result<SignArbitration> {
    let mut samples = Vec::with_capacity(phis.len());
    for phi in phis {
        let ops = el_operators(u, phi, params)?;
        let fd = first_variation_fd(u, phi, params, T::lit(FD_STEP))?;
        samples.push((ops, fd));
    }
    let mut errors = Vec::new();
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            let worst = samples
                .iter()
                .map(|(ops, fd)| ops.relative_error(*fd, (s1, s2)).as_f64())
                .fold(0.0, f64::max);
            errors.push(((s1, s2), worst));
        }
    }
    let signs = errors
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|e| e.0)
        .expect("four candidates");
    Ok(SignArbitration { signs, errors })
}

/// Realized constants in `|R_i| ≤ C·‖u‖_∞·⟦u⟧^p·‖φ‖_{L¹}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerOrderRatio<T> {
    pub r1: T,
    pub r2: T,
}

/// Ratios `|R_i| / (‖u‖_∞ ⟦u⟧^p ‖φ‖_{L¹})`, with the bracket seminorm of
/// order `β = 1/p` on the full circle.
pub fn lower_order_bound<T: Real>(
    u: &SphereMap<T>,
    phi: &SampledMap<T>,
    params: EnergyParams<T>,
) -> Result<LowerOrderRatio<T>> {
    let ops = el_operators(u, phi, params)?;
    let sn = crate::seminorm::bracket_seminorm(
        u,
        crate::seminorm::SeminormParams::circle(T::one() / params.p, params.p)?,
    )?;
    let denom = u.sup_norm() * sn.powf(params.p) * phi.l1_norm();
    if !(denom > T::zero()) {
        return Err(Error::SingularInput(
            "lower-order bound needs nonconstant u and nonzero φ".into(),
        ));
    }
    Ok(LowerOrderRatio {
        r1: ops.r1.abs() / denom,
        r2: ops.r2.abs() / denom,
    })
}
