//! Discrete O'hara energies of polygonal curves.
//!
//! The quadrature is the mid-point rule on vertex pairs,
//!
//! ```text
//! O(α,p) = Σ_{j≠k} ( |x_j − x_k|^{−α} − d_{j,k}^{−α} )_+^{p/2} Δ_j Δ_k
//! ```
//!
//! with `d_{j,k}` the polygonal intrinsic distance and `Δ_j` the mid-point
//! weights of [`ArcTable`]. The diagonal is excluded.

mod sweep;

pub use sweep::{alpha_grid, alpha_sweep, format_g, SweepCell, SweepRow, SweepTable, CSV_HEADER};

use crate::curve::{distortion_with, ArcTable, PolyCurve};
use crate::error::{Error, Result};
use crate::sum::{reduce_rows, NeumaierSum};
use crate::Real;

/// Stable form is used only when the distortion exceeds `1 + STABLE_BETA_MIN`.
pub const STABLE_BETA_MIN: f64 = 1e-9;

/// Exponents of the energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams<T> {
    pub alpha: T,
    pub p: T,
}

impl<T: Real> EnergyParams<T> {
    pub fn new(alpha: T, p: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::InvalidParams(format!("p must be at least 1, got {p}")));
        }
        Ok(Self { alpha, p })
    }

    /// The scale-invariant member `p = 4/α`.
    pub fn scale_invariant(alpha: T) -> Result<Self> {
        Self::new(alpha, T::lit(4.0) / alpha)
    }

    /// `αp = 4` within `1e-12`.
    pub fn is_scale_invariant(&self) -> bool {
        ((self.alpha * self.p).as_f64() - 4.0).abs() <= 1e-12
    }

    /// `αp ≥ 4`: curves with self-intersections get infinite energy.
    pub fn is_self_repulsive(&self) -> bool {
        (self.alpha * self.p).as_f64() >= 4.0 - 1e-12
    }
}

/// Non-fatal conditions met during an evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `αp < 4`.
    NotSelfRepulsive,
    /// Positive summands that vanished in floating point. Typical for the
    /// direct form at small α, where the stable form should be used.
    Cancellation { lost_terms: usize },
    /// Distortion too close to 1 for the stable form; the direct form was
    /// used instead.
    StableFallback,
}

impl Warning {
    pub fn tag(&self) -> &'static str {
        match self {
            Warning::NotSelfRepulsive => "not-self-repulsive",
            Warning::Cancellation { .. } => "catastrophic-cancellation",
            Warning::StableFallback => "stable-fallback",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnergyReport<T> {
    /// Direct quadrature of the energy.
    pub value: T,
    /// `(1/α)·value^{α/2}`, only for `αp = 4`.
    pub scaled: Option<T>,
    /// Scaled energy from the stable log-β form.
    pub stable_scaled: Option<T>,
    /// Energy recovered from the stable form, `(α·stable_scaled)^{2/α}`.
    pub stable_value: Option<T>,
    /// Discrete distortion.
    pub beta: T,
    /// Number of ordered pairs with a positive summand.
    pub terms: usize,
    pub max_term: T,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Copy)]
struct Acc<T> {
    sum: NeumaierSum<T>,
    terms: usize,
    lost: usize,
    max_term: T,
    beta: T,
}

impl<T: Real> Acc<T> {
    fn new() -> Self {
        Self {
            sum: NeumaierSum::new(),
            terms: 0,
            lost: 0,
            max_term: T::zero(),
            beta: T::one(),
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.sum.add(o.sum.value());
        self.terms += o.terms;
        self.lost += o.lost;
        self.max_term = self.max_term.max(o.max_term);
        self.beta = self.beta.max(o.beta);
        self
    }
}

/// `(c^{−α} − d^{−α})_+` written as `c^{−α}·(1 − (c/d)^α)` with `expm1`,
/// which keeps full relative accuracy when `c` and `d` are close. Gaps
/// below `floor` are rounding in `d` and count as zero; for `p < 2` the
/// power `p/2` would otherwise amplify them.
#[inline]
fn bracket<T: Real>(chord: T, arc: T, alpha: T, floor: T) -> T {
    if chord >= arc - floor {
        return T::zero();
    }
    -chord.powf(-alpha) * (alpha * (chord / arc).ln()).exp_m1()
}

/// Direct quadrature; the distortion is collected in the same pass.
pub fn ohara_energy<T: Real>(curve: &PolyCurve<T>, params: EnergyParams<T>) -> Result<EnergyReport<T>> {
    let arc = ArcTable::new(curve);
    ohara_energy_with(curve, &arc, params)
}

pub(crate) fn ohara_energy_with<T: Real>(
    curve: &PolyCurve<T>,
    arc: &ArcTable<T>,
    params: EnergyParams<T>,
) -> Result<EnergyReport<T>> {
    let n = curve.len();
    let x = curve.vertices();
    let w = arc.weights();
    let half_p = params.p * T::lit(0.5);
    let two = T::lit(2.0);
    let floor = arc.rounding_floor();
    let acc = reduce_rows(
        n,
        Ok(Acc::new()),
        |j| {
            let mut acc = Acc::<T>::new();
            for k in (j + 1)..n {
                let chord = x[j].dist(x[k]);
                if chord == T::zero() {
                    return Err(Error::InfiniteEnergy(j, k));
                }
                let d = arc.intrinsic_dist(j, k);
                acc.beta = acc.beta.max(d / chord);
                let b = bracket(chord, d, params.alpha, floor);
                if b > T::zero() {
                    let t = b.powf(half_p) * w[j] * w[k];
                    if t > T::zero() && t.is_normal() {
                        acc.terms += 2;
                        acc.max_term = acc.max_term.max(t);
                        acc.sum.add(two * t);
                    } else {
                        acc.lost += 2;
                    }
                }
            }
            Ok(acc)
        },
        |a: Result<Acc<T>>, b: Result<Acc<T>>| Ok(a?.merge(b?)),
    )?;
    let value = acc.sum.value();
    if !value.is_finite() {
        return Err(Error::Domain {
            what: "ohara_energy",
            detail: format!("energy overflowed ({value})"),
        });
    }
    let mut warnings = Vec::new();
    if !params.is_self_repulsive() {
        warnings.push(Warning::NotSelfRepulsive);
    }
    if acc.lost > 0 {
        warnings.push(Warning::Cancellation { lost_terms: acc.lost });
    }
    let scaled = params
        .is_scale_invariant()
        .then(|| value.powf(params.alpha / two) / params.alpha);
    Ok(EnergyReport {
        value,
        scaled,
        stable_scaled: None,
        stable_value: None,
        beta: acc.beta,
        terms: acc.terms,
        max_term: acc.max_term,
        warnings,
    })
}

/// Direct quadrature plus, for `αp = 4`, the stable form.
pub fn ohara_energy_full<T: Real>(
    curve: &PolyCurve<T>,
    params: EnergyParams<T>,
) -> Result<EnergyReport<T>> {
    let arc = ArcTable::new(curve);
    let mut report = ohara_energy_with(curve, &arc, params)?;
    if params.is_scale_invariant() {
        let (s, fallback) = stable_with(curve, &arc, params.alpha, report.beta, Some(&report))?;
        if fallback {
            report.warnings.push(Warning::StableFallback);
        }
        report.stable_scaled = Some(s);
        report.stable_value = Some((params.alpha * s).powf(T::lit(2.0) / params.alpha));
    }
    Ok(report)
}

/// `(1/α)·O(α, 4/α)^{α/2}` in the cancellation-free form
///
/// ```text
/// log β · ( Σ_{j≠k} |x_j − x_k|^{−2} q_{j,k}^{2/α} Δ_j Δ_k )^{α/2},
/// q_{j,k} = (1 − (|x_j − x_k| / d_{j,k})^α) / (α log β),
/// ```
///
/// where `q ∈ [0, 1]` by definition of β. Falls back to the direct form
/// when `β ≤ 1 + 1e-9`.
pub fn scaled_energy_stable<T: Real>(curve: &PolyCurve<T>, alpha: T) -> Result<T> {
    EnergyParams::scale_invariant(alpha)?;
    let arc = ArcTable::new(curve);
    let beta = distortion_with(curve, &arc)?;
    Ok(stable_with(curve, &arc, alpha, beta, None)?.0)
}

fn check_stable_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha < T::lit(4.0)) {
        return Err(Error::InvalidParams(format!(
            "stable form needs alpha in (0, 4), got {alpha}"
        )));
    }
    Ok(())
}

/// Returns the stable scaled energy and whether the direct fallback was
/// taken. `direct` avoids recomputing the direct form for the fallback.
pub(crate) fn stable_with<T: Real>(
    curve: &PolyCurve<T>,
    arc: &ArcTable<T>,
    alpha: T,
    beta: T,
    direct: Option<&EnergyReport<T>>,
) -> Result<(T, bool)> {
    check_stable_alpha(alpha)?;
    let two = T::lit(2.0);
    if beta <= T::one() + T::lit(STABLE_BETA_MIN) {
        let value = match direct {
            Some(r) => r.value,
            None => ohara_energy_with(curve, arc, EnergyParams::scale_invariant(alpha)?)?.value,
        };
        return Ok((value.powf(alpha / two) / alpha, true));
    }
    let n = curve.len();
    let x = curve.vertices();
    let w = arc.weights();
    let log_beta = beta.ln();
    let denom = alpha * log_beta;
    let expo = two / alpha;
    let floor = arc.rounding_floor();
    let sum = reduce_rows(
        n,
        Ok(NeumaierSum::new()),
        |j| {
            let mut acc = NeumaierSum::new();
            for k in (j + 1)..n {
                let chord = x[j].dist(x[k]);
                if chord == T::zero() {
                    return Err(Error::InfiniteEnergy(j, k));
                }
                let d = arc.intrinsic_dist(j, k);
                if chord >= d - floor {
                    continue;
                }
                let q = (-(alpha * (chord / d).ln()).exp_m1() / denom).min(T::one());
                let t = q.powf(expo) * w[j] * w[k] / (chord * chord);
                acc.add(two * t);
            }
            Ok(acc)
        },
        |a: Result<NeumaierSum<T>>, b: Result<NeumaierSum<T>>| {
            let mut a = a?;
            a.add(b?.value());
            Ok(a)
        },
    )?
    .value();
    Ok((log_beta * sum.powf(alpha / two), false))
}

/// `(1/α)·O(α, 4/α)^{α/2}` from the direct quadrature.
pub fn scaled_energy_direct<T: Real>(curve: &PolyCurve<T>, alpha: T) -> Result<T> {
    let params = EnergyParams::scale_invariant(alpha)?;
    let r = ohara_energy(curve, params)?;
    Ok(r.value.powf(alpha / T::lit(2.0)) / alpha)
}

/// `((4 − α)/4)·O(α, 4/α)` for `α ∈ (3, 4)`. As α → 4 this tends to a
/// multiple of the total curvature.
pub fn total_curvature_limit<T: Real>(curve: &PolyCurve<T>, alpha: T) -> Result<T> {
    if !(alpha > T::lit(3.0) && alpha < T::lit(4.0)) {
        return Err(Error::InvalidParams(format!(
            "total curvature limit needs alpha in (3, 4), got {alpha}"
        )));
    }
    let r = ohara_energy(curve, EnergyParams::scale_invariant(alpha)?)?;
    let four = T::lit(4.0);
    Ok((four - alpha) / four * r.value)
}
