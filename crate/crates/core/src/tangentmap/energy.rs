use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::sum::{reduce_rows, NeumaierSum};
use crate::Real;

use super::lagrangian::Lagrangian;
use super::{max_offset, SampledMap};

#[derive(Clone, Copy, PartialEq)]
enum Third {
    /// Arc mean of `|u − ū|`.
    ArcMean,
    /// `d_u/ρ`: shorter of the two masses of `|u − ū|`, divided by ρ.
    Mass,
}

/// Tangent-map energy: grid quadrature of
///
/// ```text
/// ∬ F(⟨u,u⟩, ⨍|u − ū|², ⨍|u − ū|) |u(x) − ū| |u(y) − ū| ρ^{−αp/2}
/// ```
///
/// over non-antipodal grid pairs, cell weight `1/N²`. `F` is evaluated
/// through `b − a/2 = |⨍u − ū|²`, which needs no cancellation. Arcs on
/// which `u` equals its mean contribute zero.
pub fn energy_e<T: Real>(u: &SampledMap<T>, params: EnergyParams<T>) -> Result<T> {
    evaluate(u, params, Third::ArcMean)
}

/// As [`energy_e`] with the third argument of `F` replaced by `d_u/ρ`.
pub fn energy_e_tilde<T: Real>(u: &SampledMap<T>, params: EnergyParams<T>) -> Result<T> {
    evaluate(u, params, Third::Mass)
}

fn evaluate<T: Real>(u: &SampledMap<T>, params: EnergyParams<T>, third: Third) -> Result<T> {
    let n = u.len();
    let lag = Lagrangian::new(params);
    let nt = T::of_usize(n);
    let mean = u.mean();
    let total = u.total_dev();
    let expo = -(params.alpha * params.p * T::lit(0.5));
    let dev: Vec<T> = u.samples().iter().map(|&v| (v - mean).norm()).collect();
    let sum = reduce_rows(
        n,
        Ok(NeumaierSum::new()),
        |i| {
            let mut acc = NeumaierSum::new();
            for m in 1..=max_offset(n) {
                let j = (i + m) % n;
                let point = dev[i] * dev[j];
                if point == T::zero() {
                    continue;
                }
                let mt = T::of_usize(m);
                let arc_mass = u.arc_dev_sum(i, m);
                let c = match third {
                    Third::ArcMean => arc_mass / mt,
                    Third::Mass => arc_mass.min(total - arc_mass) / mt,
                };
                if !(c > T::zero()) {
                    continue;
                }
                let base = (u.arc_mean(i, m) - mean).norm_sq();
                if !(base > T::zero()) {
                    return Err(Error::InfiniteEnergy(i, j));
                }
                let rho = mt / nt;
                acc.add(lag.f_from_base(base, c) * point * rho.powf(expo));
            }
            Ok(acc)
        },
        |a: Result<NeumaierSum<T>>, b: Result<NeumaierSum<T>>| {
            let mut a = a?;
            a.add(b?.value());
            Ok(a)
        },
    )?;
    let value = T::lit(2.0) * sum.value() / (nt * nt);
    if !value.is_finite() {
        return Err(Error::Domain {
            what: "energy_e",
            detail: format!("energy overflowed ({value})"),
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{generate, CurveKind};
    use crate::energy::ohara_energy;
    use crate::geom::Vec3;
    use crate::tangentmap::SphereMap;

    fn moebius() -> EnergyParams<f64> {
        EnergyParams::new(2.0, 2.0).unwrap()
    }

    #[test]
    fn constant_map_is_zero() {
        let u = SampledMap::new(vec![Vec3::new(0.0, 1.0, 0.0); 30]).unwrap();
        assert_eq!(energy_e(&u, moebius()).unwrap(), 0.0);
        assert_eq!(energy_e_tilde(&u, moebius()).unwrap(), 0.0);
    }

    #[test]
    fn regular_polygon_matches_curve_energy() {
        // odd N: no antipodal pairs, so the two sums agree term by term
        let c = generate::<f64>(CurveKind::Circle, 301).unwrap();
        let o = ohara_energy(&c, moebius()).unwrap().value;
        let u = SphereMap::tangent_of(&c);
        let e = energy_e(&u, moebius()).unwrap();
        let et = energy_e_tilde(&u, moebius()).unwrap();
        assert!((e - o).abs() < 1e-10 * o, "{e} {o}");
        assert!((et - e).abs() < 1e-12 * e);
    }

    #[test]
    fn homogeneity_in_u() {
        let u = SphereMap::<f64>::circle_tangent(200).unwrap();
        for &(alpha, p) in &[(2.0, 2.0), (2.0, 3.0), (1.0, 3.0)] {
            let params = EnergyParams::new(alpha, p).unwrap();
            let e1 = energy_e(&u, params).unwrap();
            let e2 = energy_e(&u.scaled(2.0).unwrap(), params).unwrap();
            let law = 2f64.powf(2.0 - alpha * p / 2.0);
            assert!((e2 - law * e1).abs() < 1e-10 * e2, "{alpha} {p}");
        }
    }

    #[test]
    fn collapsed_arc_is_infinite() {
        // u alternates between two opposite vectors: every even-length
        // arc has mean equal to ū = 0
        let s: Vec<Vec3<f64>> = (0..20)
            .map(|i| Vec3::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0, 0.0))
            .collect();
        let u = SampledMap::new(s).unwrap();
        assert!(matches!(energy_e(&u, moebius()), Err(Error::InfiniteEnergy(..))));
    }
}
