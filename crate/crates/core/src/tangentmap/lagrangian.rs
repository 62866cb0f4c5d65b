use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::Real;

/// The integrands of the tangent-map energy and its first variation for
/// fixed exponents `(α, p)`.
///
/// `F(a,b,c) = ((b − a/2)^{−α/2} − c^{−α})^{p/2}` and `G(a) = F(a,1,1)`.
/// Differences of powers are evaluated with `expm1`/`ln_1p`, so small
/// arguments keep their relative accuracy.
#[derive(Debug, Clone, Copy)]
pub struct Lagrangian<T> {
    pub alpha: T,
    pub p: T,
}

impl<T: Real> From<EnergyParams<T>> for Lagrangian<T> {
    fn from(p: EnergyParams<T>) -> Self {
        Self {
            alpha: p.alpha,
            p: p.p,
        }
    }
}

/// Rounding slack below zero accepted for `a`.
const A_SLACK: f64 = 1e-12;

impl<T: Real> Lagrangian<T> {
    pub fn new(params: EnergyParams<T>) -> Self {
        params.into()
    }

    fn check_a(&self, a: T) -> Result<T> {
        if !(a >= -T::lit(A_SLACK)) || !(a < T::lit(2.0)) {
            return Err(Error::Domain {
                what: "G",
                detail: format!("bracket {a} outside [0, 2)"),
            });
        }
        Ok(a.max(T::zero()))
    }

    /// `(1 − a/2)^{−α/2} − 1`.
    fn x(&self, a: T) -> T {
        let half = T::lit(0.5);
        (-(self.alpha * half) * (-(a * half)).ln_1p()).exp_m1()
    }

    /// `(1 − a/2)^{−(α+2)/2}`.
    fn y(&self, a: T) -> T {
        let half = T::lit(0.5);
        (-((self.alpha + T::lit(2.0)) * half) * (-(a * half)).ln_1p()).exp()
    }

    /// `F(a, b, c)`; the bracket `b − a/2` must be positive and `c > 0`.
    pub fn f(&self, a: T, b: T, c: T) -> Result<T> {
        let half = T::lit(0.5);
        let base = b - a * half;
        if !(base > T::zero()) || !(c > T::zero()) {
            return Err(Error::Domain {
                what: "F",
                detail: format!("needs b − a/2 > 0 and c > 0, got a={a}, b={b}, c={c}"),
            });
        }
        Ok(self.f_from_base(base, c))
    }

    /// `F` from `B = b − a/2 > 0` and `c > 0`, clamped at zero.
    #[inline]
    pub(crate) fn f_from_base(&self, base: T, c: T) -> T {
        let half = T::lit(0.5);
        let x = c.powf(-self.alpha) * (-(self.alpha * half) * (base / (c * c)).ln()).exp_m1();
        x.max(T::zero()).powf(self.p * half)
    }

    pub fn g(&self, a: T) -> Result<T> {
        let a = self.check_a(a)?;
        Ok(self.x(a).max(T::zero()).powf(self.p * T::lit(0.5)))
    }

    /// `G′(a) = (αp/8)·X^{(p−2)/2}·(1 − a/2)^{−(α+2)/2}`, `X = (1 − a/2)^{−α/2} − 1`.
    pub fn g_prime(&self, a: T) -> Result<T> {
        let a = self.check_a(a)?;
        let half = T::lit(0.5);
        let pow = self.x(a).max(T::zero()).powf((self.p - T::lit(2.0)) * half);
        Ok(self.alpha * self.p / T::lit(8.0) * pow * self.y(a))
    }

    /// `H(a) = (αp/2)·X^{(p−2)/2}·((1 − a/2)^{−(α+2)/2} − 1)`.
    pub fn h(&self, a: T) -> Result<T> {
        let a = self.check_a(a)?;
        let half = T::lit(0.5);
        let pow = self.x(a).max(T::zero()).powf((self.p - T::lit(2.0)) * half);
        let y1 = (-((self.alpha + T::lit(2.0)) * half) * (-(a * half)).ln_1p()).exp_m1();
        Ok(self.alpha * self.p * half * pow * y1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lag(alpha: f64, p: f64) -> Lagrangian<f64> {
        Lagrangian::new(EnergyParams::new(alpha, p).unwrap())
    }

    #[test]
    fn zero_and_closed_forms() {
        let l = lag(2.0, 2.0);
        assert_eq!(l.g(0.0).unwrap(), 0.0);
        assert_eq!(l.h(0.0).unwrap(), 0.0);
        assert_eq!(l.f(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((l.g(1.0).unwrap() - 1.0).abs() < 1e-15);
        // p = 2: G′ = (α/4)(1 − a/2)^{−(α+2)/2}
        assert!((l.g_prime(1.0).unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn f_reduces_to_g() {
        let l = lag(4.0 / 3.0, 3.0);
        for a in [0.01, 0.5, 1.3, 1.9] {
            assert!((l.f(a, 1.0, 1.0).unwrap() - l.g(a).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_match_differences() {
        for &(alpha, p) in &[(2.0, 2.0), (1.0, 4.0), (4.0 / 3.0, 3.0)] {
            let l = lag(alpha, p);
            for a in [0.2, 0.9, 1.6] {
                let h = 1e-6;
                let fd = (l.g(a + h).unwrap() - l.g(a - h).unwrap()) / (2.0 * h);
                let gp = l.g_prime(a).unwrap();
                assert!((fd - gp).abs() < 1e-7 * gp.abs().max(1.0), "{alpha} {p} {a}");
                // H is −∂F/∂c at b = c = 1 along b′ = 2c′
                let fb = |e: f64| l.f(a, 1.0 + 2.0 * e, 1.0 + e).unwrap();
                let dh = -(fb(h) - fb(-h)) / (2.0 * h);
                let hv = l.h(a).unwrap();
                assert!((dh - hv).abs() < 1e-6 * hv.abs().max(1.0), "{alpha} {p} {a}: {dh} {hv}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        let l = lag(2.0, 2.0);
        assert!(l.g(2.0).is_err());
        assert!(l.g(-0.1).is_err());
        assert!(l.h(2.5).is_err());
        assert!(l.f(2.0, 1.0, 1.0).is_err());
        assert!(l.f(0.5, 1.0, 0.0).is_err());
        assert!(l.g(-1e-14).unwrap() == 0.0);
    }
}
