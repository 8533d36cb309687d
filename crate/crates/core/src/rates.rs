//! Boltzmann-limit rate for `e- e+ <-> nu_e nubar_e`.
//!
//! With `z = 2 m_e / T` the rate constant is
//!
//! ```text
//! 1/tau = G_F^2 T^8 / (2 pi)^5 * z^7 * (A G^5_1(z) + B G^3_1(z))
//! A = (8 eta^2 + 4 eta + 1) / 3,   B = (4 eta^2 + 2 eta - 1/4) / 3
//! ```
//!
//! where `eta = sin^2 theta_W`. Natural units throughout (`hbar = c = k_B = 1`),
//! so `1/tau` has units of energy^4. Nothing here enforces units.

use alloc::format;
use core::f64::consts::PI;

use crate::asymptotic::{assemble_g, Family};
use crate::error::{Error, Result};
use crate::kernels::{k_nu_scaled, MIN_ARGUMENT};
use crate::oracle::oracle;
use crate::oracle::OracleForm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    pub temperature: f64,
    pub electron_mass: f64,
    /// `eta = sin^2 theta_W`.
    pub sin2_theta_w: f64,
    pub fermi_constant: f64,
}

impl PhysicsParams {
    pub fn new(
        temperature: f64,
        electron_mass: f64,
        sin2_theta_w: f64,
        fermi_constant: f64,
    ) -> Result<Self> {
        let p = PhysicsParams {
            temperature,
            electron_mass,
            sin2_theta_w,
            fermi_constant,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("temperature", self.temperature),
            ("electron mass", self.electron_mass),
            ("Fermi constant", self.fermi_constant),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.sin2_theta_w > 0.0 && self.sin2_theta_w < 1.0) {
            return Err(Error::domain(format!(
                "sin^2 theta_W must lie in (0, 1), got {}",
                self.sin2_theta_w
            )));
        }
        Ok(())
    }

    /// `z = 2 m_e / T`.
    pub fn z(&self) -> f64 {
        2.0 * self.electron_mass / self.temperature
    }
}

/// Fugacities `Upsilon_1 .. Upsilon_4` of the reaction `1 + 2 -> 3 + 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FugacitySet {
    pub upsilon: [f64; 4],
}

impl FugacitySet {
    pub fn new(upsilon: [f64; 4]) -> Result<Self> {
        if upsilon.iter().any(|u| !(*u >= 0.0)) {
            return Err(Error::domain(format!(
                "fugacities must be non-negative, got {upsilon:?}"
            )));
        }
        Ok(FugacitySet { upsilon })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularCoefficients {
    pub a: f64,
    pub b: f64,
}

pub fn angular_coefficients(sin2_theta_w: f64) -> AngularCoefficients {
    let eta = sin2_theta_w;
    AngularCoefficients {
        a: (8.0 * eta * eta + 4.0 * eta + 1.0) / 3.0,
        b: (4.0 * eta * eta + 2.0 * eta - 0.25) / 3.0,
    }
}

/// How `G^3_1` and `G^5_1` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateRoute {
    /// `K_0`/`K_1` product formulas.
    #[default]
    Exact,
    /// Direct quadrature of the defining integrals.
    Quadrature,
}

fn k01_scaled(z: f64, tol: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) {
        return Err(Error::domain(format!("z must be positive, got {z}")));
    }
    let x = 0.5 * z;
    Ok((k_nu_scaled(0.0, x, tol)?, k_nu_scaled(1.0, x, tol)?))
}

/// `G^3_1(z) = z^-1 K0^2/4 + 2 z^-2 K0 K1 + (1/4 + 4 z^-2) z^-1 K1^2`,
/// Bessel functions at `z/2`.
pub fn exact_g31(z: f64, tol: f64) -> Result<f64> {
    let (k0, k1) = k01_scaled(z, tol)?;
    let iz = 1.0 / z;
    let iz2 = iz * iz;
    let v = 0.25 * iz * k0 * k0 + 2.0 * iz2 * k0 * k1 + (0.25 + 4.0 * iz2) * iz * k1 * k1;
    Ok(v * libm::exp(-z))
}

/// `G^5_1(z) = (1/4 + 6 z^-2) z^-1 K0^2 + (7/2 + 48 z^-2) z^-2 K0 K1
///   + (1/4 + 10 z^-2 + 96 z^-4) z^-1 K1^2`, Bessel functions at `z/2`.
pub fn exact_g51(z: f64, tol: f64) -> Result<f64> {
    let (k0, k1) = k01_scaled(z, tol)?;
    let iz = 1.0 / z;
    let iz2 = iz * iz;
    let v = (0.25 + 6.0 * iz2) * iz * k0 * k0
        + (3.5 + 48.0 * iz2) * iz2 * k0 * k1
        + (0.25 + 10.0 * iz2 + 96.0 * iz2 * iz2) * iz * k1 * k1;
    Ok(v * libm::exp(-z))
}

/// Four-term large-`z` series of `G^3_1` or `G^5_1` (for comparison only).
pub fn asymptotic_g(n: i64, z: f64, terms: usize) -> Result<f64> {
    Ok(assemble_g(&(n as f64), &1.0, terms)?.eval(z))
}

/// `A G^5_1(z) + B G^3_1(z)`.
pub fn angular_integral(sin2_theta_w: f64, z: f64, tol: f64, route: RateRoute) -> Result<f64> {
    let AngularCoefficients { a, b } = angular_coefficients(sin2_theta_w);
    let (g5, g3) = match route {
        RateRoute::Exact => (exact_g51(z, tol)?, exact_g31(z, tol)?),
        RateRoute::Quadrature => {
            let q = |n: f64| oracle(Family::G, OracleForm::Algebraic, n, 1.0, z, tol).map(|r| r.value);
            (q(5.0)?, q(3.0)?)
        }
    };
    Ok(a * g5 + b * g3)
}

/// Smallest `z = 2 m_e / T` accepted; the product route evaluates Bessel
/// functions at `z/2`.
pub const MIN_Z: f64 = 2.0 * MIN_ARGUMENT;

/// Rate constant `1/tau`.
pub fn rate_constant_inverse_tau(params: &PhysicsParams, tol: f64, route: RateRoute) -> Result<f64> {
    params.validate()?;
    let z = params.z();
    if !(z >= MIN_Z) || !z.is_finite() {
        return Err(Error::domain(format!(
            "z = 2 m_e / T = {z} outside the supported range [{MIN_Z}, inf)"
        )));
    }
    let g = angular_integral(params.sin2_theta_w, z, tol, route)?;
    let t = params.temperature;
    let prefactor = params.fermi_constant * params.fermi_constant * libm::pow(t, 8.0)
        / libm::pow(2.0 * PI, 5.0);
    Ok(prefactor * libm::pow(z, 7.0) * g)
}

/// `R = (Upsilon_1 Upsilon_2 - Upsilon_3 Upsilon_4) / tau`.
pub fn reaction_rate(fugacities: &FugacitySet, inverse_tau: f64) -> f64 {
    let [u1, u2, u3, u4] = fugacities.upsilon;
    (u1 * u2 - u3 * u4) * inverse_tau
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angular_coefficient_examples() {
        assert_eq!(angular_coefficients(0.0), AngularCoefficients { a: 1.0 / 3.0, b: -1.0 / 12.0 });
        let c = angular_coefficients(0.5);
        assert!((c.a - 5.0 / 3.0).abs() < 1e-15);
        assert!((c.b - 7.0 / 12.0).abs() < 1e-15);
        let c = angular_coefficients(0.23);
        assert!((c.a - 2.3432 / 3.0).abs() < 1e-15);
        assert!((c.b - 0.4216 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn reaction_rate_examples() {
        let eq = FugacitySet::new([1.0; 4]).unwrap();
        assert_eq!(reaction_rate(&eq, 3.7), 0.0);
        assert_eq!(reaction_rate(&FugacitySet::new([1.0, 1.0, 0.0, 0.0]).unwrap(), 3.7), 3.7);
        assert_eq!(reaction_rate(&FugacitySet::new([2.0, 1.0, 1.0, 1.0]).unwrap(), 0.5), 0.5);
        assert!(FugacitySet::new([1.0, -1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn params_are_validated() {
        assert!(PhysicsParams::new(1.0, 1.0, 0.23, 1.0).is_ok());
        assert!(PhysicsParams::new(0.0, 1.0, 0.23, 1.0).is_err());
        assert!(PhysicsParams::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicsParams::new(1.0, -1.0, 0.23, 1.0).is_err());
    }

    #[test]
    fn exact_g31_matches_appendix_series_at_large_z() {
        let z = 20.0;
        let exact = exact_g31(z, 1e-13).unwrap();
        let series = asymptotic_g(3, z, 4).unwrap();
        assert!(((exact - series) / exact).abs() < 5e-4);
    }

    #[test]
    fn fermi_constant_enters_quadratically() {
        let p = PhysicsParams::new(1.0, 1.0, 0.23, 1e-5).unwrap();
        let q = PhysicsParams {
            fermi_constant: 2e-5,
            ..p
        };
        let a = rate_constant_inverse_tau(&p, 1e-12, RateRoute::Exact).unwrap();
        let b = rate_constant_inverse_tau(&q, 1e-12, RateRoute::Exact).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
    }

    #[test]
    fn small_z_is_rejected() {
        let p = PhysicsParams::new(100.0, 1.0, 0.23, 1.0).unwrap();
        assert!(matches!(
            rate_constant_inverse_tau(&p, 1e-10, RateRoute::Exact),
            Err(Error::Domain(_))
        ));
    }
}
