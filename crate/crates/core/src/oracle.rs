//! Brute-force quadrature of the defining integrals of `F^N_nu` and
//! `G^N_nu`, used as ground truth for every other route.
//!
//! The default form integrates
//!
//! ```text
//! F^N_nu(z) = int_0^inf (x+1)^N / sqrt(x(x+2)) K_nu(z(x+1)) dx
//! G^N_nu(z) = int_0^inf sqrt(x(x+2)) (x+1)^N K_nu(z(x+1)) dx
//! ```
//!
//! after substituting `x = w^2`, which removes the `x^-1/2` endpoint
//! singularity. The alternative form integrates over `t` in the original
//! `cosh` parametrization instead, so the two share no node placement.
//! In both, `K_nu` is itself a quadrature of its integral representation.

use alloc::format;

use crate::asymptotic::Family;
use crate::error::{Error, Result};
use crate::kernels::{k_nu_scaled, MIN_ARGUMENT};
use crate::quadrature::{integrate, QuadConfig};

/// Smallest tolerance the oracle accepts.
pub const MIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Quadrature, truncation and kernel error budget combined.
    pub abs_error_estimate: f64,
    pub panels: usize,
    /// Truncation point of the outer integral, in the `x` variable.
    pub truncation_point: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleForm {
    /// Outer integral in `x = w^2`.
    #[default]
    Algebraic,
    /// Outer integral in `t`, `x = cosh t - 1`.
    Hyperbolic,
}

/// `F^N_nu(z)` with estimated relative error at most `tol`.
pub fn oracle_f(n: f64, nu: f64, z: f64, tol: f64) -> Result<QuadratureResult> {
    oracle(Family::F, OracleForm::Algebraic, n, nu, z, tol)
}

/// `G^N_nu(z)` with estimated relative error at most `tol`.
pub fn oracle_g(n: f64, nu: f64, z: f64, tol: f64) -> Result<QuadratureResult> {
    oracle(Family::G, OracleForm::Algebraic, n, nu, z, tol)
}

pub fn oracle(
    family: Family,
    form: OracleForm,
    n: f64,
    nu: f64,
    z: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("z must be positive, got {z}")));
    }
    if !n.is_finite() {
        return Err(Error::domain(format!("N must be finite, got {n}")));
    }
    if z < MIN_ARGUMENT {
        return Err(Error::tolerance(format!(
            "z = {z} is below the supported minimum {MIN_ARGUMENT}"
        )));
    }
    if !(MIN_TOL..1e-2).contains(&tol) {
        return Err(Error::tolerance(format!(
            "oracle tolerance {tol:e} outside [{MIN_TOL:e}, 1e-2)"
        )));
    }
    let ktol = tol / 100.0;

    // Growth exponent of the amplitude at large x.
    let growth = match family {
        Family::F => (n - 1.0).max(0.0),
        Family::G => (n + 1.0).max(0.0),
    };
    // Smallest x past the peak of (x+1)^growth e^{-zx} where it drops below tol/100.
    let mut x_max = (growth / z - 1.0).max(0.0) + 1.0 / z;
    let threshold = libm::log(tol / 100.0);
    while growth * libm::log1p(x_max) - z * x_max > threshold {
        x_max *= 1.25;
    }

    // Integrand with e^{-z} factored out, as a function of the outer variable.
    let integrand = |s: f64| -> Result<f64> {
        let (x, jacobian_weight) = match form {
            OracleForm::Algebraic => {
                let x = s * s;
                let w = match family {
                    Family::F => 2.0 / libm::sqrt(x + 2.0),
                    Family::G => 2.0 * x * libm::sqrt(x + 2.0),
                };
                (x, w)
            }
            OracleForm::Hyperbolic => {
                // x = cosh t - 1 = 2 sinh^2(t/2)
                let h = libm::sinh(0.5 * s);
                let x = 2.0 * h * h;
                let w = match family {
                    Family::F => 1.0,
                    Family::G => x * (x + 2.0),
                };
                (x, w)
            }
        };
        let amp = libm::pow(1.0 + x, n) * jacobian_weight;
        if amp == 0.0 {
            return Ok(0.0);
        }
        Ok(amp * libm::exp(-z * x) * k_nu_scaled(nu, z * (1.0 + x), ktol)?)
    };
    let to_outer = |x: f64| match form {
        OracleForm::Algebraic => libm::sqrt(x),
        OracleForm::Hyperbolic => libm::acosh(1.0 + x),
    };
    let to_x = |s: f64| match form {
        OracleForm::Algebraic => s * s,
        OracleForm::Hyperbolic => libm::cosh(s) - 1.0,
    };

    let cfg = QuadConfig {
        initial_panels: 6,
        ..QuadConfig::relative(tol / 4.0)
    };
    let mut upper = to_outer(x_max);
    let head = integrate(integrand, 0.0, upper, &cfg)?;
    let mut value = head.value;
    let mut err = head.abs_error;
    let mut panels = head.panels;

    // Extend until a whole extra segment is negligible.
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let next = upper * 1.25 + 0.5;
        let seg_cfg = QuadConfig {
            abs_tol: 1e-2 * tol * value.abs(),
            ..cfg
        };
        let seg = integrate(integrand, upper, next, &seg_cfg)?;
        value += seg.value;
        err += seg.abs_error;
        panels += seg.panels;
        upper = next;
        last = seg.value.abs();
        if last <= 1e-3 * tol * value.abs() {
            break;
        }
    }
    // The final segment bounds the neglected tail, which decays faster
    // than geometrically from there on.
    err += last + ktol * value.abs();

    let scale = libm::exp(-z);
    let result = QuadratureResult {
        value: value * scale,
        abs_error_estimate: err * scale,
        panels,
        truncation_point: to_x(upper),
    };
    if !(result.value.is_finite()) || result.abs_error_estimate > tol * result.value.abs() {
        return Err(Error::tolerance(format!(
            "oracle error estimate {:e} exceeds tolerance for value {:e}",
            result.abs_error_estimate, result.value
        )));
    }
    Ok(result)
}
