//! Modified Bessel functions of the second kind, `K_nu(x)` for real `nu` and
//! `x > 0`.
//!
//! Numeric values come from direct quadrature of
//! `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`. Half-odd-integer orders
//! also have exact finite forms, and the large-`x` expansion coefficients are
//! available in exact arithmetic.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::ReciprocalPoly;
use crate::quadrature::{integrate, QuadConfig};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Smallest argument accepted by [`k_nu_numeric`].
pub const MIN_ARGUMENT: f64 = 0.05;
/// Largest `|nu|` accepted by [`k_nu_numeric`].
pub const MAX_ORDER: f64 = 30.0;
/// Admissible tolerance range (exclusive) for [`k_nu_numeric`].
pub const TOL_RANGE: (f64, f64) = (1e-15, 1e-2);

/// `K_{n+1/2}(x) = sqrt(pi/(2x)) e^-x * coeffs(1/x)`.
///
/// The common `sqrt(pi/2)` surd is not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegerKForm {
    pub n: u32,
    pub coeffs: ReciprocalPoly,
}

impl HalfIntegerKForm {
    /// `e^x K_{n+1/2}(x)`.
    pub fn eval_scaled(&self, x: f64) -> f64 {
        libm::sqrt(PI / (2.0 * x)) * self.coeffs.eval(1.0 / x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_scaled(x) * libm::exp(-x)
    }
}

/// Exact finite form of `K_{n+1/2}` (and of `K_{-(n+1/2)}`, which is equal).
///
/// The coefficient of `x^-k` is `(n+k)! / (2^k k! (n-k)!)`.
pub fn k_half_exact(n: u32) -> HalfIntegerKForm {
    let n_big = n as i64;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..=n_big {
        // ratio of consecutive terms: (n+k)(n-k+1) / (2k)
        c = c * Rational::new((n_big + k) * (n_big - k + 1), 2 * k);
        coeffs.push(c.clone());
    }
    HalfIntegerKForm {
        n,
        coeffs: ReciprocalPoly::new(coeffs),
    }
}

fn check_kernel_args(nu: f64, x: f64, tol: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("K_nu(x) needs x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::domain(format!("order must be finite, got {nu}")));
    }
    if x < MIN_ARGUMENT {
        return Err(Error::tolerance(format!(
            "x = {x} is below the supported minimum {MIN_ARGUMENT}"
        )));
    }
    if nu.abs() > MAX_ORDER {
        return Err(Error::tolerance(format!(
            "|nu| = {} exceeds the supported maximum {MAX_ORDER}",
            nu.abs()
        )));
    }
    if !(tol > TOL_RANGE.0 && tol < TOL_RANGE.1) {
        return Err(Error::tolerance(format!(
            "tolerance {tol:e} outside ({:e}, {:e})",
            TOL_RANGE.0, TOL_RANGE.1
        )));
    }
    Ok(())
}

/// `ln` of the scaled integrand `exp(-x (cosh t - 1)) cosh(nu t)`, `nu >= 0`.
fn log_integrand(nu: f64, x: f64, t: f64) -> f64 {
    let s = libm::sinh(0.5 * t);
    -2.0 * x * s * s + nu * t + libm::log1p(libm::exp(-2.0 * nu * t)) - core::f64::consts::LN_2
}

/// Upper bound on the integral of the scaled integrand beyond `t`, valid once
/// the log-derivative `-x sinh t + nu tanh(nu t)` is negative.
fn tail_bound(nu: f64, x: f64, t: f64) -> Option<f64> {
    let rate = x * libm::sinh(t) - nu;
    (rate > 0.0).then(|| libm::exp(log_integrand(nu, x, t)) / rate)
}

/// `e^x K_nu(x)`, with relative error at most `tol`.
///
/// Uses `|nu|`, so the result is bitwise symmetric under `nu -> -nu`.
pub fn k_nu_scaled(nu: f64, x: f64, tol: f64) -> Result<f64> {
    check_kernel_args(nu, x, tol)?;
    let nu = nu.abs();

    // Locate the peak of the integrand and a first truncation point.
    let step = 0.125_f64.min(0.25 / libm::sqrt(x));
    let width = 1.0_f64.min(1.0 / libm::sqrt(x));
    let mut log_peak = log_integrand(nu, x, 0.0);
    let mut t = 0.0;
    loop {
        t += step;
        let lg = log_integrand(nu, x, t);
        log_peak = log_peak.max(lg);
        if let Some(bound) = tail_bound(nu, x, t) {
            if libm::log(bound) < log_peak + libm::log(1e-3 * tol * width) {
                break;
            }
        }
        if t > 50.0 {
            return Err(Error::tolerance(format!(
                "no truncation point found for nu = {nu}, x = {x}"
            )));
        }
    }

    let cfg = QuadConfig {
        initial_panels: 8,
        ..QuadConfig::relative(tol / 10.0)
    };
    let integrand = |s: f64| Ok(libm::exp(log_integrand(nu, x, s)));
    for _ in 0..8 {
        let r = integrate(integrand, 0.0, t, &cfg)?;
        let tail = tail_bound(nu, x, t).unwrap_or(f64::INFINITY);
        if tail <= 1e-2 * tol * r.value {
            return Ok(r.value);
        }
        t += 1.0;
    }
    Err(Error::tolerance(format!(
        "truncation bound not met for nu = {nu}, x = {x}"
    )))
}

/// `K_nu(x)` by quadrature of its integral representation, with relative
/// error at most `tol`.
///
/// Supported for `x >= 0.05`, `|nu| <= 30` and `tol` in `(1e-15, 1e-2)`;
/// anything outside that box is rejected with [`Error::Tolerance`].
pub fn k_nu_numeric(nu: f64, x: f64, tol: f64) -> Result<f64> {
    Ok(k_nu_scaled(nu, x, tol)? * libm::exp(-x))
}

/// `e^x K_nu(x)`, exact for half-odd-integer orders and by quadrature
/// otherwise.
pub fn k_scaled_auto(nu: f64, x: f64, tol: f64) -> Result<f64> {
    let a = nu.abs();
    if let Some(twice) = a.twice_as_integer() {
        if twice % 2 == 1 {
            check_kernel_args(nu, x, tol)?;
            return Ok(k_half_exact((twice / 2) as u32).eval_scaled(x));
        }
    }
    k_nu_scaled(a, x, tol)
}

/// Large-argument expansion coefficients of `K_nu`,
/// `K_nu(x) ~ x^-1/2 e^-x sum_j a_j x^-j`.
///
/// `values[j]` is `a_j / sqrt(pi/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KAsymptoticCoeffs<T> {
    pub nu: T,
    pub values: Vec<T>,
}

impl<T: Scalar> KAsymptoticCoeffs<T> {
    /// Truncated expansion evaluated at `x`, including the `sqrt(pi/2)` surd.
    pub fn eval(&self, x: f64) -> f64 {
        let inv = 1.0 / x;
        let sum = self
            .values
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * inv + a.to_f64());
        libm::sqrt(PI / 2.0) * sum / libm::sqrt(x) * libm::exp(-x)
    }
}

/// `a_0 .. a_{count-1}` via `a_j = a_{j-1} (4 nu^2 - (2j-1)^2) / (8j)`.
pub fn k_asymp_coeffs<T: Scalar>(nu: &T, count: usize) -> KAsymptoticCoeffs<T> {
    let four_nu2 = T::from_i64(4).mul(&nu.mul(nu));
    let mut values = Vec::with_capacity(count);
    let mut a = T::one();
    for j in 0..count {
        if j > 0 {
            let odd = (2 * j as i64 - 1).pow(2);
            a = a
                .mul(&four_nu2.sub(&T::from_i64(odd)))
                .div(&T::from_i64(8 * j as i64));
        }
        values.push(a.clone());
    }
    KAsymptoticCoeffs {
        nu: nu.clone(),
        values,
    }
}
