//! Large-`z` expansions of `int_0^inf f(x) K(z(x+1)) dx`.
//!
//! The general assembly combines a kernel expansion
//! `K(x) ~ x^alpha e^{-beta x} sum_j a_j x^-j` with an amplitude expansion
//! `f(x) ~ sum_k b_k x^{k + lambda - 1}` into
//!
//! ```text
//! sum_s [ sum_{j+r=s} a_j Gamma(r+lambda) beta^-(r+lambda) sum_{k+l=r} b_k c_{l,j,alpha} ] z^{alpha-lambda-s} e^{-beta z}
//! ```
//!
//! where `c_{l,j,alpha}` are the Taylor coefficients of `(x+1)^{alpha-j}`.
//! For `F` and `G` the kernel is `K_nu` and the amplitudes are
//! `(x+1)^N / sqrt(x+2)` and `(x+1)^N sqrt(x+2)` after factoring the `sqrt(x)`
//! into `lambda`.
//!
//! Coefficients are kept as `T` times a [`Surd`] `pi^{a/2} 2^{b/2}` shared by
//! the whole series, so with `T = Rational` the termination of the series for
//! opposite-parity integer `N`, `nu` is an exact zero test.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Mul;

use crate::closed::{f_degree_bound, g_degree_bound};
use crate::error::{Error, Result};
use crate::kernels::k_asymp_coeffs;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// `pi^{pi_half/2} * 2^{two_half/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    pub pi_half: i32,
    pub two_half: i32,
}

impl Surd {
    pub const ONE: Surd = Surd {
        pi_half: 0,
        two_half: 0,
    };
    /// `pi / 2`.
    pub const PI_HALF: Surd = Surd {
        pi_half: 2,
        two_half: -2,
    };
    pub const SQRT_PI: Surd = Surd {
        pi_half: 1,
        two_half: 0,
    };
    /// `sqrt(pi/2)`.
    pub const SQRT_PI_HALF: Surd = Surd {
        pi_half: 1,
        two_half: -1,
    };

    pub fn to_f64(self) -> f64 {
        libm::pow(PI, self.pi_half as f64 / 2.0) * libm::pow(2.0, self.two_half as f64 / 2.0)
    }

    /// Rational factor `r` with `self = r * target`, when one exists.
    pub fn rational_ratio(self, target: Surd) -> Option<Rational> {
        let dt = self.two_half - target.two_half;
        (self.pi_half == target.pi_half && dt % 2 == 0).then(|| Rational::from(2).powi(dt / 2))
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, other: Surd) -> Surd {
        Surd {
            pi_half: self.pi_half + other.pi_half,
            two_half: self.two_half + other.two_half,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    F,
    G,
}

/// Taylor coefficients at 0 of `g_N(x) = (x+1)^N / sqrt(x+2)` (family `F`)
/// or `h_N(x) = (x+1)^N sqrt(x+2)` (family `G`), divided by the surd
/// `2^{-1/2}` or `2^{1/2}` respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeCoeffs<T> {
    pub kind: Family,
    pub n: T,
    pub values: Vec<T>,
}

impl<T> AmplitudeCoeffs<T> {
    pub fn surd(&self) -> Surd {
        match self.kind {
            Family::F => Surd {
                pi_half: 0,
                two_half: -1,
            },
            Family::G => Surd {
                pi_half: 0,
                two_half: 1,
            },
        }
    }
}

/// First `count` Taylor coefficients of `(1+x)^exponent`.
pub fn binomial_series<T: Scalar>(exponent: &T, count: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    let mut c = T::one();
    for l in 0..count {
        if l > 0 {
            let i = T::from_i64(l as i64 - 1);
            c = c.mul(&exponent.sub(&i)).div(&T::from_i64(l as i64));
        }
        out.push(c.clone());
    }
    out
}

fn convolve<T: Scalar>(a: &[T], b: &[T], count: usize) -> Vec<T> {
    (0..count)
        .map(|r| {
            (0..=r).fold(T::zero(), |acc, k| match (a.get(k), b.get(r - k)) {
                (Some(x), Some(y)) => acc.add(&x.mul(y)),
                _ => acc,
            })
        })
        .collect()
}

pub fn amplitude_coeffs<T: Scalar>(kind: Family, n: &T, count: usize) -> AmplitudeCoeffs<T> {
    let outer = binomial_series(n, count);
    // (x+2)^{e} = 2^e (1 + x/2)^e
    let exponent = match kind {
        Family::F => T::from_rational(&Rational::new(-1, 2)),
        Family::G => T::from_rational(&Rational::new(1, 2)),
    };
    let half = T::from_rational(&Rational::new(1, 2));
    let mut power = T::one();
    let inner: Vec<T> = binomial_series(&exponent, count)
        .into_iter()
        .map(|c| {
            let v = c.mul(&power);
            power = power.mul(&half);
            v
        })
        .collect();
    AmplitudeCoeffs {
        kind,
        n: n.clone(),
        values: convolve(&outer, &inner, count),
    }
}

/// Taylor coefficients `c_{l,j}` of `(x+1)^{-1/2-j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialShiftCoeffs {
    pub j: usize,
    pub values: Vec<Rational>,
}

pub fn binom_shift_coeffs(j: usize, count: usize) -> BinomialShiftCoeffs {
    let exponent = Rational::new(-1, 2) - Rational::from(j as i64);
    BinomialShiftCoeffs {
        j,
        values: binomial_series(&exponent, count),
    }
}

/// `K(x) ~ x^alpha e^{-beta x} unit * sum_j coeffs[j] x^-j`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelExpansion<T> {
    pub alpha: T,
    pub beta: T,
    pub unit: Surd,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> KernelExpansion<T> {
    /// Expansion of `K_nu`: `alpha = -1/2`, `beta = 1`, unit `sqrt(pi/2)`.
    pub fn bessel_k(nu: &T, count: usize) -> Self {
        KernelExpansion {
            alpha: T::from_rational(&Rational::new(-1, 2)),
            beta: T::one(),
            unit: Surd::SQRT_PI_HALF,
            coeffs: k_asymp_coeffs(nu, count).values,
        }
    }
}

/// `f(x) ~ unit * sum_k coeffs[k] x^{k + lambda - 1}` as `x -> 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeExpansion<T> {
    pub lambda: T,
    pub unit: Surd,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> AmplitudeExpansion<T> {
    /// Amplitude of `F^N` (`lambda = 1/2`) or `G^N` (`lambda = 3/2`).
    pub fn family(kind: Family, n: &T, count: usize) -> Self {
        let amp = amplitude_coeffs(kind, n, count);
        let lambda = match kind {
            Family::F => Rational::new(1, 2),
            Family::G => Rational::new(3, 2),
        };
        AmplitudeExpansion {
            lambda: T::from_rational(&lambda),
            unit: amp.surd(),
            coeffs: amp.values,
        }
    }
}

/// Truncated expansion
/// `scale * unit * z^prefactor_power e^{-beta z} sum_s coeffs[s] z^-s`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSeries<T> {
    pub prefactor_power: f64,
    pub beta: f64,
    pub unit: Surd,
    /// Non-surd common factor, `beta^-lambda`; exactly 1 when `beta = 1`.
    pub scale: f64,
    pub coeffs: Vec<T>,
    /// Index of the last retained term.
    pub order: usize,
    /// Whether the retained terms are the complete (exact) expansion.
    pub terminating: bool,
}

impl<T: Scalar> AsymptoticSeries<T> {
    /// Value with the `e^{-beta z}` factor removed.
    pub fn eval_scaled(&self, z: f64) -> f64 {
        let inv = 1.0 / z;
        let sum = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * inv + c.to_f64());
        self.scale * self.unit.to_f64() * libm::pow(z, self.prefactor_power) * sum
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.eval_scaled(z) * libm::exp(-self.beta * z)
    }

    /// Re-expresses the coefficients relative to `target`, when the ratio of
    /// the units is rational.
    pub fn rebased(&self, target: Surd) -> Option<AsymptoticSeries<T>> {
        let ratio = T::from_rational(&self.unit.rational_ratio(target)?);
        Some(AsymptoticSeries {
            unit: target,
            coeffs: self.coeffs.iter().map(|c| c.mul(&ratio)).collect(),
            ..self.clone()
        })
    }

    /// Coefficients in units of `pi/2`, if the unit allows it.
    pub fn pi_half_coeffs(&self) -> Option<Vec<T>> {
        self.rebased(Surd::PI_HALF).map(|s| s.coeffs)
    }
}

/// `Gamma(lambda)` as value times surd.
fn gamma_seed<T: Scalar>(lambda: &T) -> (T, Surd) {
    match lambda.twice_as_integer() {
        Some(t) if t > 0 && t % 2 == 1 => {
            // Gamma(1/2) = sqrt(pi), then Gamma(x+1) = x Gamma(x)
            let mut g = T::one();
            let mut x = T::from_rational(&Rational::new(1, 2));
            for _ in 0..(t - 1) / 2 {
                g = g.mul(&x);
                x = x.add(&T::one());
            }
            (g, Surd::SQRT_PI)
        }
        Some(t) if t > 0 => {
            let mut g = T::one();
            for i in 1..t / 2 {
                g = g.mul(&T::from_i64(i));
            }
            (g, Surd::ONE)
        }
        _ => (T::from_f64_lossy(libm::tgamma(lambda.to_f64())), Surd::ONE),
    }
}

/// General asymptotic assembly, keeping terms `s = 0 .. m-1`.
///
/// Needs at least `m` kernel and amplitude coefficients, `beta > 0`,
/// `lambda > 0` and `m >= 1`.
pub fn assemble_general<T: Scalar>(
    kernel: &KernelExpansion<T>,
    amplitude: &AmplitudeExpansion<T>,
    m: usize,
) -> Result<AsymptoticSeries<T>> {
    if m == 0 {
        return Err(Error::domain("series needs at least one term"));
    }
    if kernel.coeffs.len() < m || amplitude.coeffs.len() < m {
        return Err(Error::domain(format!(
            "{m} terms requested but only {} kernel and {} amplitude coefficients given",
            kernel.coeffs.len(),
            amplitude.coeffs.len()
        )));
    }
    let beta = kernel.beta.to_f64();
    let lambda = amplitude.lambda.to_f64();
    if !(beta > 0.0) || !(lambda > 0.0) {
        return Err(Error::domain(format!(
            "need beta > 0 and lambda > 0, got beta = {beta}, lambda = {lambda}"
        )));
    }

    // Gamma(r + lambda) * beta^-r for r = 0 .. m-1
    let (g0, gamma_unit) = gamma_seed(&amplitude.lambda);
    let mut weights = Vec::with_capacity(m);
    let mut w = g0;
    for r in 0..m {
        if r > 0 {
            let x = amplitude.lambda.add(&T::from_i64(r as i64 - 1));
            w = w.mul(&x).div(&kernel.beta);
        }
        weights.push(w.clone());
    }

    // inner[j][r] = sum_{k+l=r} b_k c_{l,j,alpha}
    let inner: Vec<Vec<T>> = (0..m)
        .map(|j| {
            let exponent = kernel.alpha.sub(&T::from_i64(j as i64));
            let c = binomial_series(&exponent, m - j);
            convolve(&amplitude.coeffs, &c, m - j)
        })
        .collect();

    let coeffs = (0..m)
        .map(|s| {
            (0..=s).fold(T::zero(), |acc, j| {
                let r = s - j;
                acc.add(&kernel.coeffs[j].mul(&weights[r]).mul(&inner[j][r]))
            })
        })
        .collect();

    let scale = if kernel.beta == T::one() {
        1.0
    } else {
        libm::pow(beta, -lambda)
    };
    Ok(AsymptoticSeries {
        prefactor_power: kernel.alpha.to_f64() - lambda,
        beta,
        unit: kernel.unit * amplitude.unit * gamma_unit,
        scale,
        coeffs,
        order: m - 1,
        terminating: false,
    })
}

fn assemble_family<T: Scalar>(kind: Family, n: &T, nu: &T, m: usize) -> Result<AsymptoticSeries<T>> {
    let kernel = KernelExpansion::bessel_k(nu, m);
    let amplitude = AmplitudeExpansion::family(kind, n, m);
    let series = assemble_general(&kernel, &amplitude, m)?;
    series
        .rebased(Surd::PI_HALF)
        .ok_or_else(|| Error::Internal(format!("unit {:?} is not a rational multiple of pi/2", series.unit)))
}

/// `F^N_nu(z) ~ z^-1 e^-z (pi/2) sum_{s<m} coeffs[s] z^-s`.
pub fn assemble_f<T: Scalar>(n: &T, nu: &T, m: usize) -> Result<AsymptoticSeries<T>> {
    assemble_family(Family::F, n, nu, m)
}

/// `G^N_nu(z) ~ z^-2 e^-z (pi/2) sum_{s<m} coeffs[s] z^-s`.
pub fn assemble_g<T: Scalar>(n: &T, nu: &T, m: usize) -> Result<AsymptoticSeries<T>> {
    assemble_family(Family::G, n, nu, m)
}

/// Complete expansion for opposite-parity integer `N`, `nu >= 0`, which
/// terminates after the term of order `M_{N,nu}` (`F`) or `M_{N+2,nu} - 1`
/// (`G`).
///
/// Coefficients are exact rationals in units of `pi/2`. The terms just past
/// the bound are computed and checked to vanish.
pub fn exact_series(kind: Family, n: i64, nu: i64) -> Result<AsymptoticSeries<Rational>> {
    let nu = nu.abs();
    let bound = match kind {
        Family::F => f_degree_bound(n, nu)?,
        Family::G => g_degree_bound(n, nu)?,
    };
    let extra = 3;
    let mut series = assemble_family(
        kind,
        &Rational::from(n),
        &Rational::from(nu),
        bound + 1 + extra,
    )?;
    if let Some(s) = series.coeffs[bound + 1..].iter().position(|c| !c.is_zero()) {
        return Err(Error::Internal(format!(
            "series for N = {n}, nu = {nu} does not terminate: term {} is nonzero",
            bound + 1 + s
        )));
    }
    series.coeffs.truncate(bound + 1);
    series.order = bound;
    series.terminating = true;
    Ok(series)
}
