use std::f64::consts::FRAC_PI_2;

use besselrec_core::asymptotic::{assemble_f, assemble_g, exact_series, AsymptoticSeries, Family};
use besselrec_core::{Rational, Scalar};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::args::Number;
use crate::error::CliError;
use crate::format::float17;

/// Terms kept when `--order` is absent and the series does not terminate.
pub const DEFAULT_TERMS: usize = 6;

/// A truncated (or complete) large-`z` series in units of `pi/2`.
#[derive(Debug, Clone)]
pub struct SeriesChoice {
    pub series: AsymptoticSeries<f64>,
    /// The same coefficients as exact rationals, when they were computed so.
    pub exact: Option<Vec<Rational>>,
    /// First omitted coefficient, absent for a complete series.
    pub next: Option<f64>,
}

fn assemble<T: Scalar>(family: Family, n: &T, nu: &T, m: usize) -> Result<AsymptoticSeries<T>, CliError> {
    Ok(match family {
        Family::F => assemble_f(n, nu, m)?,
        Family::G => assemble_g(n, nu, m)?,
    })
}

fn to_float(s: &AsymptoticSeries<Rational>) -> AsymptoticSeries<f64> {
    AsymptoticSeries {
        prefactor_power: s.prefactor_power,
        beta: s.beta,
        unit: s.unit,
        scale: s.scale,
        coeffs: s.coeffs.iter().map(Rational::to_f64).collect(),
        order: s.order,
        terminating: s.terminating,
    }
}

/// Splits `terms + 1` coefficients into a `terms`-term series and the next one.
fn split<T: Clone>(mut s: AsymptoticSeries<T>, terms: usize) -> (AsymptoticSeries<T>, T) {
    let next = s.coeffs[terms].clone();
    s.coeffs.truncate(terms);
    s.order = terms - 1;
    (s, next)
}

fn from_exact(s: AsymptoticSeries<Rational>, next: Option<Rational>) -> SeriesChoice {
    SeriesChoice {
        series: to_float(&s),
        next: next.map(|c| c.to_f64()),
        exact: Some(s.coeffs),
    }
}

/// Opposite-parity integers give the complete exact series unless `order`
/// cuts it short. Otherwise `order` (default [`DEFAULT_TERMS`]) terms are
/// assembled, exactly when `N` and `nu` are exact or `want_exact` is set.
pub fn choose_series(
    family: Family,
    n: &Number,
    nu: &Number,
    order: Option<usize>,
    want_exact: bool,
) -> Result<SeriesChoice, CliError> {
    if let (Some(a), Some(b)) = (n.integer(), nu.integer()) {
        if a >= 0 && (a + b).rem_euclid(2) == 1 {
            let full = exact_series(family, a, b)?;
            return Ok(match order {
                Some(m) if m < full.coeffs.len() => {
                    let (mut s, next) = split(full, m);
                    s.terminating = false;
                    from_exact(s, Some(next))
                }
                _ => from_exact(full, None),
            });
        }
    }
    let terms = order.unwrap_or(DEFAULT_TERMS);
    match (&n.exact, &nu.exact) {
        (Some(a), Some(b)) => {
            let (s, next) = split(assemble(family, a, b, terms + 1)?, terms);
            Ok(from_exact(s, Some(next)))
        }
        _ if want_exact => Err(CliError::Usage(
            "--exact needs N and nu as integers, p/q or short binary fractions".into(),
        )),
        _ => {
            let (s, next) = split(assemble(family, &n.value, &nu.value, terms + 1)?, terms);
            Ok(SeriesChoice {
                series: s,
                exact: None,
                next: Some(next),
            })
        }
    }
}

impl SeriesChoice {
    /// Size of the first omitted term at `z`, as an error estimate.
    pub fn error_estimate(&self, z: f64) -> Option<f64> {
        let s = &self.series;
        self.next.map(|c| {
            let terms = s.coeffs.len() as f64;
            (c * FRAC_PI_2 * s.scale).abs() * z.powf(s.prefactor_power - terms) * (-s.beta * z).exp()
        })
    }

    /// Coefficients as JSON values: `"p/q"` strings or 17-digit floats.
    pub fn coeff_values(&self, exact: bool) -> Vec<Box<RawValue>> {
        let text = |s: String| RawValue::from_string(s).expect("coefficient is JSON");
        match (&self.exact, exact) {
            (Some(c), true) => c.iter().map(|r| text(format!("\"{r}\""))).collect(),
            _ => self.series.coeffs.iter().map(|c| text(float17(*c))).collect(),
        }
    }

    /// `{"prefactor_power","beta","coeffs","order","terminating","unit"}`.
    pub fn to_json(&self, exact: bool) -> String {
        #[derive(Serialize)]
        struct Dump {
            prefactor_power: f64,
            beta: f64,
            coeffs: Vec<Box<RawValue>>,
            order: usize,
            terminating: bool,
            unit: &'static str,
        }
        let s = &self.series;
        serde_json::to_string(&Dump {
            prefactor_power: s.prefactor_power,
            beta: s.beta,
            coeffs: self.coeff_values(exact),
            order: s.order,
            terminating: s.terminating,
            unit: "pi/2",
        })
        .expect("series serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> Number {
        s.parse().unwrap()
    }

    #[test]
    fn opposite_parity_is_complete() {
        let c = choose_series(Family::F, &num("2"), &num("1"), None, true).unwrap();
        assert!(c.series.terminating && c.next.is_none());
        assert_eq!(c.exact.as_deref(), Some(&[Rational::one(), Rational::one()][..]));
        assert_eq!(c.error_estimate(3.0), None);
    }

    #[test]
    fn order_cuts_complete_series_short() {
        let c = choose_series(Family::F, &num("3"), &num("2"), Some(2), false).unwrap();
        assert!(!c.series.terminating);
        assert_eq!(c.series.coeffs, vec![1.0, 3.0]);
        assert_eq!(c.next, Some(3.0));
    }

    #[test]
    fn same_parity_uses_requested_terms() {
        let c = choose_series(Family::G, &num("3"), &num("1"), Some(4), true).unwrap();
        assert_eq!(c.series.coeffs, vec![1.0, 4.5, 10.125, 10.3125]);
        assert!(c.next.unwrap() != 0.0);
    }

    #[test]
    fn inexact_input_cannot_be_exact() {
        assert!(choose_series(Family::F, &num("0.1"), &num("1"), None, true).is_err());
        let c = choose_series(Family::F, &num("0.1"), &num("1"), None, false).unwrap();
        assert_eq!(c.series.coeffs.len(), DEFAULT_TERMS);
        assert!(c.exact.is_none());
    }
}
