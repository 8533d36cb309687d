//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature on finite intervals.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1); odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077158636430925,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651624,
];

/// Accuracy targets and work budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Number of equal panels the interval is split into before adapting.
    pub initial_panels: usize,
}

impl QuadConfig {
    pub fn relative(rel_tol: f64) -> Self {
        QuadConfig {
            rel_tol,
            abs_tol: 0.0,
            max_panels: 4000,
            initial_panels: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

/// One Gauss–Kronrod panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
    /// Integral of `|f|` by the Kronrod rule, used for the roundoff floor.
    pub abs_value: f64,
}

/// Applies the 21-point Kronrod rule on `[a, b]`, estimating the error from
/// the embedded 10-point Gauss rule with the usual QUADPACK rescaling.
pub fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_k = WGK[10] * fc.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    let abs_value = abs_k * half.abs();
    let asc = asc * half.abs();
    let raw = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !raw.is_finite() {
        return Err(Error::tolerance(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }

    Ok(Panel {
        a,
        b,
        value,
        error: rescale_error(raw, abs_value, asc),
        abs_value,
    })
}

fn rescale_error(err: f64, abs_value: f64, asc: f64) -> f64 {
    let mut err = err;
    if asc != 0.0 && err != 0.0 {
        let scale = libm::pow(200.0 * err / asc, 1.5);
        err = if scale < 1.0 { asc * scale } else { asc };
    }
    let floor = 50.0 * f64::EPSILON * abs_value;
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > err {
        err = floor;
    }
    err
}

struct Worst {
    error: f64,
    index: usize,
}

impl PartialEq for Worst {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Worst {}
impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

/// Integrates `f` over `[a, b]` by repeatedly bisecting the panel with the
/// largest error estimate.
///
/// Succeeds once the summed error estimate is below
/// `max(abs_tol, rel_tol * |value|)`, or once it is within a small multiple of
/// the floating-point roundoff floor of the rule. The final sum is taken over
/// panels in left-to-right order so the result is independent of the
/// refinement history.
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration bounds must be finite"));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            panels: 0,
        });
    }

    let n0 = cfg.initial_panels.max(1);
    let width = (b - a) / n0 as f64;
    let mut panels = Vec::with_capacity(n0 * 4);
    let mut heap = BinaryHeap::new();
    let (mut total, mut total_err, mut total_abs) = (0.0, 0.0, 0.0);
    for i in 0..n0 {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 };
        let p = gauss_kronrod(&mut f, lo, hi)?;
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_value;
        heap.push(Worst {
            error: p.error,
            index: panels.len(),
        });
        panels.push(p);
    }

    let converged = |value: f64, err: f64, abs: f64| {
        err <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) || err <= 200.0 * f64::EPSILON * abs
    };

    while !converged(total, total_err, total_abs) {
        if panels.len() >= cfg.max_panels {
            return Err(Error::tolerance(format!(
                "panel budget {} exhausted with error estimate {total_err:e} for value {total:e}",
                cfg.max_panels
            )));
        }
        let Some(worst) = heap.pop() else { break };
        let p = panels[worst.index];
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::tolerance(format!(
                "interval [{}, {}] cannot be subdivided further",
                p.a, p.b
            )));
        }
        let left = gauss_kronrod(&mut f, p.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, p.b)?;
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        total_abs += left.abs_value + right.abs_value - p.abs_value;

        panels[worst.index] = left;
        heap.push(Worst {
            error: left.error,
            index: worst.index,
        });
        heap.push(Worst {
            error: right.error,
            index: panels.len(),
        });
        panels.push(right);
    }

    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = panels.iter().map(|p| p.value).sum();
    let abs_error = panels.iter().map(|p| p.error).sum();
    Ok(Integral {
        value,
        abs_error,
        panels: panels.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn rule_is_exact_for_polynomials() {
        for deg in 0..=29 {
            let p = gauss_kronrod(&mut ok(|x: f64| x.powi(deg)), 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!(
                (p.value - exact).abs() < 1e-14,
                "degree {deg}: {} vs {exact}",
                p.value
            );
        }
    }

    #[test]
    fn gauss_weights_sum_to_one() {
        let s: f64 = WG.iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((k - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_sharp_peak() {
        let cfg = QuadConfig::relative(1e-12);
        let r = integrate(ok(|x: f64| 1.0 / (1e-4 + x * x)), -1.0, 1.0, &cfg).unwrap();
        let exact = 2.0 * libm::atan(1.0 / 1e-2) / 1e-2;
        assert!((r.value - exact).abs() <= 1e-11 * exact);
        assert!(r.abs_error <= 1e-12 * exact);
    }

    #[test]
    fn exhausted_budget_is_an_error() {
        let cfg = QuadConfig {
            max_panels: 2,
            ..QuadConfig::relative(1e-14)
        };
        let r = integrate(ok(|x: f64| libm::sqrt(x.abs())), -1.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::Tolerance(_))));
    }

    #[test]
    fn integrand_errors_propagate() {
        let cfg = QuadConfig::relative(1e-8);
        let r = integrate(|_| Err(Error::domain("boom")), 0.0, 1.0, &cfg);
        assert_eq!(r, Err(Error::domain("boom")));
    }
}
