//! Cross-validation suites run by `verify`.
//!
//! Suites are independent and run on separate threads; the report lists
//! them in a fixed order regardless of completion order.

use std::fmt::Write as _;
use std::thread;

use besselrec_core::asymptotic::{assemble_f, assemble_g, exact_series, Family};
use besselrec_core::closed::{
    closed_f, closed_g, eval_product_form, f_degree_bound, g_degree_bound, product_form,
    product_form_g,
};
use besselrec_core::oracle::{oracle_f, oracle_g, MIN_TOL};
use besselrec_core::rates::{exact_g31, exact_g51};
use besselrec_core::{Rational, ReciprocalPoly};

use crate::args::VerifyArgs;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn table(&self) -> String {
        let mut out = format!("{:<22} {:>6}  result\n", "suite", "cases");
        for s in &self.suites {
            let status = if s.passed() { "pass".to_string() } else { format!("FAIL  {}", s.failures[0]) };
            let _ = writeln!(out, "{:<22} {:>6}  {status}", s.name, s.cases);
        }
        out
    }

    pub fn into_result(self) -> Result<(), CliError> {
        let failed: Vec<String> = self
            .suites
            .into_iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.to_string())
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::VerifyFailed(failed))
        }
    }
}

struct Settings {
    nmax: i64,
    zgrid: Vec<f64>,
    tol: f64,
    inject_fault: bool,
}

impl Settings {
    fn mixed_pairs(&self) -> Vec<(i64, i64)> {
        let m = self.nmax;
        (0..=m)
            .flat_map(|n| (0..=m).map(move |nu| (n, nu)))
            .filter(|(n, nu)| (n + nu) % 2 == 1)
            .collect()
    }

    /// Oracle tolerance well inside the agreement tolerance.
    fn oracle_tol(&self) -> f64 {
        (self.tol * 1e-2).clamp(MIN_TOL, 1e-3)
    }

    fn kernel_tol(&self) -> f64 {
        (self.tol * 1e-3).clamp(1e-14, 1e-3)
    }
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn run<T>(&mut self, r: Result<T, besselrec_core::Error>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", context()));
                None
            }
        }
    }

    fn done(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn degree_bounds(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("degree-bounds");
    for (n, nu) in s.mixed_pairs() {
        let ctx = || format!("N={n} nu={nu}");
        let (Some(q), Some(q2), Some(p)) = (
            suite.run(closed_f(n, nu), ctx),
            suite.run(closed_f(n + 2, nu), ctx),
            suite.run(closed_g(n, nu), ctx),
        ) else {
            continue;
        };
        let bq = f_degree_bound(n, nu).unwrap_or(0);
        let bp = g_degree_bound(n, nu).unwrap_or(0);
        let (dq, dq2, dp) = (q.poly.degree(), q2.poly.degree(), p.poly.degree());
        suite.check(dq == Some(bq), || format!("deg Q_{{{n},{nu}}} = {dq:?}, bound {bq}"));
        suite.check(dp <= Some(bp) && dp < dq2, || {
            format!("deg P_{{{n},{nu}}} = {dp:?}, bound {bp}, deg Q_N+2 = {dq2:?}")
        });
    }
    suite.done()
}

fn termination(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("termination");
    for (n, nu) in s.mixed_pairs() {
        let ctx = || format!("N={n} nu={nu}");
        let Some(bound) = suite.run(f_degree_bound(n, nu), ctx) else { continue };
        let Some(series) = suite.run(assemble_f(&Rational::from(n), &Rational::from(nu), bound + 4), ctx) else {
            continue;
        };
        let Some(q) = suite.run(closed_f(n, nu), ctx) else { continue };
        let mut q = q.pi_half_coeffs();
        if s.inject_fault && (n, nu) == (2, 1) {
            let mut c = q.coeffs().to_vec();
            c[0] += &Rational::new(1, 1_000_000);
            q = ReciprocalPoly::new(c);
        }
        let tail_zero = series.coeffs[bound + 1..].iter().all(Rational::is_zero);
        suite.check(tail_zero, || format!("N={n} nu={nu}: series does not stop after term {bound}"));
        let prefix = ReciprocalPoly::new(series.coeffs[..=bound].to_vec());
        suite.check(prefix == q, || format!("N={n} nu={nu}: series {prefix:?} vs recursion {q:?}"));
    }
    suite.done()
}

fn route_agreement(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("route-agreement");
    let (otol, ktol) = (s.oracle_tol(), s.kernel_tol());
    for (n, nu) in s.mixed_pairs() {
        let ctx = || format!("N={n} nu={nu}");
        let (Some(closed), Some(series), Some(pf)) = (
            suite.run(closed_f(n, nu), ctx),
            suite.run(exact_series(Family::F, n, nu), ctx),
            suite.run(product_form(n, nu), ctx),
        ) else {
            continue;
        };
        for &z in &s.zgrid {
            let ctx = || format!("F^{n}_{nu}({z})");
            let Some(prod) = suite.run(eval_product_form(&pf, z, ktol), ctx) else { continue };
            let Some(quad) = suite.run(oracle_f(n as f64, nu as f64, z, otol), ctx) else { continue };
            let values = [closed.eval(z), series.eval(z), prod, quad.value];
            agree(&mut suite, &values, s.tol, ctx);
        }
    }
    for n in [3i64, 5] {
        let Some(pf) = suite.run(product_form_g(n, 1), || format!("G^{n}_1")) else { continue };
        for &z in &s.zgrid {
            let ctx = || format!("G^{n}_1({z})");
            let appendix = if n == 3 { exact_g31(z, ktol) } else { exact_g51(z, ktol) };
            let Some(a) = suite.run(appendix, ctx) else { continue };
            let Some(prod) = suite.run(eval_product_form(&pf, z, ktol), ctx) else { continue };
            let Some(quad) = suite.run(oracle_g(n as f64, 1.0, z, otol), ctx) else { continue };
            agree(&mut suite, &[prod, a, quad.value], s.tol, ctx);
        }
    }
    suite.done()
}

fn agree(suite: &mut Suite, values: &[f64], tol: f64, ctx: impl FnOnce() -> String) {
    let worst = values
        .iter()
        .enumerate()
        .flat_map(|(i, a)| values[i + 1..].iter().map(move |b| rel(*a, *b)))
        .fold(0.0, f64::max);
    suite.check(worst <= tol, || format!("{}: spread {worst:.2e} in {values:?}", ctx()));
}

fn g_identity(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("g-identity");
    for (n, nu) in s.mixed_pairs() {
        let ctx = || format!("N={n} nu={nu}");
        let (Some(p), Some(series)) = (
            suite.run(closed_g(n, nu), ctx),
            suite.run(exact_series(Family::G, n, nu), ctx),
        ) else {
            continue;
        };
        let assembled = ReciprocalPoly::new(series.coeffs);
        suite.check(assembled == p.pi_half_coeffs(), || format!("P_{{{n},{nu}}} differs from the G series"));
    }
    let otol = s.oracle_tol();
    let top = s.nmax as f64;
    for (n, nu) in [(0.0, 0.0), (3.0, 1.0), (top, 2.0), (1.5, 0.5)] {
        for &z in &s.zgrid {
            let ctx = || format!("N={n} nu={nu} z={z}");
            let (Some(g), Some(hi), Some(lo)) = (
                suite.run(oracle_g(n, nu, z, otol), ctx),
                suite.run(oracle_f(n + 2.0, nu, z, otol), ctx),
                suite.run(oracle_f(n, nu, z, otol), ctx),
            ) else {
                continue;
            };
            let budget = 3.0 * (g.abs_error_estimate + hi.abs_error_estimate + lo.abs_error_estimate);
            let diff = g.value - (hi.value - lo.value);
            suite.check(diff.abs() <= budget, || format!("{}: G - (F^N+2 - F^N) = {diff:e}, budget {budget:e}", ctx()));
        }
    }
    suite.done()
}

fn nu_symmetry(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("nu-symmetry");
    let otol = s.oracle_tol();
    for n in [0.0, 1.0, 2.5, s.nmax as f64] {
        for nu in [0.5, 1.0, 2.0, 3.3] {
            for &z in &s.zgrid {
                let ctx = || format!("N={n} nu={nu} z={z}");
                let (Some(a), Some(b)) = (
                    suite.run(oracle_f(n, nu, z, otol), ctx),
                    suite.run(oracle_f(n, -nu, z, otol), ctx),
                ) else {
                    continue;
                };
                let budget = a.abs_error_estimate + b.abs_error_estimate;
                suite.check((a.value - b.value).abs() <= budget, || {
                    format!("{}: {} vs {}", ctx(), a.value, b.value)
                });
            }
        }
    }
    suite.done()
}

/// `Q^{nu-1} = Q^{nu-2}` for opposite-parity `N <= nu - 3`, failing first at
/// `N = nu - 1`.
fn cancellation(s: &Settings) -> SuiteReport {
    let mut suite = Suite::new("cancellation");
    for nu in 2..=s.nmax.max(2) {
        let mut n = (nu + 1) % 2;
        while n < nu {
            if let Some(q) = suite.run(closed_f(n, nu), || format!("N={n} nu={nu}")) {
                let equal = q.poly.coeff(nu as usize - 1) == q.poly.coeff(nu as usize - 2);
                let expected = n < nu - 1;
                suite.check(equal == expected, || {
                    format!("N={n} nu={nu}: coefficients equal = {equal}, expected {expected}")
                });
            }
            n += 2;
        }
    }
    suite.done()
}

fn appendix_coefficients(_: &Settings) -> SuiteReport {
    let mut suite = Suite::new("appendix-coefficients");
    let fracs = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| Rational::new(p, q)).collect::<Vec<_>>();
    let cases = [
        (3, fracs(&[(1, 1), (9, 2), (81, 8), (165, 16)])),
        (5, fracs(&[(1, 1), (15, 2), (285, 8), (1875, 16)])),
    ];
    for (n, want) in cases {
        if let Some(series) = suite.run(assemble_g(&Rational::from(n), &Rational::one(), 4), || format!("G^{n}_1")) {
            suite.check(series.coeffs == want, || format!("G^{n}_1: {:?}", series.coeffs));
        }
    }
    suite.done()
}

pub fn verify(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {}", args.tol)));
    }
    if args.zgrid.iter().any(|z| !(*z > 0.0 && z.is_finite())) {
        return Err(CliError::Usage(format!("--zgrid values must be positive, got {:?}", args.zgrid)));
    }
    let settings = Settings {
        nmax: args.nmax as i64,
        zgrid: args.zgrid.clone(),
        tol: args.tol,
        inject_fault: args.inject_fault,
    };
    let suites: [fn(&Settings) -> SuiteReport; 7] = [
        degree_bounds,
        termination,
        route_agreement,
        g_identity,
        nu_symmetry,
        cancellation,
        appendix_coefficients,
    ];
    let reports = thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|f| scope.spawn(|| f(&settings))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    Ok(VerifyReport { suites: reports })
}
