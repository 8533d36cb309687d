use besselrec_core::asymptotic::Family;
use besselrec_core::closed::{
    closed_f, closed_g, eval_product_form, product_form, product_form_g, BesselProductForm,
    ProductTerm,
};
use besselrec_core::oracle::{oracle, OracleForm};
use besselrec_core::Error;

use super::series::choose_series;
use crate::args::{EvalArgs, MethodArg, Number};
use crate::error::CliError;
use crate::format::{closed_form_json, product_form_json, Method, OutputRecord};

fn integers(n: &Number, nu: &Number, what: &str) -> Result<(i64, i64), CliError> {
    match (n.integer(), nu.integer()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Domain(format!(
            "{what} needs integer N and nu, got N = {}, nu = {}",
            n.value, nu.value
        ))
        .into()),
    }
}

/// Evaluates every requested `z`; either all records or an error, never a
/// partial list.
pub fn eval(args: &EvalArgs) -> Result<Vec<OutputRecord>, CliError> {
    let family: Family = args.family.into();
    let record = |method, z, value, error_estimate, exact: &Option<String>| OutputRecord {
        method,
        family,
        n: args.n.value,
        nu: args.nu.value,
        z,
        value,
        error_estimate,
        exact: exact.clone(),
    };
    match args.method {
        MethodArg::Closed => {
            let (n, nu) = integers(&args.n, &args.nu, "the closed form")?;
            let form = match family {
                Family::F => closed_f(n, nu)?,
                Family::G => closed_g(n, nu)?,
            };
            let exact = Some(closed_form_json(&form));
            args.z
                .iter()
                .map(|&z| {
                    check_z(z)?;
                    Ok(record(Method::Closed, z, form.eval(z), None, &exact))
                })
                .collect()
        }
        MethodArg::Asymp => {
            let choice = choose_series(family, &args.n, &args.nu, args.order.map(|m| m as usize), false)?;
            let exact = Some(choice.to_json(choice.exact.is_some()));
            args.z
                .iter()
                .map(|&z| {
                    check_z(z)?;
                    let value = choice.series.eval(z);
                    Ok(record(Method::Asymptotic, z, value, choice.error_estimate(z), &exact))
                })
                .collect()
        }
        MethodArg::Product => {
            let (n, nu) = integers(&args.n, &args.nu, "the product form")?;
            let pf = match family {
                Family::F => product_form(n, nu)?,
                Family::G => product_form_g(n, nu)?,
            };
            let exact = Some(product_form_json(&pf));
            // Half-odd orders are evaluated in closed form; integer orders go
            // through the kernel quadrature, each factor to relative `tol`.
            let numeric = (n + nu) % 2 == 0;
            let magnitude = BesselProductForm {
                nu: pf.nu,
                terms: pf.terms.iter().map(|t| ProductTerm { c: t.c.abs(), k: t.k }).collect(),
            };
            args.z
                .iter()
                .map(|&z| {
                    let value = eval_product_form(&pf, z, args.tol)?;
                    let err = if numeric {
                        Some(2.0 * args.tol * eval_product_form(&magnitude, z, args.tol)?)
                    } else {
                        None
                    };
                    Ok(record(Method::Product, z, value, err, &exact))
                })
                .collect()
        }
        MethodArg::Quad => args
            .z
            .iter()
            .map(|&z| {
                let r = oracle(family, OracleForm::Algebraic, args.n.value, args.nu.value, z, args.tol)?;
                Ok(record(Method::Quadrature, z, r.value, Some(r.abs_error_estimate), &None))
            })
            .collect(),
    }
}

fn check_z(z: f64) -> Result<(), CliError> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("z must be positive and finite, got {z}")).into())
    }
}
