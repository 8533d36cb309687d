use besselrec_core::asymptotic::Family;
use serde::Serialize;
use serde_json::value::RawValue;

use super::series::choose_series;
use crate::args::CoeffsArgs;
use crate::error::CliError;

#[derive(Serialize)]
struct CoeffsDump {
    family: &'static str,
    #[serde(rename = "N")]
    n: Box<RawValue>,
    nu: Box<RawValue>,
    unit: &'static str,
    prefactor_power: f64,
    beta: f64,
    coeffs: Vec<Box<RawValue>>,
    order: usize,
    terminating: bool,
    /// The closed-form polynomial, present when the series is complete.
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<Vec<Box<RawValue>>>,
}

/// One JSON object with the series of `F^N_nu` or `G^N_nu` in units of `pi/2`.
pub fn coeffs(args: &CoeffsArgs) -> Result<String, CliError> {
    let family: Family = args.family.into();
    let choice = choose_series(family, &args.n, &args.nu, args.order.map(|m| m as usize), args.exact)?;
    let number = |x: f64| RawValue::from_string(x.to_string()).expect("finite input");
    let s = &choice.series;
    let dump = CoeffsDump {
        family: match family {
            Family::F => "F",
            Family::G => "G",
        },
        n: number(args.n.value),
        nu: number(args.nu.value),
        unit: "pi/2",
        prefactor_power: s.prefactor_power,
        beta: s.beta,
        coeffs: choice.coeff_values(args.exact),
        order: s.order,
        terminating: s.terminating,
        poly: s.terminating.then(|| choice.coeff_values(args.exact)),
    };
    Ok(serde_json::to_string(&dump).expect("coefficients serialize"))
}
