use besselrec_core::rates::{rate_constant_inverse_tau, reaction_rate, FugacitySet, PhysicsParams, RateRoute};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::args::{RateArgs, RouteArg};
use crate::config::Config;
use crate::error::CliError;
use crate::format::float17;

#[derive(Serialize)]
struct RateRecord {
    #[serde(rename = "T")]
    temperature: Box<RawValue>,
    me: Box<RawValue>,
    sin2tw: Box<RawValue>,
    #[serde(rename = "GF")]
    gf: Box<RawValue>,
    z: Box<RawValue>,
    route: &'static str,
    inverse_tau: Box<RawValue>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    rate: Option<Box<RawValue>>,
}

/// `1/tau` (and `R` when fugacities are given) as one JSON object.
pub fn rate(args: &RateArgs, config: &Config) -> Result<String, CliError> {
    let fugacities = match &args.upsilon {
        None => None,
        Some(v) => {
            let u: [f64; 4] = v.as_slice().try_into().map_err(|_| {
                CliError::Usage(format!("--upsilon needs 4 values, got {}", v.len()))
            })?;
            Some(FugacitySet::new(u)?)
        }
    };
    let params = PhysicsParams::new(
        args.temperature,
        args.me.unwrap_or(config.electron_mass),
        args.sin2tw.unwrap_or(config.sin2_theta_w),
        args.gf.unwrap_or(config.fermi_constant),
    )?;
    let route = match args.route {
        RouteArg::Exact => RateRoute::Exact,
        RouteArg::Quad => RateRoute::Quadrature,
    };
    let inverse_tau = rate_constant_inverse_tau(&params, args.tol, route)?;
    let shortest = |x: f64| RawValue::from_string(x.to_string()).expect("finite input");
    let computed = |x: f64| RawValue::from_string(float17(x)).expect("finite output");
    let record = RateRecord {
        temperature: shortest(params.temperature),
        me: shortest(params.electron_mass),
        sin2tw: shortest(params.sin2_theta_w),
        gf: shortest(params.fermi_constant),
        z: computed(params.z()),
        route: match route {
            RateRoute::Exact => "exact",
            RateRoute::Quadrature => "quad",
        },
        inverse_tau: computed(inverse_tau),
        rate: fugacities.map(|f| computed(reaction_rate(&f, inverse_tau))),
    };
    Ok(serde_json::to_string(&record).expect("rate record serializes"))
}
