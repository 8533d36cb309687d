use std::path::PathBuf;
use std::str::FromStr;

use besselrec_core::asymptotic::Family;
use besselrec_core::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "besselrec", version, about = "Cosh-weighted Bessel integrals F^N_nu(z), G^N_nu(z) and the e+e- -> nu nubar rate")]
pub struct Cli {
    /// Key-value file with physical constants.
    #[arg(long, global = true, env = "BESSELREC_CONFIG")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F or G at one or more z.
    Eval(EvalArgs),
    /// Print closed-form or series coefficients.
    Coeffs(CoeffsArgs),
    /// Rate constant 1/tau and, with fugacities, the reaction rate R.
    Rate(RateArgs),
    /// Run the cross-validation suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::F => Family::F,
            FamilyArg::G => Family::G,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Asymp,
    Product,
    Quad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RouteArg {
    #[default]
    Exact,
    Quad,
}

/// A numeric flag, kept exactly when it is an integer, `p/q`, or a decimal
/// with a small power-of-two denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct Number {
    pub value: f64,
    pub exact: Option<Rational>,
}

impl Number {
    pub fn integer(&self) -> Option<i64> {
        self.exact.as_ref().filter(|r| r.is_integer()).and_then(Rational::to_i64)
    }
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Ok(r) = s.parse::<Rational>() {
            return Ok(Number {
                value: r.to_f64(),
                exact: Some(r),
            });
        }
        let value: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
        if !value.is_finite() {
            return Err(format!("not a finite number: {s:?}"));
        }
        let exact = Rational::from_f64(value).filter(|r| r.denom().bits() <= 11);
        Ok(Number { value, exact })
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long = "N")]
    pub n: Number,
    #[arg(long)]
    pub nu: Number,
    /// Comma-separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    pub z: Vec<f64>,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Number of series terms kept.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub order: Option<u32>,
    #[arg(long, default_value = "1e-10")]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CoeffsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long = "N")]
    pub n: Number,
    #[arg(long)]
    pub nu: Number,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub order: Option<u32>,
    /// Print rationals instead of floats.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Temperature, in the same energy unit as the electron mass.
    #[arg(long = "T")]
    pub temperature: f64,
    #[arg(long)]
    pub me: Option<f64>,
    #[arg(long)]
    pub sin2tw: Option<f64>,
    #[arg(long = "GF")]
    pub gf: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub route: RouteArg,
    /// Fugacities of the four species, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub upsilon: Option<Vec<f64>>,
    #[arg(long, default_value = "1e-10")]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub nmax: u32,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,5,10,20")]
    pub zgrid: Vec<f64>,
    #[arg(long, default_value = "1e-8")]
    pub tol: f64,
    /// Perturb one recursion coefficient; checks that the harness notices.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
