//! Physical constants for `rate`.
//!
//! The file is plain `key = value` lines (a TOML subset), `#` starts a
//! comment, and every key is optional:
//!
//! ```text
//! electron_mass = 0.00051099895   # GeV
//! sin2_theta_w = 0.23
//! fermi_constant = 1.1663787e-5   # GeV^-2
//! ```
//!
//! These are conventional values, not library defaults; flags override them.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub electron_mass: f64,
    pub sin2_theta_w: f64,
    pub fermi_constant: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            electron_mass: 0.000_510_998_95,
            sin2_theta_w: 0.23,
            fermi_constant: 1.166_378_7e-5,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("bad config: {e}")))
    }

    /// Reads `path`, or returns the defaults when there is none.
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Config::parse(&text)
            }
        }
    }
}
