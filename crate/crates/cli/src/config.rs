//! Optional TOML configuration and the fuel environment variable.
//!
//! ```toml
//! output_format = "text"            # or "machine"
//! theory_registry_paths = ["theories"]
//!
//! [default_fuel]
//! quantifier_bound = 25
//! step_budget = 100000
//! ```
//!
//! `PROVABILITY_FUEL=BOUND,STEPS` overrides the configured default fuel;
//! command-line flags override both.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use provability::Fuel;
use serde::{Deserialize, Serialize};

pub const FUEL_ENV: &str = "PROVABILITY_FUEL";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    /// One JSON object per result, with a `format_version` field.
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub default_fuel: Fuel,
    /// Directories searched for `<name>.theory` files when a theory name is
    /// not built in.
    pub theory_registry_paths: Vec<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config { default_fuel: Fuel::default(), theory_registry_paths: Vec::new(), output_format: OutputFormat::Text }
    }
}

impl Config {
    pub fn load(path: Option<&Path>, fuel_env: Option<&str>) -> Result<Config> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => Config::default(),
        };
        if let Some(v) = fuel_env {
            config.default_fuel = parse_fuel(v).with_context(|| format!("in {FUEL_ENV}"))?;
        }
        Ok(config)
    }
}

/// `BOUND,STEPS`.
pub fn parse_fuel(s: &str) -> Result<Fuel> {
    let Some((b, st)) = s.split_once(',') else { bail!("expected BOUND,STEPS, got {s:?}") };
    Ok(Fuel::new(b.trim().parse()?, st.trim().parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_env_override() {
        let c = Config::load(None, None).unwrap();
        assert_eq!(c.default_fuel, Fuel::default());
        let c = Config::load(None, Some("7, 900")).unwrap();
        assert_eq!(c.default_fuel, Fuel::new(7, 900));
        assert!(Config::load(None, Some("7")).is_err());
    }

    #[test]
    fn toml_round_trip() {
        let c = Config {
            default_fuel: Fuel::new(3, 40),
            theory_registry_paths: vec!["t".into()],
            output_format: OutputFormat::Machine,
        };
        let text = toml::to_string(&c).unwrap();
        assert_eq!(toml::from_str::<Config>(&text).unwrap(), c);
        assert!(toml::from_str::<Config>("bogus = 1").is_err());
    }
}
