//! Flat `key = value` run configuration with `#` comments.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::hilbert::PhysicalConstants;
use crate::models::{LinearModelParams, NonlinearModelParams};
use crate::sweep::SweepConfig;

/// Every key a config file may set.
pub const CONFIG_KEYS: [&str; 18] = [
    "model",
    "pair",
    "lambda",
    "gamma",
    "alpha",
    "hbar",
    "mass",
    "omega",
    "dim",
    "margin",
    "theta_start",
    "theta_end",
    "theta_steps",
    "min_amplitude",
    "state_i",
    "state_j",
    "out_csv",
    "out_plot",
];

pub const DEFAULT_OUT_CSV: &str = "sweep.csv";

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub sweep: SweepConfig,
    pub out_csv: PathBuf,
    pub out_plot: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sweep: SweepConfig::default(),
            out_csv: PathBuf::from(DEFAULT_OUT_CSV),
            out_plot: None,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses config text on top of the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = split_assignment(line)
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
            cfg.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, strip_prefix(e))))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `key=value` overrides, then revalidates.
    pub fn apply_overrides<'a>(&mut self, overrides: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for item in overrides {
            let (key, value) = split_assignment(item)?;
            self.set(key, value)?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        self.sweep.validate()
    }

    /// Sets one key. Physical parameters are checked as they are set.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let s = &mut self.sweep;
        match key {
            "model" => s.model = value.parse()?,
            "pair" => s.pair = value.parse()?,
            "lambda" => s.linear = LinearModelParams::new(number(key, value)?, s.linear.gamma)?,
            "gamma" => s.linear = LinearModelParams::new(s.linear.lambda, number(key, value)?)?,
            "alpha" => s.nonlinear = NonlinearModelParams::new(number(key, value)?)?,
            "hbar" => s.consts = PhysicalConstants::new(number(key, value)?, s.consts.mass, s.consts.omega)?,
            "mass" => s.consts = PhysicalConstants::new(s.consts.hbar, number(key, value)?, s.consts.omega)?,
            "omega" => s.consts = PhysicalConstants::new(s.consts.hbar, s.consts.mass, number(key, value)?)?,
            "dim" => s.dim = integer(key, value)?,
            "margin" => s.margin = integer(key, value)?,
            "theta_start" => s.theta_start = angle(key, value)?,
            "theta_end" => s.theta_end = angle(key, value)?,
            "theta_steps" => s.theta_steps = integer(key, value)?,
            "min_amplitude" => s.min_amplitude = number(key, value)?,
            "state_i" => s.state_i = value.parse()?,
            "state_j" => s.state_j = value.parse()?,
            "out_csv" => self.out_csv = path(key, value)?,
            "out_plot" => self.out_plot = Some(path(key, value)?),
            other => {
                return Err(Error::Config(format!(
                    "unknown key `{other}` (valid keys: {})",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }
}

fn strip_prefix(e: Error) -> String {
    match e {
        Error::Config(msg) => msg,
        other => other.to_string(),
    }
}

fn split_assignment(line: &str) -> Result<(&str, &str)> {
    let (key, value) = line
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("expected `key = value`, got `{line}`")))?;
    let (key, value) = (key.trim(), value.trim());
    if key.is_empty() {
        return Err(Error::Config(format!("missing key in `{line}`")));
    }
    Ok((key, value))
}

fn number(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("`{key}` needs a finite number, got `{value}`")))
}

fn integer(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}` needs a non-negative integer, got `{value}`")))
}

/// A number, optionally in units of π: `1.5`, `pi`, `2pi`, `0.5*pi`.
fn angle(key: &str, value: &str) -> Result<f64> {
    let lower = value.to_ascii_lowercase();
    match lower.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.trim().trim_end_matches('*').trim();
            if coef.is_empty() {
                Ok(PI)
            } else {
                Ok(number(key, coef)? * PI)
            }
        }
        None => number(key, value),
    }
}

fn path(key: &str, value: &str) -> Result<PathBuf> {
    if value.is_empty() {
        return Err(Error::Config(format!("`{key}` needs a path")));
    }
    Ok(PathBuf::from(value))
}
