//! Plain-text `key = value` configuration with `#` comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Every key the front end understands.
pub const KNOWN_KEYS: &[&str] = &[
    "family",
    "n",
    "p",
    "q",
    "zeta",
    "sigma",
    "l",
    "c",
    "alpha",
    "R0",
    "rho_l",
    "rho_core",
    "rho_coeff",
    "regime",
    "theta",
    "R_probe",
    "R_max",
    "cells",
    "cfl",
    "t_max",
    "ext_tol",
    "floor_eps",
    "outer_bc",
    "initial",
    "C",
    "T",
    "record_every",
    "out_path",
    "wall_clock",
    "max_steps",
    "sobolev_C",
    "probe_radii",
    "probe_powers",
];

const NUMERIC_KEYS: &[&str] = &[
    "n",
    "p",
    "q",
    "zeta",
    "sigma",
    "l",
    "c",
    "alpha",
    "R0",
    "rho_l",
    "rho_core",
    "rho_coeff",
    "R_probe",
    "R_max",
    "cells",
    "cfl",
    "t_max",
    "ext_tol",
    "floor_eps",
    "C",
    "T",
    "record_every",
    "wall_clock",
    "max_steps",
    "sobolev_C",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Validated key-value settings. Keys that are absent fall back to the
/// command's defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ));
            };
            cfg.set(key.trim(), value.trim())
                .map_err(|e| ConfigError(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !KNOWN_KEYS.contains(&key) {
            return err(format!("unknown key `{key}`"));
        }
        if value.is_empty() {
            return err(format!("key `{key}` has an empty value"));
        }
        if NUMERIC_KEYS.contains(&key) && parse_number(value).is_none() {
            return err(format!("key `{key}` expects a number, got `{value}`"));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Applies a `KEY=VALUE` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        match assignment.split_once('=') {
            Some((k, v)) => self.set(k.trim(), v.trim()),
            None => err(format!(
                "override `{assignment}` is not of the form KEY=VALUE"
            )),
        }
    }

    /// One `key = value` line per set key, in sorted order.
    pub fn dump(&self) -> String {
        self.values
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> f64 {
        self.f64_opt(key).unwrap_or(default)
    }

    pub fn f64_opt(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(parse_number)
    }

    pub fn u32_or(&self, key: &str, default: u32) -> Result<u32, ConfigError> {
        match self.f64_opt(key) {
            None => Ok(default),
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x <= f64::from(u32::MAX) => Ok(x as u32),
            Some(x) => err(format!(
                "key `{key}` must be a non-negative integer, got {x}"
            )),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        self.u32_or(key, default as u32).map(|x| x as usize)
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    /// Comma-separated list of numbers.
    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(raw) = self.get(key) else {
            return Ok(None);
        };
        raw.split(',')
            .map(|s| {
                parse_number(s.trim())
                    .ok_or_else(|| ConfigError(format!("key `{key}`: `{s}` is not a number")))
            })
            .collect::<Result<Vec<f64>, _>>()
            .map(Some)
    }
}

/// Parses a float; accepts `inf`/`infinity` and simple fractions `a/b`.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let (a, b) = (a.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?);
        return (b != 0.0).then(|| a / b);
    }
    let x = s.parse::<f64>().ok()?;
    (!x.is_nan()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_fractions() {
        let cfg =
            RunConfig::parse("# header\nn = 3  # dimension\ntheta = 12/7\n\nfamily=euclidean\n")
                .unwrap();
        assert_eq!(cfg.u32_or("n", 0).unwrap(), 3);
        assert!((cfg.f64_or("theta", 0.0) - 12.0 / 7.0).abs() < 1e-15);
        assert_eq!(cfg.str_or("family", ""), "euclidean");
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(RunConfig::parse("bogus = 1").is_err());
        assert!(RunConfig::parse("n 3").is_err());
        assert!(RunConfig::parse("p = two").is_err());
        assert!(RunConfig::parse("n = 2.5").unwrap().u32_or("n", 3).is_err());
    }

    #[test]
    fn infinity_is_a_number() {
        let cfg = RunConfig::parse("theta = inf").unwrap();
        assert!(cfg.f64_or("theta", 0.0).is_infinite());
    }

    #[test]
    fn dump_round_trips() {
        let cfg = RunConfig::parse("q = 0.5\nfamily = conformal\nprobe_radii = 1, 2,3\n").unwrap();
        assert_eq!(RunConfig::parse(&cfg.dump()).unwrap(), cfg);
        assert_eq!(cfg.list("probe_radii").unwrap(), Some(vec![1.0, 2.0, 3.0]));
    }
}
