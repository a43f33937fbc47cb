//! Run configuration, read from TOML.

use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Rational;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("n must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("{field} has {got} entries, expected n = {n}")]
    Length {
        field: &'static str,
        got: usize,
        n: usize,
    },
    #[error("tol must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("c_omega must be finite")]
    Omega,
    #[error("mc_samples must be at least 2")]
    Samples,
    #[error("no suites requested")]
    NoSuites,
    #[error("a must have three entries")]
    VectorLength,
    #[error("cannot parse {0:?} as a rational")]
    Rational(String),
}

/// A named group of checks.
#[derive(
    Clone,
    Copy,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ExactAlgebra,
    Stabilizer,
    Uniqueness,
    Equivariance,
    Domination,
    Nonvanishing,
    CrossMethod,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ExactAlgebra,
        Suite::Stabilizer,
        Suite::Uniqueness,
        Suite::Equivariance,
        Suite::Domination,
        Suite::Nonvanishing,
        Suite::CrossMethod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExactAlgebra => "exact-algebra",
            Suite::Stabilizer => "stabilizer",
            Suite::Uniqueness => "uniqueness",
            Suite::Equivariance => "equivariance",
            Suite::Domination => "domination",
            Suite::Nonvanishing => "nonvanishing",
            Suite::CrossMethod => "cross-method",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

fn default_a() -> Vec<String> {
    vec!["1".into(), "-1".into(), "-1/2".into()]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    /// `ν` as `[re, im]` pairs.
    pub nu: Vec<[f64; 2]>,
    pub eta_bits: Vec<bool>,
    /// The character vector `(a, b, c)` as decimal or `p/q` strings.
    #[serde(default = "default_a")]
    pub a: Vec<String>,
    pub c_omega: f64,
    pub tol: f64,
    pub mc_samples: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            nu: vec![[3.0, 0.0], [2.0, 0.0]],
            eta_bits: vec![false, false],
            a: default_a(),
            c_omega: 0.25,
            tol: 1e-6,
            mc_samples: 1_000_000,
            seed: 2024,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 2 {
            return Err(ConfigError::RankTooSmall(self.n));
        }
        for (field, got) in [("nu", self.nu.len()), ("eta_bits", self.eta_bits.len())] {
            if got != self.n {
                return Err(ConfigError::Length {
                    field,
                    got,
                    n: self.n,
                });
            }
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(ConfigError::Tolerance(self.tol));
        }
        if !self.c_omega.is_finite() {
            return Err(ConfigError::Omega);
        }
        if self.mc_samples < 2 {
            return Err(ConfigError::Samples);
        }
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuites);
        }
        self.abc()?;
        Ok(())
    }

    pub fn nu_complex(&self) -> Vec<Complex64> {
        self.nu
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect()
    }

    pub fn abc(&self) -> Result<[Rational; 3], ConfigError> {
        let parsed: Vec<Rational> = self
            .a
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_, _>>()?;
        parsed.try_into().map_err(|_| ConfigError::VectorLength)
    }
}

/// `p`, `p/q` or a terminating decimal.
pub fn parse_rational(s: &str) -> Result<Rational, ConfigError> {
    let bad = || ConfigError::Rational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == num_bigint::BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_bigint::BigInt::from(10).pow(frac.len() as u32);
    Ok(Rational::new(digits, scale))
}
