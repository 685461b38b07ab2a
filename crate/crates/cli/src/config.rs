//! Problem files: TOML behind a versioned header line.
//!
//! ```text
//! # gkz-config v1
//! A = [[1, 1, 1, 1], [0, 1, 2, 3]]
//! beta = ["0", "1"]
//! w = ["1", "3", "0", "0"]
//! basis = [[-1, 1, 1, -1], [1, 0, -3, 2]]   # optional, columns of B
//! radius = 12                               # optional
//! weight_cap = "8"                          # optional
//! degree_cap = 8                            # optional
//! exponent = ["0", "0", "-1", "1"]          # optional, default for solve
//! ```

use gkz_core::lattice::{check_homogeneous, kernel_basis, set_basis, LatticeBasis, MatrixA};
use gkz_core::rational::parse_rational;
use gkz_core::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "# gkz-config v1";

fn default_radius() -> i64 {
    12
}

fn default_weight_cap() -> String {
    "8".into()
}

fn default_degree_cap() -> u32 {
    8
}

/// The raw document, kept as written so it round-trips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub beta: Vec<String>,
    pub w: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    #[serde(default = "default_radius")]
    pub radius: i64,
    #[serde(default = "default_weight_cap")]
    pub weight_cap: String,
    #[serde(default = "default_degree_cap")]
    pub degree_cap: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<Vec<String>>,
}

/// A validated problem with exact values.
#[derive(Clone, Debug)]
pub struct Problem {
    pub a: MatrixA,
    pub beta: Vec<Rational>,
    pub w: Vec<Rational>,
    pub b: LatticeBasis,
    pub radius: i64,
    pub weight_cap: Rational,
    pub degree_cap: u32,
    pub exponent: Option<Vec<Rational>>,
}

fn rationals(what: &str, xs: &[String]) -> CliResult<Vec<Rational>> {
    xs.iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::Config(format!("{what}: {e}"))))
        .collect()
}

impl ProblemConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        if first.trim_end() != HEADER {
            return Err(CliError::Config(format!("first line must be `{HEADER}`")));
        }
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        let body = toml::to_string(self).expect("config serialises");
        format!("{HEADER}\n{body}")
    }

    pub fn resolve(&self) -> CliResult<Problem> {
        let a = MatrixA::new(self.a.clone())?;
        let beta = rationals("beta", &self.beta)?;
        let w = rationals("w", &self.w)?;
        if beta.len() != a.d() {
            return Err(CliError::Config(format!("beta has length {}, A has {} rows", beta.len(), a.d())));
        }
        if w.len() != a.n() {
            return Err(CliError::Config(format!("w has length {}, A has {} columns", w.len(), a.n())));
        }
        if !check_homogeneous(&a) {
            return Err(gkz_core::Error::NotHomogeneous.into());
        }
        let b = match &self.basis {
            Some(cols) => set_basis(&a, cols.clone())?,
            None => kernel_basis(&a)?,
        };
        if self.radius < 0 {
            return Err(CliError::Config("radius must be nonnegative".into()));
        }
        let weight_cap = parse_rational(&self.weight_cap).map_err(|e| CliError::Config(format!("weight_cap: {e}")))?;
        let exponent = match &self.exponent {
            Some(v) => {
                let v = rationals("exponent", v)?;
                if v.len() != a.n() {
                    return Err(CliError::Config(format!("exponent has length {}, A has {} columns", v.len(), a.n())));
                }
                Some(v)
            }
            None => None,
        };
        Ok(Problem { a, beta, w, b, radius: self.radius, weight_cap, degree_cap: self.degree_cap, exponent })
    }
}
