//! Run configuration shared by the command-line tool and the verifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub format: Format,
    pub r_max: f64,
    pub samples: usize,
    pub l_max: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tol = Tolerances::default();
        RunConfig {
            rel_tol: tol.rtol,
            abs_tol: tol.atol,
            format: Format::Json,
            r_max: 12.0,
            samples: 256,
            l_max: 12,
        }
    }
}

impl RunConfig {
    pub fn validate(self) -> Result<Self> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Config(format!("rel_tol = {} must be positive", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Config(format!(
                "abs_tol = {} must be non-negative",
                self.abs_tol
            )));
        }
        if self.samples < 2 {
            return Err(Error::Config(format!("samples = {} must be >= 2", self.samples)));
        }
        if self.l_max < 4 {
            return Err(Error::Config(format!("L_max = {} must be >= 4", self.l_max)));
        }
        if !(self.r_max >= 1.0 && self.r_max.is_finite()) {
            return Err(Error::Config(format!("r_max = {} must be >= 1", self.r_max)));
        }
        Ok(self)
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            rtol: self.rel_tol,
            atol: self.abs_tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.rel_tol = 0.0));
        assert!(bad(|c| c.samples = 1));
        assert!(bad(|c| c.l_max = 3));
        assert!("xml".parse::<Format>().is_err());
    }
}
