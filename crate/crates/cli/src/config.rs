//! Run configuration: a flat JSON object, optionally read from a file, with
//! `key=value` overrides applied on top.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use spectool_core::jacobi::{CertifyOptions, EnsembleParams, JacobiOperator};
use spectool_core::lt::SweepConfig;
use spectool_core::{Complex64, Error as CoreError};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Eigenvalues of a finite section.
    Eig,
    /// Certified point spectrum of an operator.
    Spectrum,
    /// Perturbation determinants on a grid and along a ray.
    Det,
    /// Eigenvalue-sum inequalities over a random ensemble.
    LtSweep,
    /// Joukowski round trip, outer-function bounds and the annulus ratio scan.
    DiskCheck,
    /// Harmonic-measure, Blaschke-factor and elementary inequalities.
    LemmaCheck,
    /// Circle quadrature against Jensen's formula.
    JensenCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Eig => "eig",
            Self::Spectrum => "spectrum",
            Self::Det => "det",
            Self::LtSweep => "lt-sweep",
            Self::DiskCheck => "disk-check",
            Self::LemmaCheck => "lemma-check",
            Self::JensenCheck => "jensen-check",
        }
    }
}

/// Every tunable of every command. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// Operator for `eig`, `spectrum` and `det`.
    pub operator: JacobiOperator,
    pub support: usize,
    pub scale: f64,
    pub decay: f64,
    pub seed: u64,
    pub count: usize,
    pub p: u32,
    pub eps: f64,
    pub scales: Vec<f64>,
    pub n: usize,
    pub delta_n: usize,
    pub eta: f64,
    pub tol_match: f64,
    pub tol_tail: f64,
    /// Semi-axes of the elliptic `λ` grid used by `det`.
    pub ellipse: [f64; 2],
    pub grid_points: usize,
    /// Direction (radians) and number of samples of the `det` ray.
    pub ray_angle: f64,
    pub ray_points: usize,
    /// Also assert the `p = 1` disk bound in `det`.
    pub check_f1: bool,
    pub delta: f64,
    pub grid: usize,
    pub samples: usize,
    pub n_grid: usize,
    pub products: usize,
    pub workers: usize,
}

impl Default for Params {
    fn default() -> Self {
        let ens = EnsembleParams::default();
        let cert = CertifyOptions::default();
        Self {
            operator: JacobiOperator::rank_one(Complex64::new(2.0, 0.0)),
            support: ens.support,
            scale: ens.scale,
            decay: ens.decay,
            seed: ens.seed,
            count: 100,
            p: 1,
            eps: 0.1,
            scales: vec![1.0],
            n: cert.n,
            delta_n: cert.delta_n,
            eta: cert.eta,
            tol_match: cert.tol_match,
            tol_tail: cert.tol_tail,
            ellipse: [3.0, 0.8],
            grid_points: 20,
            ray_angle: 0.0,
            ray_points: 32,
            check_f1: false,
            delta: 0.3,
            grid: 200,
            samples: 10_000,
            n_grid: 4096,
            products: 20,
            workers: 1,
        }
    }
}

impl Params {
    pub fn ensemble(&self) -> EnsembleParams {
        EnsembleParams {
            support: self.support,
            scale: self.scale,
            decay: self.decay,
            seed: self.seed,
        }
    }

    pub fn certify(&self) -> CertifyOptions {
        CertifyOptions {
            n: self.n,
            delta_n: self.delta_n,
            eta: self.eta,
            tol_match: self.tol_match,
            tol_tail: self.tol_tail,
        }
    }

    pub fn sweep(&self) -> SweepConfig {
        SweepConfig {
            params: self.ensemble(),
            count: self.count,
            p: self.p,
            eps: self.eps,
            scales: self.scales.clone(),
            certify: self.certify(),
            workers: self.workers,
        }
    }

    /// Checks the keys `command` reads.
    pub fn validate(&self, command: Command) -> Result<(), CliError> {
        let positive = |key: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CliError::Config {
                    key: key.into(),
                    reason: "must be positive".into(),
                })
            }
        };
        let at_least = |key: &'static str, v: usize, min: usize| {
            if v >= min {
                Ok(())
            } else {
                Err(CliError::Config {
                    key: key.into(),
                    reason: format!("must be at least {min}"),
                })
            }
        };
        at_least("workers", self.workers, 1)?;
        match command {
            Command::Eig => at_least("n", self.n, self.operator.min_truncation())?,
            Command::Spectrum => self
                .certify()
                .validate(self.operator.support())
                .map_err(config_error)?,
            Command::Det => {
                at_least("p", self.p as usize, 1)?;
                at_least("n", self.n, self.operator.min_truncation())?;
                at_least("grid_points", self.grid_points, 1)?;
                at_least("ray_points", self.ray_points, 2)?;
                positive("ellipse", self.ellipse[0].min(self.ellipse[1]))?;
                if !self.ray_angle.is_finite() {
                    return Err(CliError::Config {
                        key: "ray_angle".into(),
                        reason: "must be finite".into(),
                    });
                }
            }
            Command::LtSweep => self.sweep().validate().map_err(config_error)?,
            Command::DiskCheck => {
                at_least("samples", self.samples, 1)?;
                at_least("grid", self.grid, 2)?;
                if !(self.delta > 0.0 && self.delta < spectool_core::lt::LEMMA3_OUTER_RADIUS) {
                    return Err(CliError::Config {
                        key: "delta".into(),
                        reason: "must lie in (0, 0.999)".into(),
                    });
                }
            }
            Command::LemmaCheck => at_least("samples", self.samples, 1)?,
            Command::JensenCheck => {
                at_least("products", self.products, 1)?;
                at_least("n_grid", self.n_grid, 1)?;
            }
        }
        Ok(())
    }

    /// Parameters that determine the results, i.e. everything except the
    /// worker count.
    pub fn echo(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("params serialise");
        if let Value::Object(m) = &mut v {
            m.remove("workers");
        }
        v
    }
}

fn config_error(e: CoreError) -> CliError {
    match e {
        CoreError::InvalidParameter { name, reason } => CliError::Config {
            key: name.into(),
            reason,
        },
        other => CliError::Config {
            key: "config".into(),
            reason: other.to_string(),
        },
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub out: PathBuf,
}

/// `value` as JSON when it parses, otherwise as a string.
fn parse_value(value: &str) -> Value {
    serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()))
}

impl RunConfig {
    /// Builds a configuration from an optional JSON file, `key=value`
    /// overrides and the explicit `--workers` flag, in increasing priority.
    pub fn load(
        command: Command,
        file: Option<&Path>,
        overrides: &[String],
        out: PathBuf,
        workers: Option<usize>,
    ) -> Result<Self, CliError> {
        let mut map = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                match serde_json::from_str::<Value>(&text) {
                    Ok(Value::Object(m)) => m,
                    Ok(_) => {
                        return Err(CliError::Config {
                            key: path.display().to_string(),
                            reason: "config file must hold a JSON object".into(),
                        })
                    }
                    Err(e) => {
                        return Err(CliError::Config {
                            key: path.display().to_string(),
                            reason: e.to_string(),
                        })
                    }
                }
            }
            None => Map::new(),
        };
        for item in overrides {
            let Some((key, value)) = item.split_once('=') else {
                return Err(CliError::Config {
                    key: item.clone(),
                    reason: "expected key=value".into(),
                });
            };
            map.insert(key.trim().to_string(), parse_value(value.trim()));
        }
        if let Some(w) = workers {
            map.insert("workers".into(), Value::from(w));
        }
        let params = Self::params_from(map)?;
        params.validate(command)?;
        Ok(Self {
            command,
            params,
            out,
        })
    }

    fn params_from(map: Map<String, Value>) -> Result<Params, CliError> {
        // deserialise key by key so that a bad value names its key
        let known = serde_json::to_value(Params::default()).expect("params serialise");
        let Value::Object(known) = known else {
            unreachable!()
        };
        for (key, value) in &map {
            if !known.contains_key(key) {
                let keys: Vec<&str> = known.keys().map(String::as_str).collect();
                return Err(CliError::Config {
                    key: key.clone(),
                    reason: format!("unknown key; expected one of: {}", keys.join(", ")),
                });
            }
            let mut probe = Map::new();
            probe.insert(key.clone(), value.clone());
            serde_json::from_value::<Params>(Value::Object(probe)).map_err(|e| {
                CliError::Config {
                    key: key.clone(),
                    reason: e.to_string(),
                }
            })?;
        }
        serde_json::from_value(Value::Object(map)).map_err(|e| CliError::Config {
            key: "config".into(),
            reason: e.to_string(),
        })
    }
}
