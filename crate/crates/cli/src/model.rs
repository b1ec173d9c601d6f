//! Loading a Hamiltonian from command-line flags or a config file.

use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use ptmetric::config::load_config;
use ptmetric::hamiltonian::{lambda_to_alpha, preset, AlphaParams, LambdaParams, Preset, PresetParams};
use ptmetric::parse::parse_scalar;
use ptmetric::{CycloScalar, Error, Result};

#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    /// Ten comma-separated exact values α₁..α₁₀, e.g. `0,1/2,0,0,1/2,-1/2,0,1,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Ten comma-separated ladder coefficients λ₁..λ₁₀ (needs `--g`).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// A named model; see `presets`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Coupling, exact (`1/10`, `0.05`, `1/2*r2`).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long = "Delta", allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// TOML model file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn value(flag: &str, v: &Option<String>) -> Result<Option<CycloScalar>> {
    v.as_deref()
        .map(|s| {
            parse_scalar(s).map_err(|e| Error::Config {
                key: flag.into(),
                msg: e.to_string(),
            })
        })
        .transpose()
}

fn list(flag: &str, s: &str) -> Result<[CycloScalar; 10]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 10 {
        return Err(Error::Config {
            key: flag.into(),
            msg: format!("expected 10 comma-separated values, found {}", parts.len()),
        });
    }
    let mut out: [CycloScalar; 10] = Default::default();
    for (k, p) in parts.iter().enumerate() {
        out[k] = value(&format!("{flag}[{}]", k + 1), &Some(p.to_string()))?.unwrap();
    }
    Ok(out)
}

impl ModelArgs {
    pub fn load(&self) -> Result<AlphaParams> {
        let given = [self.alpha.is_some(), self.lambda.is_some(), self.preset.is_some(), self.config.is_some()];
        if given.iter().filter(|b| **b).count() != 1 {
            return Err(Error::Config {
                key: "--alpha/--lambda/--preset/--config".into(),
                msg: "give exactly one model source".into(),
            });
        }
        let g = value("--g", &self.g)?;
        if let Some(path) = &self.config {
            return load_config(path);
        }
        if let Some(s) = &self.alpha {
            return Ok(AlphaParams::new(list("--alpha", s)?, g.unwrap_or_else(CycloScalar::one)));
        }
        if let Some(s) = &self.lambda {
            let g = g.ok_or_else(|| Error::Config {
                key: "--g".into(),
                msg: "required with --lambda".into(),
            })?;
            return lambda_to_alpha(&LambdaParams::new(list("--lambda", s)?), &g);
        }
        let name = self.preset.as_deref().unwrap();
        let params = PresetParams {
            delta: value("--Delta", &self.delta)?,
            m: value("--m", &self.m)?,
            lambda1: value("--lambda1", &self.lambda1)?,
            lambda2: value("--lambda2", &self.lambda2)?,
            g,
        };
        preset(Preset::from_str(name)?, &params)
    }
}
