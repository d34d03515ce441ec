//! Run configuration with layered precedence: command-line flags
//! override `MPFOCK_*` environment variables, which override the
//! optional JSON config file, which overrides built-in defaults.

use std::path::PathBuf;

use serde::Deserialize;

use mpfock::fock::{DEFAULT_DIM, DEFAULT_MARGIN, DEFAULT_TOL};
use mpfock::TruncationConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dim: usize,
    pub tol: f64,
    pub margin: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// True when the dimension was set explicitly (flag, env or file);
    /// commands that auto-scale their truncation only do so otherwise.
    pub dim_explicit: bool,
}

/// The config-file schema: any subset of the RunConfig fields.
#[derive(Debug, Default, Deserialize)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub tol: Option<f64>,
    pub margin: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

pub struct GlobalArgs {
    pub dim: Option<usize>,
    pub tol: Option<f64>,
    pub margin: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub config: Option<PathBuf>,
}

fn env_parse<T: std::str::FromStr>(key: &str) -> Result<Option<T>, String> {
    match std::env::var(key) {
        Ok(value) => value
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("cannot parse {key}={value}")),
        Err(_) => Ok(None),
    }
}

fn parse_format(value: &str) -> Result<OutputFormat, String> {
    match value {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(format!("unknown format {other:?}; expected json or csv")),
    }
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, String> {
        let config_path = args
            .config
            .clone()
            .or_else(|| std::env::var("MPFOCK_CONFIG").ok().map(PathBuf::from));
        let file: FileConfig = match &config_path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| format!("cannot parse config {}: {e}", path.display()))?
            }
            None => FileConfig::default(),
        };

        let env_dim: Option<usize> = env_parse("MPFOCK_DIM")?;
        let env_tol: Option<f64> = env_parse("MPFOCK_TOL")?;
        let env_margin: Option<usize> = env_parse("MPFOCK_MARGIN")?;
        let env_format = match std::env::var("MPFOCK_FORMAT") {
            Ok(value) => Some(parse_format(&value)?),
            Err(_) => None,
        };
        let env_out: Option<PathBuf> = std::env::var("MPFOCK_OUT").ok().map(PathBuf::from);

        let file_format = match &file.format {
            Some(value) => Some(parse_format(value)?),
            None => None,
        };

        let dim_explicit = args.dim.is_some() || env_dim.is_some() || file.dim.is_some();
        Ok(Self {
            dim: args.dim.or(env_dim).or(file.dim).unwrap_or(DEFAULT_DIM),
            tol: args.tol.or(env_tol).or(file.tol).unwrap_or(DEFAULT_TOL),
            margin: args
                .margin
                .or(env_margin)
                .or(file.margin)
                .unwrap_or(DEFAULT_MARGIN),
            format: args.format.or(env_format).or(file_format).unwrap_or(OutputFormat::Csv),
            out: args.out.clone().or(env_out).or(file.out),
            dim_explicit,
        })
    }

    pub fn truncation(&self) -> mpfock::Result<TruncationConfig> {
        TruncationConfig::new(self.dim, self.tol, self.margin)
    }

    pub fn truncation_with_dim(&self, dim: usize) -> mpfock::Result<TruncationConfig> {
        TruncationConfig::new(dim, self.tol, self.margin.min(dim - 1))
    }
}
