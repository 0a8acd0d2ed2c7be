//! Layered runtime configuration. Precedence: command-line flags, then
//! environment variables, then the optional TOML file, then defaults.

use std::env;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use serde::Deserialize;
use spectra_core::graph::GraphBudget;
use spectra_core::mersenne::DEFAULT_MAX_EXPONENT;

pub const ENV_CONFIG: &str = "SPECTRA_CONFIG";
pub const ENV_FACTOR_TIMEOUT_MS: &str = "SPECTRA_FACTOR_TIMEOUT_MS";
pub const ENV_CACHE_PATH: &str = "SPECTRA_CACHE_PATH";
pub const ENV_OUTPUT_FORMAT: &str = "SPECTRA_OUTPUT_FORMAT";
pub const ENV_MERSENNE_MAX_EXPONENT: &str = "SPECTRA_MERSENNE_MAX_EXPONENT";

const DEFAULT_FACTOR_TIMEOUT_MS: u64 = 60_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            other => Err(format!("unknown output format {other:?}; use text, json or dot")),
        }
    }
}

/// Global flags accepted before or after any subcommand.
#[derive(Debug, clap::Args)]
pub struct Overrides {
    /// TOML config file; flags and environment variables take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Wall-clock budget for factorization inside graph construction.
    #[arg(long, global = true, value_name = "MS")]
    pub factor_timeout_ms: Option<u64>,

    /// Factor cache file, seeded at startup and rewritten on exit.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache_path: Option<PathBuf>,

    /// Output format. graph defaults to dot, everything else to text.
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    pub format: Option<OutputFormat>,

    /// Default exponent ceiling for the mersenne subcommand.
    #[arg(long, global = true, value_name = "K")]
    pub mersenne_max_exponent: Option<u32>,
}

/// The file layer; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    factor_timeout_ms: Option<u64>,
    cache_path: Option<PathBuf>,
    output_format: Option<String>,
    mersenne_max_exponent: Option<u32>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub factor_timeout_ms: u64,
    pub cache_path: Option<PathBuf>,
    /// `None` means "subcommand default" (dot for graph, text otherwise).
    pub output_format: Option<OutputFormat>,
    pub mersenne_max_exponent: u32,
}

impl Config {
    pub fn resolve(flags: &Overrides) -> Result<Config, String> {
        let file = load_file(flags)?;

        let factor_timeout_ms = flags
            .factor_timeout_ms
            .or(env_parsed::<u64>(ENV_FACTOR_TIMEOUT_MS)?)
            .or(file.factor_timeout_ms)
            .unwrap_or(DEFAULT_FACTOR_TIMEOUT_MS);
        if factor_timeout_ms == 0 {
            return Err("factor timeout must be positive".into());
        }

        let cache_path = flags
            .cache_path
            .clone()
            .or_else(|| env::var_os(ENV_CACHE_PATH).map(PathBuf::from))
            .or(file.cache_path);

        let output_format = match flags.format {
            Some(f) => Some(f),
            None => match env_parsed::<OutputFormat>(ENV_OUTPUT_FORMAT)? {
                Some(f) => Some(f),
                None => file.output_format.as_deref().map(OutputFormat::from_str).transpose()?,
            },
        };

        let mersenne_max_exponent = flags
            .mersenne_max_exponent
            .or(env_parsed::<u32>(ENV_MERSENNE_MAX_EXPONENT)?)
            .or(file.mersenne_max_exponent)
            .unwrap_or(DEFAULT_MAX_EXPONENT);

        Ok(Config { factor_timeout_ms, cache_path, output_format, mersenne_max_exponent })
    }

    /// Format for the current subcommand, falling back to its default.
    pub fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.output_format.unwrap_or(default)
    }

    /// Graph construction budget honoring the configured timeout.
    pub fn graph_budget(&self) -> GraphBudget {
        GraphBudget {
            time_limit: Some(Duration::from_millis(self.factor_timeout_ms)),
            ..GraphBudget::default()
        }
    }
}

/// Reads the TOML layer. An explicitly named file must exist; with no
/// flag and no environment variable there is no file layer at all.
fn load_file(flags: &Overrides) -> Result<FileConfig, String> {
    let path = flags
        .config
        .clone()
        .or_else(|| env::var_os(ENV_CONFIG).map(PathBuf::from));
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

fn env_parsed<T: FromStr>(name: &str) -> Result<Option<T>, String>
where
    T::Err: std::fmt::Display,
{
    match env::var(name) {
        Ok(raw) => raw
            .parse()
            .map(Some)
            .map_err(|e| format!("bad {name}={raw:?}: {e}")),
        Err(_) => Ok(None),
    }
}
