use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

/// Environment variable naming the JSON config file.
pub const CONFIG_ENV: &str = "COFILT_CONFIG";

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest module or coalgebra dimension a job may touch.
    pub max_ambient_dim: usize,
    /// Largest `dim CH^n` a cobar job may build.
    pub max_ch_size: usize,
    pub max_dmax: u32,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_ambient_dim: 20_000,
            max_ch_size: 200_000,
            max_dmax: 128,
            cache_dir: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// The file named by [`CONFIG_ENV`], or the defaults when it is unset.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}
