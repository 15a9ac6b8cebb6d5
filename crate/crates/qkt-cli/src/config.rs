//! Optional TOML configuration.
//!
//! ```toml
//! n-max = 3
//! q-order = 2
//! cache-dir = "/var/cache/qkt"
//! ```

use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Environment variable naming the configuration file.
pub const CONFIG_ENV: &str = "QKT_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Config {
    pub n_max: Option<usize>,
    pub q_order: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
}

impl Config {
    pub fn from_toml(path: &Path, text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Parse { path: path.to_path_buf(), source })
    }

    pub fn read(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(path, &text)
    }

    /// Loads the file given on the command line, else the one named by
    /// [`CONFIG_ENV`], else the defaults.
    pub fn resolve(flag: Option<&Path>, env: Option<&str>) -> Result<Self, ConfigError> {
        match (flag, env.filter(|s| !s.is_empty())) {
            (Some(p), _) => Self::read(p),
            (None, Some(p)) => Self::read(Path::new(p)),
            (None, None) => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c = Config::from_toml(Path::new("x"), "n-max = 4\nq-order = 1\ncache-dir = \"/tmp/c\"\n").unwrap();
        assert_eq!(c, Config { n_max: Some(4), q_order: Some(1), cache_dir: Some(PathBuf::from("/tmp/c")) });
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::from_toml(Path::new("x"), "order = 4\n").is_err());
    }

    #[test]
    fn defaults_without_a_file() {
        assert_eq!(Config::resolve(None, None).unwrap(), Config::default());
        assert_eq!(Config::resolve(None, Some("")).unwrap(), Config::default());
    }
}
