use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tacton::guidance::GuidanceConfig;
use thiserror::Error;

/// Environment variable that replaces the port of `listen`.
pub const PORT_ENV: &str = "TACTONS_PORT";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("{PORT_ENV}={0:?} is not a port number")]
    Port(String),
}

/// Service configuration, usually read from a TOML file:
///
/// ```toml
/// listen = "127.0.0.1:8765"
/// catalog = "catalog.json"
/// world_dir = "worlds"
/// log_dir = "logs"
/// virtual_time = false
///
/// [guidance]
/// maze_cues = "wave_set3_radials"
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_listen")]
    pub listen: SocketAddr,
    /// Catalog overrides applied on top of the built-in catalog.
    #[serde(default)]
    pub catalog: Option<PathBuf>,
    /// Extra worlds in `mazes/*.txt` and `circuits/*.json`.
    #[serde(default)]
    pub world_dir: Option<PathBuf>,
    /// Where finished sessions write their trial log.
    #[serde(default)]
    pub log_dir: Option<PathBuf>,
    #[serde(default)]
    pub virtual_time: bool,
    #[serde(default)]
    pub guidance: GuidanceConfig,
}

fn default_listen() -> SocketAddr {
    SocketAddr::from(([127, 0, 0, 1], 8765))
}

impl Default for Config {
    fn default() -> Self {
        Self {
            listen: default_listen(),
            catalog: None,
            world_dir: None,
            log_dir: None,
            virtual_time: false,
            guidance: GuidanceConfig::default(),
        }
    }
}

impl Config {
    /// Parses a config file. Relative paths inside it are taken relative
    /// to the file's directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        let mut config: Config = toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_owned(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut config.catalog,
            &mut config.world_dir,
            &mut config.log_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(config)
    }

    /// Applies a port override such as the value of [`PORT_ENV`].
    pub fn with_port_override(mut self, port: Option<&str>) -> Result<Self, ConfigError> {
        if let Some(text) = port {
            let port = text
                .trim()
                .parse()
                .map_err(|_| ConfigError::Port(text.to_owned()))?;
            self.listen.set_port(port);
        }
        Ok(self)
    }

    pub fn with_env(self) -> Result<Self, ConfigError> {
        let port = std::env::var(PORT_ENV).ok();
        self.with_port_override(port.as_deref())
    }
}
