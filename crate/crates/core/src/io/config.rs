//! TOML scenario files.

use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::ScenarioConfig;

/// Parses and validates a scenario document. Returns the config and any
/// non-fatal warnings.
pub fn parse_config(text: &str) -> Result<(ScenarioConfig, Vec<String>)> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let warnings = cfg.validate()?;
    Ok((cfg, warnings))
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)?;
    let (cfg, warnings) = parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(cfg)
}
