//! Simple `key=value` configuration files overriding built-in defaults.
//! Command-line flags take precedence over config entries.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CmdError;

#[derive(Debug, Clone, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CmdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Validation(format!("cannot read config {path:?}: {e}")))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CmdError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CmdError::Validation(format!(
                    "config line {}: expected key=value, got `{line}`",
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    /// Flag beats config beats default.
    pub fn resolve<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CmdError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(text) => text.parse::<T>().map_err(|_| {
                CmdError::Validation(format!("config key {key}: cannot parse `{text}`"))
            }),
            None => Ok(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve() {
        let cfg = Config::parse("# comment\nshoot.grid = 512\n\nseed=9\n").unwrap();
        assert_eq!(cfg.get("shoot.grid"), Some("512"));
        assert_eq!(cfg.resolve(None, "shoot.grid", 2048usize).unwrap(), 512);
        assert_eq!(cfg.resolve(Some(64usize), "shoot.grid", 2048).unwrap(), 64);
        assert_eq!(cfg.resolve::<u64>(None, "missing", 5).unwrap(), 5);
        assert!(Config::parse("nonsense line").is_err());
        assert!(cfg.resolve::<usize>(None, "seed", 0).is_ok());
    }
}
