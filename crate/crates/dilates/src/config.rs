//! Flat key-value experiment configuration: `key: value` lines, `#` comments,
//! JSON syntax for nested lists. Command-line flags override file entries.

use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, Debug, Default)]
pub struct ExperimentConfig {
    entries: HashMap<String, String>,
}

impl ExperimentConfig {
    pub fn parse(content: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse(format!(
                    "line {}: expected `key: value`",
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ExperimentConfig { entries })
    }

    pub fn load(path: &str) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    /// CLI value wins; config supplies the default.
    pub fn pick<'a>(&'a self, cli: Option<&'a str>, key: &str) -> Option<&'a str> {
        cli.or_else(|| self.get(key))
    }

    pub fn pick_owned(&self, cli: Option<String>, key: &str) -> Option<String> {
        cli.or_else(|| self.get(key).map(|s| s.to_string()))
    }

    pub fn list(&self, key: &str) -> Option<Vec<String>> {
        // JSON list of strings or comma-separated
        let raw = self.get(key)?;
        if let Ok(v) = serde_json::from_str::<Vec<String>>(raw) {
            return Some(v);
        }
        Some(raw.split(',').map(|s| s.trim().to_string()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values() {
        let c = ExperimentConfig::parse("field: t^2-2\n# comment\ndilates: [\"t\"]\n").unwrap();
        assert_eq!(c.get("field"), Some("t^2-2"));
        assert_eq!(c.list("dilates"), Some(vec!["t".to_string()]));
    }

    #[test]
    fn cli_overrides() {
        let c = ExperimentConfig::parse("width: 1e-6\n").unwrap();
        assert_eq!(c.pick(Some("1e-9"), "width"), Some("1e-9"));
        assert_eq!(c.pick(None, "width"), Some("1e-6"));
    }
}
