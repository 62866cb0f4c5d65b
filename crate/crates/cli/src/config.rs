//! Flat `key = value` config files. Keys mirror the long flags; flags
//! given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "n", "alpha", "p", "out", "stable", "seed", "threads", "curves", "alphas", "alpha-grid", "plot",
    "trials", "degree", "phi", "beta",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {}: expected key = value", i + 1)));
            };
            let key = k.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!("line {}: unknown key '{key}'", i + 1)));
            }
            if values.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key '{key}'", i + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// `flag`, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config(format!("bad value for '{key}': '{v}'"))),
        }
    }

    /// Boolean switches are on when given as a flag or set to
    /// `true`/`1`/`yes` in the file.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.raw(key) {
            None | Some("false" | "0" | "no") => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some(v) => Err(CliError::Config(format!("bad value for '{key}': '{v}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_override() {
        let c = Config::parse("# sweep\nn = 200\nalpha_grid = 0.1:2:5 # trailing\nstable = yes\n").unwrap();
        assert_eq!(c.pick(None, "n", 1000usize).unwrap(), 200);
        assert_eq!(c.pick(Some(50usize), "n", 1000).unwrap(), 50);
        assert_eq!(c.raw("alpha-grid"), Some("0.1:2:5"));
        assert!(c.switch(false, "stable").unwrap());
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("n = 1\nn = 2").is_err());
        assert!(Config::parse("n").is_err());
        assert!(c.pick::<f64>(None, "alpha-grid", 0.0).is_err());
    }
}
