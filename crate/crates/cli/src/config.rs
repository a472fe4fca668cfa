use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Dickson,
    Symplectic,
    Thm52,
    Prop64,
    Lemma71,
    Thm72,
    Prop81,
    Lemma83,
    Kernel,
    All,
}

impl Suite {
    /// Every concrete suite, in run order.
    pub const ORDERED: [Suite; 9] = [
        Suite::Dickson,
        Suite::Symplectic,
        Suite::Thm52,
        Suite::Prop64,
        Suite::Lemma71,
        Suite::Thm72,
        Suite::Prop81,
        Suite::Lemma83,
        Suite::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dickson => "dickson",
            Suite::Symplectic => "symplectic",
            Suite::Thm52 => "thm52",
            Suite::Prop64 => "prop64",
            Suite::Lemma71 => "lemma71",
            Suite::Thm72 => "thm72",
            Suite::Prop81 => "prop81",
            Suite::Lemma83 => "lemma83",
            Suite::Kernel => "kernel",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Suite as ValueEnum>::from_str(s.trim(), true)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s.trim(), true)
    }
}

/// A resolved `verify` invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub p: u32,
    pub n: usize,
    pub suites: Vec<Suite>,
    pub degree_bound: Option<u32>,
    pub jobs: Option<usize>,
    pub format: Format,
    pub seed: u64,
    pub timing: bool,
    /// Cap on the Lagrangians used as base points in the theorem 5.2
    /// suite; they are spread evenly over the enumeration order.
    pub base_points: Option<usize>,
    pub allow_large: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            p: 3,
            n: 2,
            suites: vec![Suite::All],
            degree_bound: None,
            jobs: None,
            format: Format::Text,
            seed: 0,
            timing: false,
            base_points: None,
            allow_large: false,
        }
    }
}

impl SuiteConfig {
    /// The selected suites with `all` expanded, deduplicated, in run order.
    pub fn expanded_suites(&self) -> Vec<Suite> {
        if self.suites.contains(&Suite::All) {
            return Suite::ORDERED.to_vec();
        }
        Suite::ORDERED.into_iter().filter(|s| self.suites.contains(s)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

/// Settings read from a `key = value` file. Blank lines and lines starting
/// with `#` are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub p: Option<u32>,
    pub n: Option<usize>,
    pub suites: Vec<Suite>,
    pub degree_bound: Option<u32>,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub timing: Option<bool>,
    pub base_points: Option<usize>,
    pub allow_large: Option<bool>,
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError { line, message: format!("invalid value {value:?} for {key}") })
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) =
                trimmed.split_once('=').ok_or_else(|| ConfigError { line, message: "expected key = value".into() })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "p" => cfg.p = Some(parse_value(line, &key, value)?),
                "n" => cfg.n = Some(parse_value(line, &key, value)?),
                "suite" | "suites" => {
                    for part in value.split(',').filter(|s| !s.trim().is_empty()) {
                        cfg.suites.push(part.parse().map_err(|e| ConfigError { line, message: e })?);
                    }
                }
                "degree_bound" => cfg.degree_bound = Some(parse_value(line, &key, value)?),
                "jobs" => cfg.jobs = Some(parse_value(line, &key, value)?),
                "format" => cfg.format = Some(value.parse().map_err(|e| ConfigError { line, message: e })?),
                "seed" => cfg.seed = Some(parse_value(line, &key, value)?),
                "timing" => cfg.timing = Some(parse_value(line, &key, value)?),
                "base_points" => cfg.base_points = Some(parse_value(line, &key, value)?),
                "allow_large" => cfg.allow_large = Some(parse_value(line, &key, value)?),
                _ => return Err(ConfigError { line, message: format!("unknown key {key:?}") }),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let cfg =
            FileConfig::parse("# grid\np = 5\nn=1\nsuite = thm52, prop64\nformat = json\ndegree-bound = 8\n").unwrap();
        assert_eq!(cfg.p, Some(5));
        assert_eq!(cfg.n, Some(1));
        assert_eq!(cfg.suites, vec![Suite::Thm52, Suite::Prop64]);
        assert_eq!(cfg.format, Some(Format::Json));
        assert_eq!(cfg.degree_bound, Some(8));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert_eq!(FileConfig::parse("colour = red").unwrap_err().line, 1);
        assert!(FileConfig::parse("\np = three").unwrap_err().to_string().contains("line 2"));
        assert!(FileConfig::parse("suite = everything").is_err());
        assert!(FileConfig::parse("no equals sign").is_err());
    }

    #[test]
    fn all_expands_in_order() {
        let cfg = SuiteConfig { suites: vec![Suite::Kernel, Suite::Dickson, Suite::Kernel], ..SuiteConfig::default() };
        assert_eq!(cfg.expanded_suites(), vec![Suite::Dickson, Suite::Kernel]);
        assert_eq!(SuiteConfig::default().expanded_suites().len(), 9);
        assert_eq!(Suite::Thm52.name(), "thm52");
    }
}
