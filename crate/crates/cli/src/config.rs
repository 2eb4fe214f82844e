//! Run configuration: defaults, then a JSON file, then command-line flags.

use std::path::Path;

use clap::ValueEnum;
use korenblum_core::SuiteConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    #[serde(flatten)]
    pub suite: SuiteConfig,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    pub depth: Option<u32>,
    pub angles: Option<usize>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self, String> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", p.display()))?
            }
            None => RunConfig::default(),
        };
        if let Some(s) = overrides.seed {
            cfg.suite.seed = s;
        }
        if let Some(d) = overrides.degree {
            cfg.suite.degree = d;
        }
        if let Some(k) = overrides.depth {
            cfg.suite.depth = k;
        }
        if let Some(m) = overrides.angles {
            cfg.suite.angles = m;
        }
        if overrides.format.is_some() {
            cfg.format = overrides.format;
        }
        cfg.suite.validate().map_err(|e| format!("invalid configuration: {e}"))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_then_flags() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"seed": 3, "depth": 10, "format": "csv", "classify": {{"band": 0.3}}}}"#).unwrap();
        let cfg = RunConfig::load(Some(file.path()), &Overrides { depth: Some(14), ..Default::default() }).unwrap();
        assert_eq!(cfg.suite.seed, 3);
        assert_eq!(cfg.suite.depth, 14);
        assert_eq!(cfg.suite.classify.band, 0.3);
        assert_eq!(cfg.suite.classify.window, 6);
        assert_eq!(cfg.format, Some(Format::Csv));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::load(None, &Overrides { degree: Some(4), ..Default::default() }).is_err());
        assert!(RunConfig::load(None, &Overrides { angles: Some(2), ..Default::default() }).is_err());
        assert!(RunConfig::load(Some(Path::new("/nonexistent/cfg.json")), &Overrides::default()).is_err());
    }
}
