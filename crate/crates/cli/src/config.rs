//! TOML run configuration. Each command reads its own table; command-line
//! flags take precedence over file values.
//!
//! ```toml
//! [character]
//! order = 40
//!
//! [fock]
//! e2_max = 12
//!
//! [inner]
//! phi = "blaschke:0+1i"
//! grid = 16384
//!
//! [production]
//! phi = "exp:kappa=2"
//! s = "0.1:10:50"
//! tol = 1e-7
//! grid = 8
//!
//! [scatter]
//! phi = "blaschke:0+1i"
//! s = "0.1:10:20"
//!
//! [suite]
//! elastic = ["exp:kappa=1,theta=0"]
//! production = ["blaschke:0+1i"]
//!
//! [output]
//! format = "json"
//! out = "report.json"
//! ```

use crate::CliError;
use chiral_lab::suite::SuiteConfig;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub character: Option<CharacterSection>,
    pub fock: Option<FockSection>,
    pub inner: Option<PhiSection>,
    pub production: Option<PhiSection>,
    pub scatter: Option<PhiSection>,
    pub suite: Option<SuiteConfig>,
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSection {
    pub order: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockSection {
    pub e2_max: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSection {
    pub phi: Option<String>,
    pub s: Option<String>,
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub max_panels: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Usage(e.to_string()))?;
        if cfg == RunConfig::default() {
            return Err(CliError::Usage("config file has no sections".into()));
        }
        Ok(cfg)
    }
}
