use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

/// How F3 coefficients are printed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// -1, 0, 1
    #[default]
    Symmetric,
    /// 0, 1, 2
    Residue,
}

impl SignConvention {
    pub fn coeff(self, c: i8) -> String {
        match self {
            SignConvention::Symmetric => format!("{c:+}"),
            SignConvention::Residue => c.rem_euclid(3).to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub stem_min: Option<i32>,
    pub stem_max: Option<i32>,
    pub s_max: Option<i32>,
    pub sign: Option<SignConvention>,
    pub output_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Values set in `over` win.
    pub fn merge(self, over: Config) -> Config {
        Config {
            stem_min: over.stem_min.or(self.stem_min),
            stem_max: over.stem_max.or(self.stem_max),
            s_max: over.s_max.or(self.s_max),
            sign: over.sign.or(self.sign),
            output_dir: over.output_dir.or(self.output_dir),
        }
    }

    pub fn resolve_output(&self, file: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if file.is_relative() => dir.join(file),
            _ => file.to_path_buf(),
        }
    }
}
