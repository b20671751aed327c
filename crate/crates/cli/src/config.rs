//! Shared pipeline settings, loadable from a TOML file. Every field has a
//! default; command-line flags override whatever the file sets.

use std::path::{Path, PathBuf};

use acap_core::classifiers::TrainConfig;
use acap_core::eval::{LabelSpace, SplitFractions, Subset};
use acap_core::features::VectorizerConfig;
use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSettings {
    pub repeats: usize,
    pub split: SplitFractions,
    pub subset: Subset,
    pub labels: LabelSpace,
    pub merge_outlets: bool,
    pub systems: Vec<String>,
    pub select_on_validation: bool,
}

impl Default for ExperimentSettings {
    fn default() -> Self {
        ExperimentSettings {
            repeats: 5,
            split: SplitFractions::default(),
            subset: Subset::All,
            labels: LabelSpace::Multiclass,
            merge_outlets: false,
            systems: ["threshold", "softmax-standard", "softmax-ordinal", "vote"]
                .map(String::from)
                .to_vec(),
            select_on_validation: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathSettings {
    pub corpus: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub paths: PathSettings,
    pub seed: u64,
    pub vectorizer: VectorizerConfig,
    pub train: TrainConfig,
    pub experiment: ExperimentSettings,
    /// `error`, `warn`, `info`, `debug` or `trace`; `-v` flags raise it.
    pub log_level: Option<String>,
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: PipelineConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(corpus) = &self.paths.corpus {
            if !corpus.exists() {
                bail!("config corpus path {} does not exist", corpus.display());
            }
        }
        if self.vectorizer.dimension == 0 {
            bail!("vectorizer dimension must be positive");
        }
        self.train.validate()?;
        self.experiment.split.validate()?;
        if self.experiment.repeats == 0 {
            bail!("experiment repeats must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let config = PipelineConfig::default();
        let text = toml::to_string(&config).unwrap();
        let back: PipelineConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let config: PipelineConfig = toml::from_str(
            "seed = 9\n[train]\nepochs = 50\n[vectorizer]\nmode = \"hashed\"\ndimension = 128\n",
        )
        .unwrap();
        assert_eq!(config.seed, 9);
        assert_eq!(config.train.epochs, 50);
        assert_eq!(config.train.learning_rate, 0.1);
        assert_eq!(config.vectorizer.dimension, 128);
        assert_eq!(config.experiment.repeats, 5);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<PipelineConfig>("sed = 1\n").is_err());
    }
}
