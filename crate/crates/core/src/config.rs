//! Run configuration shared by the CLI, the pipeline, and model bundles.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Hyperparams;
use crate::text::LemmatizerMode;

/// Which document text feeds the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TextSource {
    Headline,
    Content,
    /// Headline, a single space, then content.
    #[default]
    Both,
}

impl std::str::FromStr for TextSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<TextSource> {
        match s {
            "headline" => Ok(TextSource::Headline),
            "content" => Ok(TextSource::Content),
            "both" => Ok(TextSource::Both),
            other => Err(Error::InvalidConfig(format!(
                "unknown text source {other:?} (expected headline, content or both)"
            ))),
        }
    }
}

/// Full configuration for a run. Serializes as JSON; unknown keys are
/// rejected so typos in config files fail fast.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub data_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub seed: u64,
    /// Train/validation/test fractions, summing to 1.
    pub split_ratios: [f64; 3],
    /// Rebalance the training split by random oversampling.
    pub oversample: bool,
    pub text_source: TextSource,
    pub lemmatizer: LemmatizerMode,
    /// Optional user-edited suffix inventory for the suffix_strip mode.
    pub suffix_file: Option<PathBuf>,
    /// Vocabulary cap (content words; reserved ids come on top).
    pub max_words: usize,
    pub seq_len: usize,
    pub embed_dim: usize,
    pub gru_units: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub adam_epsilon: f64,
    pub clip_epsilon: f64,
    pub batch_size: usize,
    pub epochs: usize,
    /// Worker threads for batch gradients and evaluation. Results are
    /// independent of the thread count; 1 avoids spawning entirely.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            data_path: None,
            output_dir: PathBuf::from("out"),
            seed: 42,
            split_ratios: [0.8, 0.1, 0.1],
            oversample: true,
            text_source: TextSource::Both,
            lemmatizer: LemmatizerMode::Identity,
            suffix_file: None,
            max_words: 10_000,
            seq_len: 100,
            embed_dim: 100,
            gru_units: 32,
            learning_rate: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            adam_epsilon: 1e-8,
            clip_epsilon: 1e-7,
            batch_size: 32,
            epochs: 10,
            threads: 1,
        }
    }
}

impl RunConfig {
    /// Load a JSON config file. Unknown keys are an error.
    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<RunConfig> {
        let path = path.as_ref();
        let body = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let config: RunConfig = serde_json::from_str(&body)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.split_ratios.iter().sum();
        if self.split_ratios.iter().any(|r| *r <= 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "split_ratios must be positive and sum to 1, got {:?}",
                self.split_ratios
            )));
        }
        if self.max_words == 0 {
            return Err(Error::InvalidConfig("max_words must be at least 1".into()));
        }
        if self.threads == 0 {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        if self.suffix_file.is_some() && self.lemmatizer != LemmatizerMode::SuffixStrip {
            return Err(Error::InvalidConfig(
                "suffix_file requires the suffix_strip lemmatizer".into(),
            ));
        }
        self.hyperparams(self.max_words + 2).validate()
    }

    /// Model hyperparameters for a concrete vocabulary size.
    pub fn hyperparams(&self, vocab_rows: usize) -> Hyperparams {
        Hyperparams {
            vocab_rows,
            embed_dim: self.embed_dim,
            gru_units: self.gru_units,
            seq_len: self.seq_len,
            learning_rate: self.learning_rate,
            beta1: self.beta1,
            beta2: self.beta2,
            adam_epsilon: self.adam_epsilon,
            clip_epsilon: self.clip_epsilon,
            batch_size: self.batch_size,
            epochs: self.epochs,
            seed: self.seed,
        }
    }
}
