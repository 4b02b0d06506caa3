//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jachai_core::config::{RunConfig, TextSource};
use jachai_core::error::Error;
use jachai_core::text::LemmatizerMode;

#[derive(Debug, Parser)]
#[command(
    name = "jachai",
    version,
    about = "Bangla fake-news classification: prepare data, train, evaluate, predict",
    after_help = "Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a corpus, split it, and write split CSVs, the vocabulary and
    /// class-count/load reports.
    Prepare(PrepareArgs),
    /// Run the full pipeline and train a model; writes the model bundle and
    /// the epoch history CSV.
    Train(TrainArgs),
    /// Evaluate a trained bundle on a split of a corpus.
    Evaluate(EvaluateArgs),
    /// Classify one (headline, content) pair or a CSV of inputs.
    Predict(PredictArgs),
    /// Verify analytic gradients against finite differences on a reduced
    /// model.
    Gradcheck(GradcheckArgs),
    /// Write a deterministic synthetic corpus CSV (keyword-separable).
    Synth(SynthArgs),
}

/// Flags shared by the data-driven commands; every flag overrides the
/// config-file value.
#[derive(Debug, Args, Default)]
pub struct ConfigOverrides {
    /// JSON config file; flags given here override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed for splits, oversampling, initialization and shuffling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Train/validation/test fractions, e.g. 0.8,0.1,0.1.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub split_ratios: Option<Vec<f64>>,
    /// Rebalance the training split by oversampling (true/false).
    #[arg(long)]
    pub oversample: Option<bool>,
    /// Which text feeds the model.
    #[arg(long, value_enum)]
    pub text_source: Option<TextSourceArg>,
    /// Lemmatizer mode.
    #[arg(long, value_enum)]
    pub lemmatizer: Option<LemmatizerArg>,
    /// Custom suffix inventory for --lemmatizer suffix-strip.
    #[arg(long)]
    pub suffix_file: Option<PathBuf>,
    /// Vocabulary cap (content words).
    #[arg(long)]
    pub max_words: Option<usize>,
    #[arg(long)]
    pub seq_len: Option<usize>,
    #[arg(long)]
    pub embed_dim: Option<usize>,
    #[arg(long)]
    pub gru_units: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub beta1: Option<f64>,
    #[arg(long)]
    pub beta2: Option<f64>,
    #[arg(long)]
    pub adam_epsilon: Option<f64>,
    #[arg(long)]
    pub clip_epsilon: Option<f64>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Worker threads (1 = fully sequential); results do not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl ConfigOverrides {
    /// Materialize the effective config: defaults, then the config file,
    /// then the flags.
    pub fn resolve(
        &self,
        data: Option<&PathBuf>,
        out: Option<&PathBuf>,
    ) -> Result<RunConfig, Error> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_json_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(data) = data {
            config.data_path = Some(data.clone());
        }
        if let Some(out) = out {
            config.output_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(ratios) = &self.split_ratios {
            config.split_ratios = [ratios[0], ratios[1], ratios[2]];
        }
        if let Some(oversample) = self.oversample {
            config.oversample = oversample;
        }
        if let Some(source) = self.text_source {
            config.text_source = source.into();
        }
        if let Some(lemmatizer) = self.lemmatizer {
            config.lemmatizer = lemmatizer.into();
        }
        if let Some(suffix_file) = &self.suffix_file {
            config.suffix_file = Some(suffix_file.clone());
        }
        macro_rules! copy {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { config.$field = v; })*
            };
        }
        copy!(
            max_words, seq_len, embed_dim, gru_units, learning_rate, beta1, beta2,
            adam_epsilon, clip_epsilon, batch_size, epochs, threads
        );
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TextSourceArg {
    Headline,
    Content,
    Both,
}

impl From<TextSourceArg> for TextSource {
    fn from(arg: TextSourceArg) -> TextSource {
        match arg {
            TextSourceArg::Headline => TextSource::Headline,
            TextSourceArg::Content => TextSource::Content,
            TextSourceArg::Both => TextSource::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LemmatizerArg {
    Identity,
    SuffixStrip,
}

impl From<LemmatizerArg> for LemmatizerMode {
    fn from(arg: LemmatizerArg) -> LemmatizerMode {
        match arg {
            LemmatizerArg::Identity => LemmatizerMode::Identity,
            LemmatizerArg::SuffixStrip => LemmatizerMode::SuffixStrip,
        }
    }
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    /// Input corpus CSV (headLine, content, label).
    #[arg(long)]
    pub data: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Input corpus CSV (headLine, content, label).
    #[arg(long)]
    pub data: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Trained model bundle.
    #[arg(long)]
    pub model: PathBuf,
    /// Corpus CSV to split and evaluate on (the bundle's seed and ratios
    /// reproduce the training-time split).
    #[arg(long)]
    pub data: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Which split to evaluate.
    #[arg(long, value_enum, default_value_t = SplitChoice::Test)]
    pub split: SplitChoice,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitChoice {
    Train,
    Validation,
    Test,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Trained model bundle.
    #[arg(long)]
    pub model: PathBuf,
    /// Headline text (single prediction; prints JSON).
    #[arg(long, conflicts_with = "input")]
    pub headline: Option<String>,
    /// Content text (single prediction; prints JSON).
    #[arg(long, conflicts_with = "input")]
    pub content: Option<String>,
    /// CSV of inputs (headLine, content); prints one CSV row per input.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GradcheckArgs {
    /// Number of seeds to check (0, 1, 2, …).
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Number of documents (even, at least 20).
    #[arg(long, default_value_t = 2000)]
    pub size: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
