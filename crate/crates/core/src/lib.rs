//! jachai-core: a self-contained Bangla fake-news classification toolkit.
//!
//! The pipeline runs end to end from a raw CSV corpus: cleaning and
//! tokenization ([`text`]), capped-vocabulary encoding ([`vectorizer`]),
//! stratified splitting and oversampling ([`data`]), a from-scratch
//! embedding → GRU → sigmoid classifier trained with Adam on binary
//! cross-entropy ([`model`], [`trainer`]), and confusion-matrix evaluation
//! ([`eval`]). Models persist as single-file bundles ([`bundle`]).
//!
//! Everything is deterministic per seed; training and evaluation are
//! single-threaded by default with opt-in parallelism.
//!
//! ```
//! use jachai_core::config::RunConfig;
//! use jachai_core::{eval, pipeline, synthetic, trainer};
//!
//! let corpus = synthetic::make_synthetic_corpus(60, 1);
//! let config = RunConfig { epochs: 1, ..RunConfig::default() };
//! let data = pipeline::prepare(&corpus, &config)?;
//!
//! let hp = config.hyperparams(data.vocabulary.rows());
//! let (params, history) = trainer::train(&data.train, &data.validation, &hp, 1, |_| {})?;
//! let report = eval::evaluate(&params, &hp, &data.test, 1)?;
//!
//! assert_eq!(history.len(), 1);
//! assert_eq!(report.examples as usize, data.test.len());
//! # Ok::<(), jachai_core::Error>(())
//! ```

pub mod bundle;
pub mod config;
pub mod data;
pub mod error;
pub mod eval;
pub mod model;
pub mod pipeline;
pub mod synthetic;
pub mod text;
pub mod trainer;
pub mod vectorizer;

pub use bundle::ModelBundle;
pub use config::{RunConfig, TextSource};
pub use data::{
    class_counts, load_corpus, oversample, stratified_split, ClassCounts, Corpus, Document,
    Label, LoadReport, SplitSet,
};
pub use error::{Error, Result};
pub use eval::{compute_metrics, evaluate, ClassMetrics, ConfusionMatrix, EvalReport, Metrics, Prediction};
pub use model::{Hyperparams, ModelParams};
pub use text::{clean_text, tokenize, CleanText, Lemmatizer, LemmatizerMode, TokenSequence};
pub use trainer::{train, EpochRecord};
pub use vectorizer::{build_vocab, encode, encode_label, pad, EncodedExample, Vocabulary, OOV_ID, PAD_ID};
