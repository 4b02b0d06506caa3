use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors surfaced by this crate.
///
/// Variants are grouped roughly by pipeline stage; the CLI maps them onto
/// exit codes (data problems vs. numeric failures), so new variants should
/// land in the right group.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV in {path} (line {line}): {message}")]
    MalformedCsv {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("missing required column {name:?} (expected headLine, content, label)")]
    MissingColumn { name: &'static str },

    #[error("empty corpus: no usable rows in {path}")]
    EmptyCorpus { path: PathBuf },

    #[error("unknown label {0:?} (expected \"fake\" or \"real\")")]
    UnknownLabel(String),

    #[error("class {label:?} has {count} documents, too small to stratify into {parts} parts")]
    ClassTooSmall {
        label: &'static str,
        count: usize,
        parts: usize,
    },

    #[error("nothing to balance: training corpus contains a single class")]
    NothingToBalance,

    #[error("no tokens: cannot build a vocabulary from an empty token stream")]
    NoTokens,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("empty {0} set")]
    EmptyDataset(&'static str),

    #[error("token id {id} out of range for {rows} embedding rows")]
    TokenIdOutOfRange { id: u32, rows: usize },

    #[error("sequence length {got} does not match configured length {expected}")]
    SequenceLength { expected: usize, got: usize },

    #[error("non-finite loss at epoch {epoch}, batch {batch}; aborting training")]
    NonFiniteLoss { epoch: usize, batch: usize },

    #[error("confusion matrix is all zero; nothing was evaluated")]
    EmptyEvaluation,

    #[error("unsupported model bundle version {found} (this build reads version {expected})")]
    BundleVersion { found: u32, expected: u32 },

    #[error("model bundle payload is {actual} bytes but the manifest implies {expected} bytes")]
    BundleTruncated { expected: u64, actual: u64 },

    #[error("invalid model bundle: {0}")]
    BundleFormat(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numeric machinery (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonFiniteLoss { .. })
    }
}
