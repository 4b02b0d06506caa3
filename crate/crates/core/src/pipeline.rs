//! End-to-end wiring: corpus → tokens → vocabulary → encoded splits.
//!
//! The vocabulary is fitted over the whole corpus (preprocessing precedes
//! splitting), the corpus is then split stratified by class, and only the
//! training split is oversampled; validation and test are never touched by
//! rebalancing.

use crate::config::{RunConfig, TextSource};
use crate::data::{class_counts, oversample, stratified_split, ClassCounts, Corpus, Document, SplitSet};
use crate::error::Result;
use crate::text::{clean_text, tokenize, Lemmatizer, LemmatizerMode, TokenSequence};
use crate::vectorizer::{build_vocab, encode, pad, EncodedExample, Vocabulary};

/// Distinct stream for oversampling draws, derived from the run seed.
const OVERSAMPLE_STREAM: u64 = 0x51F0_3B1C_9A6D_42E7;

/// Build the lemmatizer a config asks for.
pub fn lemmatizer_for(config: &RunConfig) -> Result<Lemmatizer> {
    match (config.lemmatizer, &config.suffix_file) {
        (LemmatizerMode::Identity, _) => Ok(Lemmatizer::identity()),
        (LemmatizerMode::SuffixStrip, Some(path)) => Lemmatizer::suffix_strip_from_file(path),
        (LemmatizerMode::SuffixStrip, None) => Ok(Lemmatizer::suffix_strip()),
    }
}

/// The model-facing text for a (headline, content) pair.
pub fn combined_text(headline: &str, content: &str, source: TextSource) -> String {
    match source {
        TextSource::Headline => headline.to_string(),
        TextSource::Content => content.to_string(),
        TextSource::Both => format!("{headline} {content}"),
    }
}

/// The model-facing text of a document.
pub fn document_text(doc: &Document, source: TextSource) -> String {
    combined_text(&doc.headline, &doc.content, source)
}

/// Clean → tokenize → lemmatize one document.
pub fn document_tokens(doc: &Document, source: TextSource, lemmatizer: &Lemmatizer) -> TokenSequence {
    let clean = clean_text(&document_text(doc, source));
    lemmatizer.apply(&tokenize(&clean))
}

/// Fit the capped vocabulary over every document of a corpus, in order.
pub fn fit_vocabulary(
    corpus: &Corpus,
    source: TextSource,
    lemmatizer: &Lemmatizer,
    max_words: usize,
) -> Result<Vocabulary> {
    build_vocab(
        corpus.iter().map(|doc| document_tokens(doc, source, lemmatizer)),
        max_words,
    )
}

/// Encode one document to a fixed-length example.
pub fn encode_document(
    doc: &Document,
    vocab: &Vocabulary,
    source: TextSource,
    lemmatizer: &Lemmatizer,
    seq_len: usize,
) -> EncodedExample {
    let tokens = document_tokens(doc, source, lemmatizer);
    EncodedExample {
        ids: pad(&encode(&tokens, vocab), seq_len),
        label: doc.label.as_bit(),
    }
}

/// Encode a whole corpus, preserving order.
pub fn encode_corpus(
    corpus: &Corpus,
    vocab: &Vocabulary,
    source: TextSource,
    lemmatizer: &Lemmatizer,
    seq_len: usize,
) -> Vec<EncodedExample> {
    corpus
        .iter()
        .map(|doc| encode_document(doc, vocab, source, lemmatizer, seq_len))
        .collect()
}

/// Everything `train` and `evaluate` need, derived deterministically from a
/// corpus and a config.
#[derive(Debug, Clone)]
pub struct PreparedData {
    pub vocabulary: Vocabulary,
    pub splits: SplitSet,
    /// The training split after optional oversampling.
    pub train_corpus: Corpus,
    pub train: Vec<EncodedExample>,
    pub validation: Vec<EncodedExample>,
    pub test: Vec<EncodedExample>,
    pub initial_counts: ClassCounts,
    pub train_counts: ClassCounts,
}

/// Run the full preparation: vocabulary over the whole corpus, stratified
/// split, training-split oversampling, fixed-length encoding.
pub fn prepare(corpus: &Corpus, config: &RunConfig) -> Result<PreparedData> {
    config.validate()?;
    let lemmatizer = lemmatizer_for(config)?;
    let vocabulary = fit_vocabulary(corpus, config.text_source, &lemmatizer, config.max_words)?;
    let splits = stratified_split(corpus, config.split_ratios, config.seed)?;
    let train_corpus = if config.oversample {
        oversample(&splits.train, config.seed ^ OVERSAMPLE_STREAM)?
    } else {
        splits.train.clone()
    };

    let enc = |part: &Corpus| {
        encode_corpus(part, &vocabulary, config.text_source, &lemmatizer, config.seq_len)
    };
    Ok(PreparedData {
        train: enc(&train_corpus),
        validation: enc(&splits.validation),
        test: enc(&splits.test),
        initial_counts: class_counts(corpus),
        train_counts: class_counts(&train_corpus),
        vocabulary,
        splits,
        train_corpus,
    })
}
