//! Frequency-capped vocabulary and fixed-length sequence encoding.
//!
//! Id layout: 0 is the padding id, 1 the out-of-vocabulary id, and content
//! words occupy 2..size+2 ranked by corpus frequency (ties broken by first
//! occurrence in the scan). Sequences are pre-padded / pre-truncated so the
//! final timestep always carries real content for the recurrent model.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::data::Label;
use crate::error::{Error, Result};
use crate::text::TokenSequence;

/// Reserved id for padding positions.
pub const PAD_ID: u32 = 0;
/// Reserved id for out-of-vocabulary tokens.
pub const OOV_ID: u32 = 1;

/// Frequency-ranked word table with reserved pad/OOV ids.
///
/// Serializes as `{"max_words": …, "words": […]}` where the word at index
/// `i` has id `i + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "VocabularyData", into = "VocabularyData")]
pub struct Vocabulary {
    max_words: usize,
    words: Vec<String>,
    #[allow(clippy::type_complexity)]
    ids: HashMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct VocabularyData {
    max_words: usize,
    words: Vec<String>,
}

impl From<VocabularyData> for Vocabulary {
    fn from(data: VocabularyData) -> Vocabulary {
        Vocabulary::from_ranked_words(data.words, data.max_words)
    }
}

impl From<Vocabulary> for VocabularyData {
    fn from(vocab: Vocabulary) -> VocabularyData {
        VocabularyData {
            max_words: vocab.max_words,
            words: vocab.words,
        }
    }
}

impl Vocabulary {
    fn from_ranked_words(words: Vec<String>, max_words: usize) -> Vocabulary {
        let ids = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32 + 2))
            .collect();
        Vocabulary {
            max_words,
            words,
            ids,
        }
    }

    /// Number of content words (reserved ids excluded).
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Embedding rows needed to cover this vocabulary: content words plus
    /// the two reserved ids.
    pub fn rows(&self) -> usize {
        self.words.len() + 2
    }

    pub fn max_words(&self) -> usize {
        self.max_words
    }

    /// Id for a token; out-of-vocabulary tokens map to [`OOV_ID`].
    pub fn id_of(&self, token: &str) -> u32 {
        self.ids.get(token).copied().unwrap_or(OOV_ID)
    }

    /// Word for a content id, if any.
    pub fn word_of(&self, id: u32) -> Option<&str> {
        let idx = (id as usize).checked_sub(2)?;
        self.words.get(idx).map(String::as_str)
    }

    /// Words in rank order (index `i` ⇒ id `i + 2`).
    pub fn words(&self) -> &[String] {
        &self.words
    }
}

/// Count tokens in one pass and keep the `max_words` most frequent; ties go
/// to the word seen first. Deterministic for a fixed stream.
pub fn build_vocab<I>(token_streams: I, max_words: usize) -> Result<Vocabulary>
where
    I: IntoIterator<Item = TokenSequence>,
{
    if max_words == 0 {
        return Err(Error::InvalidConfig(
            "vocabulary size must be at least 1".to_string(),
        ));
    }

    let mut stats: HashMap<String, (u64, u64)> = HashMap::new();
    let mut position: u64 = 0;
    for stream in token_streams {
        for token in stream.tokens() {
            let entry = stats.entry(token.clone()).or_insert((0, position));
            entry.0 += 1;
            position += 1;
        }
    }
    if stats.is_empty() {
        return Err(Error::NoTokens);
    }

    let mut ranked: Vec<(String, (u64, u64))> = stats.into_iter().collect();
    ranked.sort_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.1 .1.cmp(&b.1 .1)));
    ranked.truncate(max_words);

    Ok(Vocabulary::from_ranked_words(
        ranked.into_iter().map(|(w, _)| w).collect(),
        max_words,
    ))
}

/// Map tokens to ids; length is preserved and unknown tokens become
/// [`OOV_ID`].
pub fn encode(tokens: &TokenSequence, vocab: &Vocabulary) -> Vec<u32> {
    tokens.tokens().iter().map(|t| vocab.id_of(t)).collect()
}

/// Force a sequence to exactly `maxlen` ids: shorter sequences get
/// [`PAD_ID`] on the left, longer sequences keep their last `maxlen` ids.
pub fn pad(ids: &[u32], maxlen: usize) -> Vec<u32> {
    if ids.len() >= maxlen {
        ids[ids.len() - maxlen..].to_vec()
    } else {
        let mut out = vec![PAD_ID; maxlen - ids.len()];
        out.extend_from_slice(ids);
        out
    }
}

/// Label encoding used throughout: fake → 0, real → 1. Trims and lowercases
/// before matching; anything else is an error.
pub fn encode_label(raw: &str) -> Result<u8> {
    Label::parse(raw).map(Label::as_bit)
}

/// A fixed-length id sequence with its binary label, ready for the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedExample {
    pub ids: Vec<u32>,
    /// 0 = fake, 1 = real.
    pub label: u8,
}
