//! Text normalization, tokenization and rule-based lemmatization for Bangla.
//!
//! Cleaning is whitelist-based: characters in the Bangla Unicode block
//! (U+0980–U+09FF) and ASCII alphanumerics survive, everything else becomes
//! a space. That removes punctuation, emoji and URL separators while keeping
//! code-mixed Latin words ("BTV") visible, lowercased.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The default suffix inventory for [`Lemmatizer::suffix_strip`], one suffix
/// per line. Users can ship an edited copy and load it with
/// [`Lemmatizer::suffix_strip_from_file`].
pub const DEFAULT_SUFFIXES: &str = include_str!("../resources/bangla_suffixes.txt");

/// Normalized text: only Bangla-block characters, lowercase ASCII
/// alphanumerics and single interior spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanText(String);

impl CleanText {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// An ordered list of whitespace-free word tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSequence(pub Vec<String>);

impl TokenSequence {
    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn is_bangla(ch: char) -> bool {
    ('\u{0980}'..='\u{09FF}').contains(&ch)
}

/// Normalize raw text per the whitelist rule.
///
/// Idempotent: cleaning already-clean text changes nothing. Empty output is
/// legal (e.g. pure punctuation input).
pub fn clean_text(raw: &str) -> CleanText {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.chars() {
        let kept = if is_bangla(ch) {
            Some(ch)
        } else if ch.is_ascii_alphanumeric() {
            Some(ch.to_ascii_lowercase())
        } else {
            None
        };
        match kept {
            Some(c) => {
                if pending_space && !out.is_empty() {
                    out.push(' ');
                }
                pending_space = false;
                out.push(c);
            }
            None => pending_space = true,
        }
    }
    CleanText(out)
}

/// Split clean text into word tokens. Empty input yields an empty sequence;
/// joining the tokens with single spaces reproduces the input.
pub fn tokenize(clean: &CleanText) -> TokenSequence {
    TokenSequence(
        clean
            .as_str()
            .split(' ')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect(),
    )
}

/// Lemmatizer selection. `Identity` is the default; `SuffixStrip` removes
/// one inflection suffix per token from a fixed list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmatizerMode {
    Identity,
    SuffixStrip,
}

impl std::str::FromStr for LemmatizerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmatizerMode> {
        match s {
            "identity" => Ok(LemmatizerMode::Identity),
            "suffix_strip" | "suffix-strip" => Ok(LemmatizerMode::SuffixStrip),
            other => Err(Error::InvalidConfig(format!(
                "unknown lemmatizer mode {other:?} (expected identity or suffix_strip)"
            ))),
        }
    }
}

/// Token-level lemmatizer. Suffix stripping removes at most one matching
/// suffix per token, trying longer suffixes first (character count, ties in
/// list order); a token that would be emptied is kept whole.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemmatizer {
    mode: LemmatizerMode,
    /// Sorted longest-first; empty in identity mode.
    suffixes: Vec<String>,
}

impl Lemmatizer {
    pub fn identity() -> Lemmatizer {
        Lemmatizer {
            mode: LemmatizerMode::Identity,
            suffixes: Vec::new(),
        }
    }

    /// Suffix stripper with the built-in inventory.
    pub fn suffix_strip() -> Lemmatizer {
        Lemmatizer::with_suffixes(parse_suffix_list(DEFAULT_SUFFIXES))
    }

    /// Suffix stripper with a user-edited inventory file (one suffix per
    /// line, UTF-8; blank lines and `#` comments ignored).
    pub fn suffix_strip_from_file(path: impl AsRef<Path>) -> Result<Lemmatizer> {
        let path = path.as_ref();
        let body = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let suffixes = parse_suffix_list(&body);
        if suffixes.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "suffix list {} contains no suffixes",
                path.display()
            )));
        }
        Ok(Lemmatizer::with_suffixes(suffixes))
    }

    /// Build a suffix stripper from an explicit inventory.
    pub fn with_suffixes(mut suffixes: Vec<String>) -> Lemmatizer {
        // Longest first by character count; ties keep input order.
        suffixes.sort_by_key(|s| std::cmp::Reverse(s.chars().count()));
        Lemmatizer {
            mode: LemmatizerMode::SuffixStrip,
            suffixes,
        }
    }

    pub fn mode(&self) -> LemmatizerMode {
        self.mode
    }

    /// The active suffix inventory (longest-first). Empty in identity mode.
    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }

    /// Lemmatize a token sequence. Token count is always preserved and the
    /// output tokens are never empty.
    pub fn apply(&self, tokens: &TokenSequence) -> TokenSequence {
        match self.mode {
            LemmatizerMode::Identity => tokens.clone(),
            LemmatizerMode::SuffixStrip => TokenSequence(
                tokens
                    .tokens()
                    .iter()
                    .map(|t| self.strip_token(t).to_string())
                    .collect(),
            ),
        }
    }

    fn strip_token<'a>(&self, token: &'a str) -> &'a str {
        for suffix in &self.suffixes {
            if token.len() > suffix.len() && token.ends_with(suffix.as_str()) {
                return &token[..token.len() - suffix.len()];
            }
        }
        token
    }
}

fn parse_suffix_list(body: &str) -> Vec<String> {
    body.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}
