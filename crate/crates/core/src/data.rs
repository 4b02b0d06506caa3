//! Corpus loading, class statistics, stratified splitting and oversampling.
//!
//! The input format is a UTF-8, RFC-4180 CSV with a header row containing
//! the columns `headLine`, `content` and `label` (matched case-insensitively,
//! in any order). Rows with a blank field or an unrecognized label are
//! dropped at load time and counted in the [`LoadReport`].

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary class label for a news item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Fake,
    Real,
}

impl Label {
    /// Parse a raw label cell. Input is trimmed and lowercased first, so
    /// hand-edited CSVs with `"Real "` still load.
    pub fn parse(raw: &str) -> Result<Label> {
        match raw.trim().to_lowercase().as_str() {
            "fake" => Ok(Label::Fake),
            "real" => Ok(Label::Real),
            _ => Err(Error::UnknownLabel(raw.trim().to_string())),
        }
    }

    /// Numeric encoding used by the model: fake = 0, real = 1.
    pub fn as_bit(self) -> u8 {
        match self {
            Label::Fake => 0,
            Label::Real => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Label {
        if bit == 0 {
            Label::Fake
        } else {
            Label::Real
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Fake => "fake",
            Label::Real => "real",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One news item. Headline and content are stored trimmed and are always
/// non-empty; rows violating that are dropped by [`load_corpus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub headline: String,
    pub content: String,
    pub label: Label,
}

/// An ordered collection of documents. Order is the file order of the
/// surviving rows, which keeps every downstream step deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub source_path: String,
}

impl Corpus {
    pub fn new(documents: Vec<Document>, source_path: impl Into<String>) -> Corpus {
        Corpus {
            documents,
            source_path: source_path.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Document> {
        self.documents.iter()
    }
}

/// Per-class document tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub fake: usize,
    pub real: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.fake + self.real
    }

    pub fn of_label(&self, label: Label) -> usize {
        match label {
            Label::Fake => self.fake,
            Label::Real => self.real,
        }
    }
}

/// Row accounting for one [`load_corpus`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    /// Data rows read from the file (header excluded).
    pub rows_read: usize,
    /// Rows that survived all drop rules.
    pub loaded: usize,
    /// Rows dropped because headline, content or label was blank.
    pub dropped_missing: usize,
    /// Rows dropped because the label did not parse as fake/real.
    pub dropped_bad_label: usize,
}

/// A deterministic three-way partition of a corpus.
#[derive(Debug, Clone)]
pub struct SplitSet {
    pub train: Corpus,
    pub validation: Corpus,
    pub test: Corpus,
    pub seed: u64,
    pub ratios: [f64; 3],
}

fn column_index(headers: &csv::StringRecord, name: &'static str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case(name))
        .ok_or(Error::MissingColumn { name })
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    let line = match err.kind() {
        csv::ErrorKind::Utf8 { pos, .. } => pos.as_ref().map(|p| p.line()).unwrap_or(0),
        csv::ErrorKind::UnequalLengths { pos, .. } => {
            pos.as_ref().map(|p| p.line()).unwrap_or(0)
        }
        _ => err.position().map(|p| p.line()).unwrap_or(0),
    };
    Error::MalformedCsv {
        path: path.to_path_buf(),
        line,
        message: err.to_string(),
    }
}

/// Load a corpus from a CSV file, dropping incomplete rows.
///
/// Returns the surviving documents in file order together with a
/// [`LoadReport`] describing what was dropped. A file with zero surviving
/// rows is an error, as is any structurally malformed CSV (e.g. unbalanced
/// quotes), which is reported with its line number.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<(Corpus, LoadReport)> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(file);

    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let headline_idx = column_index(&headers, "headline")?;
    let content_idx = column_index(&headers, "content")?;
    let label_idx = column_index(&headers, "label")?;

    let mut documents = Vec::new();
    let mut report = LoadReport {
        rows_read: 0,
        loaded: 0,
        dropped_missing: 0,
        dropped_bad_label: 0,
    };

    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        report.rows_read += 1;

        let headline = record.get(headline_idx).unwrap_or("").trim();
        let content = record.get(content_idx).unwrap_or("").trim();
        let label_raw = record.get(label_idx).unwrap_or("").trim();
        if headline.is_empty() || content.is_empty() || label_raw.is_empty() {
            report.dropped_missing += 1;
            continue;
        }
        let label = match Label::parse(label_raw) {
            Ok(label) => label,
            Err(_) => {
                report.dropped_bad_label += 1;
                continue;
            }
        };
        documents.push(Document {
            headline: headline.to_string(),
            content: content.to_string(),
            label,
        });
    }

    if documents.is_empty() {
        return Err(Error::EmptyCorpus {
            path: path.to_path_buf(),
        });
    }
    report.loaded = documents.len();
    Ok((
        Corpus::new(documents, path.to_string_lossy().into_owned()),
        report,
    ))
}

/// Tally documents per class.
pub fn class_counts(corpus: &Corpus) -> ClassCounts {
    let mut counts = ClassCounts { fake: 0, real: 0 };
    for doc in corpus.iter() {
        match doc.label {
            Label::Fake => counts.fake += 1,
            Label::Real => counts.real += 1,
        }
    }
    counts
}

/// Floor of `n * ratio` with a small epsilon absorbing float representation
/// error (so a ratio of 0.7 on 10 documents yields 7, not 6).
fn ratio_count(n: usize, ratio: f64) -> usize {
    ((n as f64) * ratio + 1e-9).floor() as usize
}

/// Partition a corpus into train/validation/test parts, preserving the class
/// balance of the whole in every part.
///
/// Per class, the document indices are shuffled with a generator seeded from
/// `seed` (fake class first, then real), the validation and test parts take
/// `floor(n * ratio)` documents each and the rounding residue goes to train.
/// Each part keeps its documents in original file order. Deterministic for a
/// fixed `(corpus, ratios, seed)`.
pub fn stratified_split(corpus: &Corpus, ratios: [f64; 3], seed: u64) -> Result<SplitSet> {
    let sum: f64 = ratios.iter().sum();
    if ratios.iter().any(|r| *r <= 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig(format!(
            "split ratios must be positive and sum to 1, got {ratios:?}"
        )));
    }

    let mut fake_indices = Vec::new();
    let mut real_indices = Vec::new();
    for (i, doc) in corpus.iter().enumerate() {
        match doc.label {
            Label::Fake => fake_indices.push(i),
            Label::Real => real_indices.push(i),
        }
    }
    const PARTS: usize = 3;
    for (label, indices) in [("fake", &fake_indices), ("real", &real_indices)] {
        if indices.len() < PARTS {
            return Err(Error::ClassTooSmall {
                label,
                count: indices.len(),
                parts: PARTS,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fake_indices.shuffle(&mut rng);
    real_indices.shuffle(&mut rng);

    let mut train_idx = Vec::new();
    let mut val_idx = Vec::new();
    let mut test_idx = Vec::new();
    for indices in [&fake_indices, &real_indices] {
        let n = indices.len();
        let n_val = ratio_count(n, ratios[1]);
        let n_test = ratio_count(n, ratios[2]);
        let n_train = n - n_val - n_test;
        train_idx.extend_from_slice(&indices[..n_train]);
        val_idx.extend_from_slice(&indices[n_train..n_train + n_val]);
        test_idx.extend_from_slice(&indices[n_train + n_val..]);
    }

    let materialize = |mut idx: Vec<usize>| -> Corpus {
        idx.sort_unstable();
        Corpus::new(
            idx.iter().map(|&i| corpus.documents[i].clone()).collect(),
            corpus.source_path.clone(),
        )
    };

    Ok(SplitSet {
        train: materialize(train_idx),
        validation: materialize(val_idx),
        test: materialize(test_idx),
        seed,
        ratios,
    })
}

/// Balance a training corpus by duplicating minority-class documents.
///
/// Minority documents are drawn with replacement (seeded) until the class
/// counts are exactly equal. All originals are kept in their input order and
/// the duplicates are appended after them. Balanced input is returned
/// unchanged; single-class input is an error.
pub fn oversample(train: &Corpus, seed: u64) -> Result<Corpus> {
    let counts = class_counts(train);
    if counts.fake == 0 || counts.real == 0 {
        return Err(Error::NothingToBalance);
    }
    if counts.fake == counts.real {
        return Ok(train.clone());
    }

    let minority = if counts.fake < counts.real {
        Label::Fake
    } else {
        Label::Real
    };
    let pool: Vec<usize> = train
        .iter()
        .enumerate()
        .filter(|(_, doc)| doc.label == minority)
        .map(|(i, _)| i)
        .collect();
    let deficit = counts.fake.abs_diff(counts.real);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = train.documents.clone();
    documents.reserve(deficit);
    for _ in 0..deficit {
        let pick = pool[rng.random_range(0..pool.len())];
        documents.push(train.documents[pick].clone());
    }
    Ok(Corpus::new(documents, train.source_path.clone()))
}
