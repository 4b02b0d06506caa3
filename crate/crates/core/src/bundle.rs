//! Single-file model persistence.
//!
//! A bundle is a little-endian `u64` manifest length, the manifest JSON
//! (human-readable: format version, config snapshot, vocabulary, lemmatizer
//! suffixes), then the weight payload as little-endian IEEE-754 f32 in a
//! fixed order: embedding row-major, input kernel as contiguous gate blocks
//! `[z, r, h]` (each row-major), recurrent kernel likewise, bias `[z|r|h]`,
//! output weights, output bias. The payload length is checked against the
//! manifest-declared shapes on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::data::Label;
use crate::error::{Error, Result};
use crate::eval::{evaluate, EvalReport, Prediction};
use crate::model::{forward, Hyperparams, Matrix, ModelParams};
use crate::pipeline::combined_text;
use crate::text::{clean_text, tokenize, Lemmatizer, LemmatizerMode};
use crate::vectorizer::{encode, pad, EncodedExample, Vocabulary};

pub const BUNDLE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BundleShapes {
    vocab_rows: usize,
    embed_dim: usize,
    gru_units: usize,
}

impl BundleShapes {
    fn param_count(&self) -> u64 {
        let three = 3 * self.gru_units;
        (self.vocab_rows * self.embed_dim
            + self.embed_dim * three
            + self.gru_units * three
            + three
            + self.gru_units
            + 1) as u64
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BundleManifest {
    format_version: u32,
    config: RunConfig,
    vocabulary: Vocabulary,
    /// Embedded suffix inventory when the config uses suffix stripping, so
    /// a bundle predicts identically wherever it is copied.
    suffixes: Option<Vec<String>>,
    shapes: BundleShapes,
}

/// A trained model with everything inference needs: parameters, vocabulary
/// and the configuration snapshot.
#[derive(Debug, Clone)]
pub struct ModelBundle {
    pub config: RunConfig,
    pub vocabulary: Vocabulary,
    pub params: ModelParams<f32>,
    suffixes: Option<Vec<String>>,
}

impl ModelBundle {
    pub fn new(
        config: RunConfig,
        vocabulary: Vocabulary,
        params: ModelParams<f32>,
        lemmatizer: &Lemmatizer,
    ) -> ModelBundle {
        let suffixes = match config.lemmatizer {
            LemmatizerMode::Identity => None,
            LemmatizerMode::SuffixStrip => Some(lemmatizer.suffixes().to_vec()),
        };
        // Local filesystem paths (including a suffix file, whose contents are
        // embedded above) stay out of the snapshot: identical training
        // inputs must produce byte-identical bundles wherever they ran. The
        // run manifest records the real paths.
        let defaults = RunConfig::default();
        let config = RunConfig {
            data_path: None,
            output_dir: defaults.output_dir,
            suffix_file: None,
            ..config
        };
        ModelBundle {
            config,
            vocabulary,
            params,
            suffixes,
        }
    }

    pub fn hyperparams(&self) -> Hyperparams {
        self.config.hyperparams(self.vocabulary.rows())
    }

    /// The lemmatizer this bundle was trained with.
    pub fn lemmatizer(&self) -> Lemmatizer {
        match self.config.lemmatizer {
            LemmatizerMode::Identity => Lemmatizer::identity(),
            LemmatizerMode::SuffixStrip => match &self.suffixes {
                Some(suffixes) => Lemmatizer::with_suffixes(suffixes.clone()),
                None => Lemmatizer::suffix_strip(),
            },
        }
    }

    /// Run the full inference pipeline on raw text. An input that cleans
    /// down to nothing still predicts (all-padding sequence,
    /// `token_count == 0`).
    pub fn predict(&self, headline: &str, content: &str) -> Result<Prediction> {
        let text = combined_text(headline, content, self.config.text_source);
        let tokens = self.lemmatizer().apply(&tokenize(&clean_text(&text)));
        let ids = pad(&encode(&tokens, &self.vocabulary), self.config.seq_len);
        let (p, _) = forward(&ids, &self.params, &self.hyperparams())?;
        Ok(Prediction {
            label: if p >= 0.5 { Label::Real } else { Label::Fake },
            probability: p,
            token_count: tokens.len(),
        })
    }

    /// Encode nothing: evaluate already-encoded examples with this bundle's
    /// parameters.
    pub fn evaluate(&self, test_set: &[EncodedExample], threads: usize) -> Result<EvalReport> {
        evaluate(&self.params, &self.hyperparams(), test_set, threads)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let hp = self.hyperparams();
        let shapes = BundleShapes {
            vocab_rows: hp.vocab_rows,
            embed_dim: hp.embed_dim,
            gru_units: hp.gru_units,
        };
        let manifest = BundleManifest {
            format_version: BUNDLE_VERSION,
            config: self.config.clone(),
            vocabulary: self.vocabulary.clone(),
            suffixes: self.suffixes.clone(),
            shapes: shapes.clone(),
        };
        let manifest_json = serde_json::to_vec_pretty(&manifest)?;

        let mut bytes = Vec::with_capacity(8 + manifest_json.len() + 4 * shapes.param_count() as usize);
        bytes.extend_from_slice(&(manifest_json.len() as u64).to_le_bytes());
        bytes.extend_from_slice(&manifest_json);

        for &v in self.params.embedding.as_slice() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        write_gate_blocks(&self.params.input_kernel, hp.gru_units, &mut bytes);
        write_gate_blocks(&self.params.recurrent_kernel, hp.gru_units, &mut bytes);
        for &v in &self.params.bias {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        for &v in &self.params.output_weights {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        bytes.extend_from_slice(&self.params.output_bias.to_le_bytes());
        Ok(bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<ModelBundle> {
        if bytes.len() < 8 {
            return Err(Error::BundleFormat("file shorter than the length prefix".into()));
        }
        let manifest_len = u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes")) as usize;
        if bytes.len() < 8 + manifest_len {
            return Err(Error::BundleFormat(format!(
                "declared manifest length {manifest_len} exceeds file size {}",
                bytes.len()
            )));
        }
        let manifest: BundleManifest = serde_json::from_slice(&bytes[8..8 + manifest_len])?;
        if manifest.format_version != BUNDLE_VERSION {
            return Err(Error::BundleVersion {
                found: manifest.format_version,
                expected: BUNDLE_VERSION,
            });
        }
        let shapes = &manifest.shapes;
        if shapes.vocab_rows != manifest.vocabulary.rows()
            || shapes.embed_dim != manifest.config.embed_dim
            || shapes.gru_units != manifest.config.gru_units
        {
            return Err(Error::BundleFormat(
                "manifest shapes disagree with the config/vocabulary".into(),
            ));
        }

        let payload = &bytes[8 + manifest_len..];
        let expected = 4 * shapes.param_count();
        if payload.len() as u64 != expected {
            return Err(Error::BundleTruncated {
                expected,
                actual: payload.len() as u64,
            });
        }

        let hp = manifest.config.hyperparams(shapes.vocab_rows);
        let mut reader = F32Reader { bytes: payload, at: 0 };
        let mut params: ModelParams<f32> = ModelParams::zeros(&hp);
        for v in params.embedding.as_mut_slice() {
            *v = reader.next();
        }
        read_gate_blocks(&mut params.input_kernel, hp.gru_units, &mut reader);
        read_gate_blocks(&mut params.recurrent_kernel, hp.gru_units, &mut reader);
        for v in params.bias.iter_mut() {
            *v = reader.next();
        }
        for v in params.output_weights.iter_mut() {
            *v = reader.next();
        }
        params.output_bias = reader.next();
        debug_assert_eq!(reader.at, payload.len());

        Ok(ModelBundle {
            config: manifest.config,
            vocabulary: manifest.vocabulary,
            params,
            suffixes: manifest.suffixes,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ModelBundle> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        ModelBundle::from_bytes(&bytes)
    }
}

fn write_gate_blocks(kernel: &Matrix<f32>, units: usize, out: &mut Vec<u8>) {
    for gate in 0..3 {
        for r in 0..kernel.rows() {
            for c in gate * units..(gate + 1) * units {
                out.extend_from_slice(&kernel.get(r, c).to_le_bytes());
            }
        }
    }
}

fn read_gate_blocks(kernel: &mut Matrix<f32>, units: usize, reader: &mut F32Reader<'_>) {
    for gate in 0..3 {
        for r in 0..kernel.rows() {
            for c in gate * units..(gate + 1) * units {
                kernel.set(r, c, reader.next());
            }
        }
    }
}

struct F32Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl F32Reader<'_> {
    fn next(&mut self) -> f32 {
        let v = f32::from_le_bytes(self.bytes[self.at..self.at + 4].try_into().expect("4 bytes"));
        self.at += 4;
        v
    }
}
