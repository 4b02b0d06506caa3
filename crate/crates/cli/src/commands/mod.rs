pub mod evaluate;
pub mod gradcheck;
pub mod predict;
pub mod prepare;
pub mod synth;
pub mod train;

use std::path::Path;

use anyhow::{Context, Result};
use jachai_core::data::Corpus;

pub(crate) fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
}

/// Write a corpus with the canonical header (headLine, content, label).
pub(crate) fn write_corpus_csv(corpus: &Corpus, path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    writer.write_record(["headLine", "content", "label"])?;
    for doc in corpus.iter() {
        writer.write_record([doc.headline.as_str(), doc.content.as_str(), doc.label.as_str()])?;
    }
    writer.flush()?;
    Ok(())
}

pub(crate) fn write_json(value: &impl serde::Serialize, path: &Path) -> Result<()> {
    let body = serde_json::to_string_pretty(value)?;
    std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
}
