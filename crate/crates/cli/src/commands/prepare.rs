use anyhow::Result;
use serde::Serialize;

use jachai_core::data::{class_counts, load_corpus, ClassCounts};
use jachai_core::pipeline;

use super::{ensure_out_dir, write_corpus_csv, write_json};
use crate::args::PrepareArgs;
use crate::manifest::RunManifest;

#[derive(Serialize)]
struct ClassCountReport {
    initial: ClassCounts,
    train: ClassCounts,
    validation: ClassCounts,
    test: ClassCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    train_after_oversample: Option<ClassCounts>,
}

pub fn run(args: &PrepareArgs) -> Result<()> {
    let config = args.overrides.resolve(Some(&args.data), Some(&args.out))?;
    ensure_out_dir(&args.out)?;

    let (corpus, report) = load_corpus(&args.data)?;
    eprintln!(
        "loaded {} documents ({} rows read, {} dropped missing, {} dropped bad label)",
        report.loaded, report.rows_read, report.dropped_missing, report.dropped_bad_label
    );

    let prepared = pipeline::prepare(&corpus, &config)?;
    eprintln!(
        "vocabulary: {} words (cap {}); split {}/{}/{}",
        prepared.vocabulary.len(),
        config.max_words,
        prepared.splits.train.len(),
        prepared.splits.validation.len(),
        prepared.splits.test.len()
    );

    write_corpus_csv(&prepared.splits.train, &args.out.join("train.csv"))?;
    write_corpus_csv(&prepared.splits.validation, &args.out.join("validation.csv"))?;
    write_corpus_csv(&prepared.splits.test, &args.out.join("test.csv"))?;
    write_json(&prepared.vocabulary, &args.out.join("vocabulary.json"))?;
    write_json(&report, &args.out.join("load_report.json"))?;

    let counts = ClassCountReport {
        initial: prepared.initial_counts,
        train: class_counts(&prepared.splits.train),
        validation: class_counts(&prepared.splits.validation),
        test: class_counts(&prepared.splits.test),
        train_after_oversample: config.oversample.then_some(prepared.train_counts),
    };
    write_json(&counts, &args.out.join("class_counts.json"))?;

    let mut manifest = RunManifest::new("prepare", &config);
    manifest.stamp_input(&args.data)?;
    manifest.write(&args.out)?;

    println!("prepared splits, vocabulary and reports in {}", args.out.display());
    Ok(())
}
