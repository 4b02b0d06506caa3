use anyhow::{Context, Result};

use jachai_core::bundle::ModelBundle;
use jachai_core::data::{load_corpus, stratified_split, Label};
use jachai_core::pipeline::encode_corpus;

use super::{ensure_out_dir, write_json};
use crate::args::{EvaluateArgs, SplitChoice};
use crate::manifest::RunManifest;

pub fn run(args: &EvaluateArgs) -> Result<()> {
    let bundle = ModelBundle::load(&args.model)?;
    let config = &bundle.config;
    ensure_out_dir(&args.out)?;

    let (corpus, _) = load_corpus(&args.data)?;
    let splits = stratified_split(&corpus, config.split_ratios, config.seed)?;
    let (part, part_name) = match args.split {
        SplitChoice::Train => (&splits.train, "train"),
        SplitChoice::Validation => (&splits.validation, "validation"),
        SplitChoice::Test => (&splits.test, "test"),
    };
    eprintln!(
        "evaluating {part_name} split: {} documents (seed {}, ratios {:?})",
        part.len(),
        config.seed,
        config.split_ratios
    );

    let lemmatizer = bundle.lemmatizer();
    let examples = encode_corpus(
        part,
        &bundle.vocabulary,
        config.text_source,
        &lemmatizer,
        config.seq_len,
    );
    let threads = args.threads.unwrap_or(config.threads);
    let report = bundle.evaluate(&examples, threads)?;

    write_json(&report, &args.out.join("eval_report.json"))?;
    let table = report.to_table();
    std::fs::write(args.out.join("eval_report.txt"), &table)
        .with_context(|| "cannot write eval_report.txt")?;
    write_json(&report.confusion, &args.out.join("confusion_matrix.json"))?;
    std::fs::write(
        args.out.join("confusion_matrix.txt"),
        report.confusion.to_grid(Label::Fake),
    )
    .with_context(|| "cannot write confusion_matrix.txt")?;

    let mut manifest = RunManifest::new("evaluate", config);
    manifest.stamp_input(&args.data)?;
    manifest.stamp_input(&args.model)?;
    manifest.write(&args.out)?;

    print!("{table}");
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(())
}
