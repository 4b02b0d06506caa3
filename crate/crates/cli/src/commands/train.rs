use anyhow::{Context, Result};

use jachai_core::bundle::ModelBundle;
use jachai_core::data::load_corpus;
use jachai_core::pipeline;
use jachai_core::trainer::{history_to_csv, train};

use super::ensure_out_dir;
use crate::args::TrainArgs;
use crate::manifest::RunManifest;

pub fn run(args: &TrainArgs) -> Result<()> {
    let config = args.overrides.resolve(Some(&args.data), Some(&args.out))?;
    ensure_out_dir(&args.out)?;

    let (corpus, report) = load_corpus(&args.data)?;
    eprintln!(
        "loaded {} documents ({} dropped)",
        report.loaded,
        report.dropped_missing + report.dropped_bad_label
    );

    let prepared = pipeline::prepare(&corpus, &config)?;
    eprintln!(
        "training on {} examples (validation {}, test {} held out), vocabulary {}",
        prepared.train.len(),
        prepared.validation.len(),
        prepared.test.len(),
        prepared.vocabulary.len()
    );

    let hp = config.hyperparams(prepared.vocabulary.rows());
    let (params, history) = train(
        &prepared.train,
        &prepared.validation,
        &hp,
        config.threads,
        |record| {
            eprintln!(
                "epoch {}/{}: train_loss {:.4} train_acc {:.4} val_loss {:.4} val_acc {:.4}",
                record.epoch,
                hp.epochs,
                record.train_loss,
                record.train_accuracy,
                record.val_loss,
                record.val_accuracy
            );
        },
    )?;

    let history_path = args.out.join("history.csv");
    std::fs::write(&history_path, history_to_csv(&history))
        .with_context(|| format!("cannot write {}", history_path.display()))?;

    let lemmatizer = pipeline::lemmatizer_for(&config)?;
    let bundle = ModelBundle::new(config.clone(), prepared.vocabulary, params, &lemmatizer);
    let bundle_path = args.out.join("model.bundle");
    bundle.save(&bundle_path)?;

    let mut manifest = RunManifest::new("train", &config);
    manifest.stamp_input(&args.data)?;
    manifest.write(&args.out)?;

    println!(
        "wrote {} and {}",
        bundle_path.display(),
        history_path.display()
    );
    Ok(())
}
