//! Full-pipeline integration on the synthetic corpus: prepare, train,
//! evaluate, persist, predict.

use jachai_core::config::RunConfig;
use jachai_core::data::{class_counts, Label};
use jachai_core::eval::evaluate;
use jachai_core::pipeline::prepare;
use jachai_core::synthetic::{make_synthetic_corpus, FAKE_KEYWORDS, REAL_KEYWORDS};
use jachai_core::text::Lemmatizer;
use jachai_core::trainer::{history_to_csv, train};
use jachai_core::ModelBundle;

fn trained_bundle(n: usize, epochs: usize) -> (ModelBundle, Vec<jachai_core::EpochRecord>) {
    let corpus = make_synthetic_corpus(n, 5);
    let config = RunConfig {
        epochs,
        ..RunConfig::default()
    };
    let prepared = prepare(&corpus, &config).unwrap();
    let hp = config.hyperparams(prepared.vocabulary.rows());
    let (params, history) = train(&prepared.train, &prepared.validation, &hp, 1, |_| {}).unwrap();
    let bundle = ModelBundle::new(config, prepared.vocabulary.clone(), params, &Lemmatizer::identity());
    (bundle, history)
}

#[test]
fn learns_the_separable_corpus_and_survives_persistence() {
    let corpus = make_synthetic_corpus(600, 5);
    let config = RunConfig::default();
    let prepared = prepare(&corpus, &config).unwrap();
    assert_eq!(class_counts(&prepared.train_corpus).fake, class_counts(&prepared.train_corpus).real);

    let hp = config.hyperparams(prepared.vocabulary.rows());
    let (params, history) = train(&prepared.train, &prepared.validation, &hp, 1, |_| {}).unwrap();
    assert_eq!(history.len(), hp.epochs);
    assert!(
        history.last().unwrap().train_loss < history.first().unwrap().train_loss,
        "training did not reduce the loss"
    );
    assert!(params.all_finite());
    for record in &history {
        assert!(record.train_loss.is_finite() && record.val_loss.is_finite());
        assert!((0.0..=1.0).contains(&record.train_accuracy));
        assert!((0.0..=1.0).contains(&record.val_accuracy));
    }

    let report = evaluate(&params, &hp, &prepared.test, 1).unwrap();
    assert!(report.accuracy >= 0.9, "test accuracy {}", report.accuracy);
    assert_eq!(report.examples as usize, prepared.test.len());

    // Round-trip through the bundle file and compare evaluation outputs.
    let bundle = ModelBundle::new(
        config,
        prepared.vocabulary.clone(),
        params,
        &Lemmatizer::identity(),
    );
    let path = std::env::temp_dir().join(format!("jachai-e2e-{}.bundle", std::process::id()));
    bundle.save(&path).unwrap();
    let loaded = ModelBundle::load(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let report_after = loaded.evaluate(&prepared.test, 1).unwrap();
    assert_eq!(report, report_after);
}

#[test]
fn predict_separates_keyword_documents() {
    let (bundle, _) = trained_bundle(600, 10);

    let fake_text = FAKE_KEYWORDS[..8].join(" ");
    let fake_pred = bundle.predict(&fake_text, &fake_text).unwrap();
    assert_eq!(fake_pred.label, Label::Fake);
    assert!(fake_pred.probability < 0.5);

    let real_text = REAL_KEYWORDS[..8].join(" ");
    let real_pred = bundle.predict(&real_text, &real_text).unwrap();
    assert_eq!(real_pred.label, Label::Real);
    assert!(real_pred.probability >= 0.5);
}

#[test]
fn history_is_reproducible_across_full_pipeline_runs() {
    let run = || {
        let corpus = make_synthetic_corpus(200, 3);
        let config = RunConfig {
            epochs: 3,
            ..RunConfig::default()
        };
        let prepared = prepare(&corpus, &config).unwrap();
        let hp = config.hyperparams(prepared.vocabulary.rows());
        let (_, history) = train(&prepared.train, &prepared.validation, &hp, 1, |_| {}).unwrap();
        history_to_csv(&history)
    };
    assert_eq!(run(), run());
}
