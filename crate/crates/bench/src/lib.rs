//! Shared fixtures for the benchmarks.

use jachai_core::config::RunConfig;
use jachai_core::model::{init_params, Hyperparams, ModelParams};
use jachai_core::pipeline::{self, PreparedData};
use jachai_core::synthetic::make_synthetic_corpus;

/// A Bangla paragraph with punctuation and code-mixed Latin, sized for the
/// text benchmarks.
pub fn bangla_paragraph() -> String {
    let sentence = "BTV থেকে লোকজন আসছে, ইন্টারভিউ নিবে। মুরগির হামলায় শেয়াল নিহত! \
                    অদ্ভুত বিরোধীদলহীনতায় ভুগছে সরকার, এ এক অন্যরকম সময়। ";
    sentence.repeat(20)
}

/// Model at the default production dimensions with a full-length input.
pub fn default_scale_model() -> (ModelParams<f32>, Hyperparams, Vec<u32>) {
    let hp = Hyperparams::new(10_002);
    let params = init_params(&hp, 42);
    let ids: Vec<u32> = (0..hp.seq_len as u32)
        .map(|i| (i * 97) % hp.vocab_rows as u32)
        .collect();
    (params, hp, ids)
}

/// A prepared synthetic dataset for pipeline-level benchmarks.
pub fn prepared_synthetic(n: usize) -> PreparedData {
    let corpus = make_synthetic_corpus(n, 1);
    pipeline::prepare(&corpus, &RunConfig::default()).expect("synthetic corpus prepares")
}
