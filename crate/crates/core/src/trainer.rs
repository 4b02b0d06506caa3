//! Mini-batch training loop with per-epoch history.
//!
//! Per epoch: a seeded shuffle of the training set, mini-batches (final
//! partial batch included), and per batch one Adam step on the mean of the
//! per-example gradients. Per-example gradients are always reduced in
//! ascending example order, so results are bit-identical for any worker
//! thread count.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{
    adam_step, backward_example, bce_loss, forward, init_params, AdamState, ExampleGradients,
    Gradients, Hyperparams, ModelParams,
};
use crate::vectorizer::EncodedExample;

/// Stream id for the epoch shuffles, kept distinct from the parameter
/// initialization stream derived from the same seed.
const SHUFFLE_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

/// One row of the training history.
///
/// `train_loss` is the mean of the epoch's batch losses and
/// `train_accuracy` the running fraction of training examples classified
/// correctly during the epoch (each under the parameters its batch saw).
/// Validation metrics are computed once per epoch with the end-of-epoch
/// parameters, averaged over examples.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_accuracy: f64,
    pub val_loss: f64,
    pub val_accuracy: f64,
}

/// Map `f` over `items`, in order, on up to `threads` workers. The output
/// order always matches the input order.
pub(crate) fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk_size = items.len().div_ceil(threads);
    let mut out: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(|| chunk.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        for handle in handles {
            out.push(handle.join().expect("worker panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

/// Forward-only probabilities for a set of examples.
pub(crate) fn batch_probabilities(
    params: &ModelParams<f32>,
    hp: &Hyperparams,
    examples: &[EncodedExample],
    threads: usize,
) -> Result<Vec<f32>> {
    par_map(examples, threads, |ex| {
        forward(&ex.ids, params, hp).map(|(p, _)| p)
    })
    .into_iter()
    .collect()
}

/// Mean example loss and accuracy at threshold 0.5.
fn loss_and_accuracy(
    params: &ModelParams<f32>,
    hp: &Hyperparams,
    examples: &[EncodedExample],
    threads: usize,
) -> Result<(f64, f64)> {
    let probabilities = batch_probabilities(params, hp, examples, threads)?;
    let mut loss_sum = 0.0f64;
    let mut correct = 0usize;
    for (p, ex) in probabilities.iter().zip(examples) {
        loss_sum += bce_loss(*p, ex.label) as f64;
        let predicted: u8 = if *p >= 0.5 { 1 } else { 0 };
        if predicted == ex.label {
            correct += 1;
        }
    }
    let n = examples.len() as f64;
    Ok((loss_sum / n, correct as f64 / n))
}

/// Train a fresh model. Deterministic per `hp.seed` for any `threads`.
///
/// The training set is expected to be encoded (and, if desired, already
/// oversampled); the validation set must never be oversampled. `on_epoch`
/// runs after each epoch with the record just produced.
pub fn train(
    train_set: &[EncodedExample],
    val_set: &[EncodedExample],
    hp: &Hyperparams,
    threads: usize,
    mut on_epoch: impl FnMut(&EpochRecord),
) -> Result<(ModelParams<f32>, Vec<EpochRecord>)> {
    hp.validate()?;
    if train_set.is_empty() {
        return Err(Error::EmptyDataset("training"));
    }
    if val_set.is_empty() {
        return Err(Error::EmptyDataset("validation"));
    }
    let threads = threads.max(1);

    let mut params: ModelParams<f32> = init_params(hp, hp.seed);
    let mut adam = AdamState::new(hp);
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(hp.seed ^ SHUFFLE_STREAM);
    let mut order: Vec<usize> = (0..train_set.len()).collect();
    let mut history = Vec::with_capacity(hp.epochs);

    for epoch in 1..=hp.epochs {
        order.shuffle(&mut shuffle_rng);

        let mut batch_loss_sum = 0.0f64;
        let mut batch_count = 0usize;
        let mut correct = 0usize;

        for (batch_index, batch) in order.chunks(hp.batch_size).enumerate() {
            type ExampleOut = Result<(f32, ExampleGradients<f32>)>;
            let outputs: Vec<ExampleOut> = par_map(batch, threads, |&idx| {
                let example = &train_set[idx];
                let (p, cache) = forward(&example.ids, &params, hp)?;
                let grads = backward_example(&cache, &params, example.label, hp);
                Ok((p, grads))
            });

            let mut grads: Gradients<f32> = Gradients::zeros(hp);
            let mut loss_sum = 0.0f64;
            for (&idx, output) in batch.iter().zip(outputs) {
                let (p, example_grads) = output?;
                let example = &train_set[idx];
                loss_sum += bce_loss(p, example.label) as f64;
                let predicted: u8 = if p >= 0.5 { 1 } else { 0 };
                if predicted == example.label {
                    correct += 1;
                }
                example_grads.add_into(&mut grads);
            }

            let batch_loss = loss_sum / batch.len() as f64;
            if !batch_loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    batch: batch_index,
                });
            }
            grads.scale(1.0 / batch.len() as f32);
            adam_step(&mut params, &grads, &mut adam, hp);

            batch_loss_sum += batch_loss;
            batch_count += 1;
        }

        let (val_loss, val_accuracy) = loss_and_accuracy(&params, hp, val_set, threads)?;
        let record = EpochRecord {
            epoch,
            train_loss: batch_loss_sum / batch_count as f64,
            train_accuracy: correct as f64 / train_set.len() as f64,
            val_loss,
            val_accuracy,
        };
        on_epoch(&record);
        history.push(record);
    }

    Ok((params, history))
}

/// Render history as CSV with the canonical header.
pub fn history_to_csv(history: &[EpochRecord]) -> String {
    let mut out = String::from("epoch,train_loss,train_acc,val_loss,val_acc\n");
    for r in history {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.epoch, r.train_loss, r.train_accuracy, r.val_loss, r.val_accuracy
        ));
    }
    out
}
