//! Forward pass, binary cross-entropy, and backpropagation through time.

use super::math::{dot, sigmoid, Matrix, Scalar};
use super::params::{Gradients, ModelParams};
use super::Hyperparams;
use crate::error::{Error, Result};

/// Everything the backward pass needs from one forward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache<T> {
    /// Input token ids, one per timestep.
    pub ids: Vec<usize>,
    /// Hidden states h_0..h_T (h_0 is the zero vector), seq_len + 1 entries.
    pub hidden: Vec<Vec<T>>,
    /// Update gate activations z_1..z_T.
    pub update: Vec<Vec<T>>,
    /// Reset gate activations r_1..r_T.
    pub reset: Vec<Vec<T>>,
    /// Candidate activations h̃_1..h̃_T.
    pub candidate: Vec<Vec<T>>,
    /// Clipped output probability.
    pub probability: T,
    /// Whether the clip actually bound (probability left `(ε, 1−ε)`).
    pub clipped: bool,
}

/// Run the model over one id sequence.
///
/// Returns the output probability (clipped to `[ε, 1−ε]`) and the cache for
/// [`backward`]. Ids must have length `hp.seq_len` and lie below
/// `hp.vocab_rows`.
pub fn forward<T: Scalar>(
    ids: &[u32],
    params: &ModelParams<T>,
    hp: &Hyperparams,
) -> Result<(T, ForwardCache<T>)> {
    if ids.len() != hp.seq_len {
        return Err(Error::SequenceLength {
            expected: hp.seq_len,
            got: ids.len(),
        });
    }
    let units = hp.gru_units;
    let three = 3 * units;

    let mut hidden = Vec::with_capacity(hp.seq_len + 1);
    hidden.push(vec![T::ZERO; units]);
    let mut update = Vec::with_capacity(hp.seq_len);
    let mut reset = Vec::with_capacity(hp.seq_len);
    let mut candidate = Vec::with_capacity(hp.seq_len);
    let mut id_steps = Vec::with_capacity(hp.seq_len);

    for &raw_id in ids {
        let id = raw_id as usize;
        if id >= hp.vocab_rows {
            return Err(Error::TokenIdOutOfRange {
                id: raw_id,
                rows: hp.vocab_rows,
            });
        }
        id_steps.push(id);
        let x = params.embedding.row(id);
        let h_prev = hidden.last().expect("h_0 pushed above");

        // Pre-activations for all three gates: a = x·W + b, then the
        // recurrent terms (z and r use h_{t−1}; the candidate adds
        // r ⊙ h_{t−1} after the reset gate is known).
        let mut act: Vec<T> = params.bias.clone();
        for (j, &xj) in x.iter().enumerate() {
            let w_row = params.input_kernel.row(j);
            for (a, &w) in act.iter_mut().zip(w_row) {
                *a += xj * w;
            }
        }
        for (j, &hj) in h_prev.iter().enumerate() {
            let u_row = params.recurrent_kernel.row(j);
            for k in 0..2 * units {
                act[k] += hj * u_row[k];
            }
        }

        let z: Vec<T> = (0..units).map(|k| sigmoid(act[k])).collect();
        let r: Vec<T> = (0..units).map(|k| sigmoid(act[units + k])).collect();

        for (j, &hj) in h_prev.iter().enumerate() {
            let gated = r[j] * hj;
            let u_row = params.recurrent_kernel.row(j);
            for k in 0..units {
                act[2 * units + k] += gated * u_row[2 * units + k];
            }
        }
        debug_assert_eq!(act.len(), three);
        let cand: Vec<T> = (0..units).map(|k| act[2 * units + k].tanh()).collect();

        let h_new: Vec<T> = (0..units)
            .map(|k| (T::ONE - z[k]) * h_prev[k] + z[k] * cand[k])
            .collect();

        update.push(z);
        reset.push(r);
        candidate.push(cand);
        hidden.push(h_new);
    }

    let h_last = hidden.last().expect("nonempty");
    let logit = dot(&params.output_weights, h_last) + params.output_bias;
    let raw = sigmoid(logit);
    let eps = T::from_f64(hp.clip_epsilon);
    let probability = raw.clamp(eps, T::ONE - eps);
    let clipped = probability != raw;

    Ok((
        probability,
        ForwardCache {
            ids: id_steps,
            hidden,
            update,
            reset,
            candidate,
            probability,
            clipped,
        },
    ))
}

/// Binary cross-entropy: `−[y·ln p + (1−y)·ln(1−p)]`. Callers clip `p` away
/// from 0 and 1 first (the forward pass already does), so the result is
/// always finite and strictly positive.
pub fn bce_loss<T: Scalar>(p: T, y: u8) -> T {
    if y == 1 {
        -p.ln()
    } else {
        -(T::ONE - p).ln()
    }
}

/// Gradients from one example: dense for every tensor except the embedding,
/// where only the rows touched by the sequence carry gradient. Rows are
/// listed in first-touch order.
#[derive(Debug, Clone)]
pub struct ExampleGradients<T> {
    pub input_kernel: Matrix<T>,
    pub recurrent_kernel: Matrix<T>,
    pub bias: Vec<T>,
    pub output_weights: Vec<T>,
    pub output_bias: T,
    pub embedding_rows: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> ExampleGradients<T> {
    /// Expand into a dense gradient set (zeros for untouched embedding rows).
    pub fn into_dense(self, hp: &Hyperparams) -> Gradients<T> {
        let mut dense = Gradients::zeros(hp);
        self.add_into(&mut dense);
        dense
    }

    /// Accumulate into a dense gradient set.
    pub fn add_into(&self, dense: &mut Gradients<T>) {
        for (dst, src) in dense
            .input_kernel
            .as_mut_slice()
            .iter_mut()
            .zip(self.input_kernel.as_slice())
        {
            *dst += *src;
        }
        for (dst, src) in dense
            .recurrent_kernel
            .as_mut_slice()
            .iter_mut()
            .zip(self.recurrent_kernel.as_slice())
        {
            *dst += *src;
        }
        for (dst, src) in dense.bias.iter_mut().zip(&self.bias) {
            *dst += *src;
        }
        for (dst, src) in dense.output_weights.iter_mut().zip(&self.output_weights) {
            *dst += *src;
        }
        dense.output_bias += self.output_bias;
        for (row, grad) in &self.embedding_rows {
            for (dst, src) in dense.embedding.row_mut(*row).iter_mut().zip(grad) {
                *dst += *src;
            }
        }
    }
}

/// Exact gradients of [`bce_loss`] with respect to every parameter, by
/// backpropagation through the unrolled recurrence.
///
/// Embedding gradient accumulates into every row the sequence touched,
/// padding rows included. When the output clip bound, the loss is locally
/// constant and all gradients are zero.
pub fn backward_example<T: Scalar>(
    cache: &ForwardCache<T>,
    params: &ModelParams<T>,
    label: u8,
    hp: &Hyperparams,
) -> ExampleGradients<T> {
    let units = hp.gru_units;
    let embed_dim = hp.embed_dim;
    let steps = cache.update.len();

    let mut grads = ExampleGradients {
        input_kernel: Matrix::zeros(embed_dim, 3 * units),
        recurrent_kernel: Matrix::zeros(units, 3 * units),
        bias: vec![T::ZERO; 3 * units],
        output_weights: vec![T::ZERO; units],
        output_bias: T::ZERO,
        embedding_rows: Vec::new(),
    };
    let mut row_slot: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();

    // d(loss)/d(logit) of sigmoid + BCE collapses to p − y.
    let d_logit = if cache.clipped {
        T::ZERO
    } else {
        cache.probability - T::from_f64(label as f64)
    };

    let h_last = cache.hidden.last().expect("h_0 always present");
    grads.output_bias = d_logit;
    for (g, &h) in grads.output_weights.iter_mut().zip(h_last) {
        *g = d_logit * h;
    }

    // d(loss)/d(h_t), rolled backwards.
    let mut d_hidden: Vec<T> = params.output_weights.iter().map(|&w| d_logit * w).collect();

    for t in (0..steps).rev() {
        let z = &cache.update[t];
        let r = &cache.reset[t];
        let cand = &cache.candidate[t];
        let h_prev = &cache.hidden[t];
        let id = cache.ids[t];
        let x = params.embedding.row(id);

        // Pre-activation gradients, gate order [z | r | h].
        let mut d_act = vec![T::ZERO; 3 * units];
        for k in 0..units {
            let dz = d_hidden[k] * (cand[k] - h_prev[k]);
            d_act[k] = dz * z[k] * (T::ONE - z[k]);
            let d_cand = d_hidden[k] * z[k];
            d_act[2 * units + k] = d_cand * (T::ONE - cand[k] * cand[k]);
        }

        // Gradient w.r.t. the gated state s = r ⊙ h_{t−1}, then the reset
        // gate, then its pre-activation.
        let mut d_gated = vec![T::ZERO; units];
        for (j, slot) in d_gated.iter_mut().enumerate() {
            let u_row = params.recurrent_kernel.row(j);
            let mut acc = T::ZERO;
            for k in 0..units {
                acc += d_act[2 * units + k] * u_row[2 * units + k];
            }
            *slot = acc;
        }
        for j in 0..units {
            let dr = d_gated[j] * h_prev[j];
            d_act[units + j] = dr * r[j] * (T::ONE - r[j]);
        }

        // d(loss)/d(h_{t−1}): the direct (1−z) path, the r-gated candidate
        // path, and the z/r pre-activation paths.
        let mut d_prev: Vec<T> = (0..units)
            .map(|k| d_hidden[k] * (T::ONE - z[k]) + d_gated[k] * r[k])
            .collect();
        for (j, slot) in d_prev.iter_mut().enumerate() {
            let u_row = params.recurrent_kernel.row(j);
            let mut acc = T::ZERO;
            for k in 0..2 * units {
                acc += d_act[k] * u_row[k];
            }
            *slot += acc;
        }

        // Parameter gradients for this timestep.
        for (g, &da) in grads.bias.iter_mut().zip(&d_act) {
            *g += da;
        }
        for j in 0..units {
            let g_row = grads.recurrent_kernel.row_mut(j);
            for k in 0..2 * units {
                g_row[k] += h_prev[j] * d_act[k];
            }
            let gated = r[j] * h_prev[j];
            for k in 0..units {
                g_row[2 * units + k] += gated * d_act[2 * units + k];
            }
        }

        let slot = *row_slot.entry(id).or_insert_with(|| {
            grads.embedding_rows.push((id, vec![T::ZERO; embed_dim]));
            grads.embedding_rows.len() - 1
        });
        let d_embed = &mut grads.embedding_rows[slot].1;
        for (j, &xj) in x.iter().enumerate() {
            let w_row = params.input_kernel.row(j);
            let g_row = grads.input_kernel.row_mut(j);
            let mut dx = T::ZERO;
            for k in 0..3 * units {
                g_row[k] += xj * d_act[k];
                dx += w_row[k] * d_act[k];
            }
            d_embed[j] += dx;
        }

        d_hidden = d_prev;
    }

    grads
}

/// Dense-gradient form of [`backward_example`]; this is the shape contract
/// the gradient checker exercises.
pub fn backward<T: Scalar>(
    cache: &ForwardCache<T>,
    params: &ModelParams<T>,
    label: u8,
    hp: &Hyperparams,
) -> Gradients<T> {
    backward_example(cache, params, label, hp).into_dense(hp)
}
