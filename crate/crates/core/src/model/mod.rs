//! From-scratch differentiable model: embedding → GRU → sigmoid head, with
//! binary cross-entropy loss, backpropagation through time, an Adam
//! optimizer, and a finite-difference gradient checker.
//!
//! The GRU follows the classic formulation with the reset gate applied
//! inside the candidate's recurrent term, gate order `[z, r, h]`:
//!
//! ```text
//! z_t = σ(W_z·x_t + U_z·h_{t−1} + b_z)
//! r_t = σ(W_r·x_t + U_r·h_{t−1} + b_r)
//! h̃_t = tanh(W_h·x_t + U_h·(r_t ⊙ h_{t−1}) + b_h)
//! h_t = (1 − z_t) ⊙ h_{t−1} + z_t ⊙ h̃_t
//! ```
//!
//! The classifier reads the final hidden state only (no pooling, no
//! masking), which pairs with the vectorizer's pre-padding: the last
//! timestep always carries real content.

pub mod adam;
pub mod gradcheck;
pub mod gru;
pub mod math;
pub mod params;

pub use adam::{adam_step, AdamState};
pub use gradcheck::{check_hyperparams, grad_check, max_relative_error, numeric_gradients};
pub use gru::{backward, backward_example, bce_loss, forward, ExampleGradients, ForwardCache};
pub use math::{dot, sigmoid, Matrix, Scalar};
pub use params::{init_params, Gradients, ModelParams, ParamField};

use crate::error::{Error, Result};

/// Model and training hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparams {
    /// Embedding rows: content vocabulary plus the two reserved ids.
    pub vocab_rows: usize,
    pub embed_dim: usize,
    pub gru_units: usize,
    pub seq_len: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub adam_epsilon: f64,
    /// Predicted probabilities are clipped to `[ε, 1−ε]` before the loss.
    pub clip_epsilon: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub seed: u64,
}

impl Hyperparams {
    /// Defaults used throughout: embedding 100, 32 GRU units, sequences of
    /// 100 ids, Adam at 1e-4, batches of 32, 10 epochs.
    pub fn new(vocab_rows: usize) -> Hyperparams {
        Hyperparams {
            vocab_rows,
            embed_dim: 100,
            gru_units: 32,
            seq_len: 100,
            learning_rate: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            adam_epsilon: 1e-8,
            clip_epsilon: 1e-7,
            batch_size: 32,
            epochs: 10,
            seed: 42,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("vocab_rows", self.vocab_rows),
            ("embed_dim", self.embed_dim),
            ("gru_units", self.gru_units),
            ("seq_len", self.seq_len),
            ("batch_size", self.batch_size),
            ("epochs", self.epochs),
        ];
        for (name, value) in positive {
            if value == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "learning_rate must be in [0, 1), got {}",
                self.learning_rate
            )));
        }
        for (name, value) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be in (0, 1), got {value}"
                )));
            }
        }
        for (name, value) in [
            ("adam_epsilon", self.adam_epsilon),
            ("clip_epsilon", self.clip_epsilon),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be in (0, 1), got {value}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(Hyperparams::new(10_002).validate().is_ok());
    }

    #[test]
    fn zero_counts_are_rejected() {
        let mut hp = Hyperparams::new(100);
        hp.gru_units = 0;
        assert!(hp.validate().is_err());

        let mut hp = Hyperparams::new(100);
        hp.beta1 = 1.0;
        assert!(hp.validate().is_err());
    }
}
