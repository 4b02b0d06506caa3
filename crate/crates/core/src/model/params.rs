//! Learnable parameters, their gradients, and initialization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::math::{Matrix, Scalar};
use super::Hyperparams;

/// All learnable parameters of the embedding → GRU → sigmoid model.
///
/// Kernel columns are laid out `[z | r | h]` (update gate, reset gate,
/// candidate), `units` columns each.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T> {
    /// vocab_rows × embed_dim.
    pub embedding: Matrix<T>,
    /// embed_dim × 3·units.
    pub input_kernel: Matrix<T>,
    /// units × 3·units.
    pub recurrent_kernel: Matrix<T>,
    /// 3·units, `[z | r | h]`.
    pub bias: Vec<T>,
    /// units.
    pub output_weights: Vec<T>,
    pub output_bias: T,
}

/// One gradient tensor per parameter tensor, same shapes.
pub type Gradients<T> = ModelParams<T>;

/// Identifies one parameter tensor; used by the serializer and the
/// finite-difference checker to walk every entry in a stable order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamField {
    Embedding,
    InputKernel,
    RecurrentKernel,
    Bias,
    OutputWeights,
    OutputBias,
}

impl ParamField {
    pub const ALL: [ParamField; 6] = [
        ParamField::Embedding,
        ParamField::InputKernel,
        ParamField::RecurrentKernel,
        ParamField::Bias,
        ParamField::OutputWeights,
        ParamField::OutputBias,
    ];
}

impl<T: Scalar> ModelParams<T> {
    pub fn zeros(hp: &Hyperparams) -> ModelParams<T> {
        ModelParams {
            embedding: Matrix::zeros(hp.vocab_rows, hp.embed_dim),
            input_kernel: Matrix::zeros(hp.embed_dim, 3 * hp.gru_units),
            recurrent_kernel: Matrix::zeros(hp.gru_units, 3 * hp.gru_units),
            bias: vec![T::ZERO; 3 * hp.gru_units],
            output_weights: vec![T::ZERO; hp.gru_units],
            output_bias: T::ZERO,
        }
    }

    pub fn units(&self) -> usize {
        self.output_weights.len()
    }

    pub fn embed_dim(&self) -> usize {
        self.embedding.cols()
    }

    pub fn vocab_rows(&self) -> usize {
        self.embedding.rows()
    }

    /// Total number of scalar parameters.
    pub fn param_count(&self) -> usize {
        ParamField::ALL.iter().map(|f| self.field(*f).len()).sum()
    }

    pub fn field(&self, field: ParamField) -> &[T] {
        match field {
            ParamField::Embedding => self.embedding.as_slice(),
            ParamField::InputKernel => self.input_kernel.as_slice(),
            ParamField::RecurrentKernel => self.recurrent_kernel.as_slice(),
            ParamField::Bias => &self.bias,
            ParamField::OutputWeights => &self.output_weights,
            ParamField::OutputBias => std::slice::from_ref(&self.output_bias),
        }
    }

    pub fn field_mut(&mut self, field: ParamField) -> &mut [T] {
        match field {
            ParamField::Embedding => self.embedding.as_mut_slice(),
            ParamField::InputKernel => self.input_kernel.as_mut_slice(),
            ParamField::RecurrentKernel => self.recurrent_kernel.as_mut_slice(),
            ParamField::Bias => &mut self.bias,
            ParamField::OutputWeights => &mut self.output_weights,
            ParamField::OutputBias => std::slice::from_mut(&mut self.output_bias),
        }
    }

    pub fn all_finite(&self) -> bool {
        ParamField::ALL
            .iter()
            .all(|f| self.field(*f).iter().all(|v| v.is_finite()))
    }

    /// Multiply every entry by `factor`.
    pub fn scale(&mut self, factor: T) {
        for field in ParamField::ALL {
            for v in self.field_mut(field) {
                *v *= factor;
            }
        }
    }

    /// Add `other` entry-wise.
    pub fn add_assign(&mut self, other: &ModelParams<T>) {
        for field in ParamField::ALL {
            let src = other.field(field);
            for (dst, s) in self.field_mut(field).iter_mut().zip(src) {
                *dst += *s;
            }
        }
    }
}

/// Initialize parameters: embeddings uniform in (−0.05, 0.05), kernels
/// Glorot-uniform per gate block, biases zero. Draw order is fixed
/// (embedding row-major, then input kernel by gate block, then recurrent
/// kernel by gate block, then output weights), so a seed fully determines
/// the result; identical seeds give bit-identical parameters.
pub fn init_params<T: Scalar>(hp: &Hyperparams, seed: u64) -> ModelParams<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = ModelParams::zeros(hp);
    let units = hp.gru_units;

    for v in params.embedding.as_mut_slice() {
        *v = T::from_f64(rng.random_range(-0.05..0.05));
    }

    // Glorot-uniform limit for one gate block of a kernel.
    let glorot = |fan_in: usize, fan_out: usize| (6.0 / (fan_in + fan_out) as f64).sqrt();

    let w_limit = glorot(hp.embed_dim, units);
    fill_gate_blocks(&mut params.input_kernel, units, w_limit, &mut rng);
    let u_limit = glorot(units, units);
    fill_gate_blocks(&mut params.recurrent_kernel, units, u_limit, &mut rng);

    let out_limit = glorot(units, 1);
    for v in params.output_weights.iter_mut() {
        *v = T::from_f64(rng.random_range(-out_limit..out_limit));
    }
    params
}

fn fill_gate_blocks<T: Scalar>(kernel: &mut Matrix<T>, units: usize, limit: f64, rng: &mut ChaCha8Rng) {
    let rows = kernel.rows();
    for gate in 0..3 {
        for r in 0..rows {
            for c in gate * units..(gate + 1) * units {
                kernel.set(r, c, T::from_f64(rng.random_range(-limit..limit)));
            }
        }
    }
}
