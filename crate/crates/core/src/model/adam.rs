//! Adam optimizer with bias correction.

use super::math::Scalar;
use super::params::{Gradients, ModelParams, ParamField};
use super::Hyperparams;

/// First/second moment estimates plus the step counter. Fresh state is all
/// zeros at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState<T> {
    pub m: ModelParams<T>,
    pub v: ModelParams<T>,
    pub t: u64,
}

impl<T: Scalar> AdamState<T> {
    pub fn new(hp: &Hyperparams) -> AdamState<T> {
        AdamState {
            m: ModelParams::zeros(hp),
            v: ModelParams::zeros(hp),
            t: 0,
        }
    }
}

/// One Adam update, applied element-wise over every parameter tensor:
///
/// ```text
/// t ← t+1;  m ← β₁m + (1−β₁)g;  v ← β₂v + (1−β₂)g²
/// m̂ = m/(1−β₁ᵗ);  v̂ = v/(1−β₂ᵗ);  θ ← θ − lr·m̂/(√v̂ + ε)
/// ```
pub fn adam_step<T: Scalar>(
    params: &mut ModelParams<T>,
    grads: &Gradients<T>,
    state: &mut AdamState<T>,
    hp: &Hyperparams,
) {
    state.t += 1;
    let beta1 = T::from_f64(hp.beta1);
    let beta2 = T::from_f64(hp.beta2);
    let one_minus_beta1 = T::ONE - beta1;
    let one_minus_beta2 = T::ONE - beta2;
    let lr = T::from_f64(hp.learning_rate);
    let eps = T::from_f64(hp.adam_epsilon);
    // Bias corrections computed in f64: β₂ᵗ in f32 loses precision fast.
    let correction1 = T::from_f64(1.0 - hp.beta1.powi(state.t as i32));
    let correction2 = T::from_f64(1.0 - hp.beta2.powi(state.t as i32));

    for field in ParamField::ALL {
        let g = grads.field(field);
        let m = state.m.field_mut(field);
        for (m_k, &g_k) in m.iter_mut().zip(g) {
            *m_k = beta1 * *m_k + one_minus_beta1 * g_k;
        }
        let v = state.v.field_mut(field);
        for (v_k, &g_k) in v.iter_mut().zip(g) {
            *v_k = beta2 * *v_k + one_minus_beta2 * g_k * g_k;
        }
        let theta = params.field_mut(field);
        let m = state.m.field(field);
        let v = state.v.field(field);
        for ((t_k, &m_k), &v_k) in theta.iter_mut().zip(m).zip(v) {
            let m_hat = m_k / correction1;
            let v_hat = v_k / correction2;
            *t_k -= lr * m_hat / (v_hat.sqrt() + eps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::params::init_params;

    fn tiny_hp() -> Hyperparams {
        Hyperparams {
            vocab_rows: 6,
            embed_dim: 3,
            gru_units: 2,
            seq_len: 4,
            ..Hyperparams::new(6)
        }
    }

    #[test]
    fn zero_gradient_leaves_params_unchanged() {
        let hp = tiny_hp();
        let mut params: ModelParams<f32> = init_params(&hp, 1);
        let before = params.clone();
        let grads = Gradients::zeros(&hp);
        let mut state = AdamState::new(&hp);
        adam_step(&mut params, &grads, &mut state, &hp);
        assert_eq!(params, before);
        assert_eq!(state.t, 1);
    }

    #[test]
    fn first_step_moves_by_signed_learning_rate() {
        // Fresh state: m̂ = g and v̂ = g², so the update is −lr·g/(|g|+ε),
        // within 1e-4 relative of −lr·sign(g) whenever |g| ≥ 1e-3.
        let hp = tiny_hp();
        let mut params: ModelParams<f64> = ModelParams::zeros(&hp);
        let mut grads = Gradients::zeros(&hp);
        grads.bias[1] = 2.5e-3;
        grads.bias[3] = -0.7;
        let mut state = AdamState::new(&hp);
        adam_step(&mut params, &grads, &mut state, &hp);

        let lr = hp.learning_rate;
        for (idx, sign) in [(1usize, 1.0f64), (3, -1.0)] {
            let update = params.bias[idx];
            let expected = -lr * sign;
            let rel = (update - expected).abs() / expected.abs();
            assert!(rel < 1e-4, "idx {idx}: update {update}, expected {expected}");
        }
        // Untouched entries stay at zero.
        assert_eq!(params.bias[0], 0.0);
    }

    #[test]
    fn five_steps_match_scalar_oracle() {
        // Standalone scalar Adam recurrence, kept independent of the
        // implementation above.
        let hp = tiny_hp();
        let mut params: ModelParams<f64> = ModelParams::zeros(&hp);
        let mut grads = Gradients::zeros(&hp);
        grads.output_bias = 1.0;
        let mut state = AdamState::new(&hp);

        let (beta1, beta2, lr, eps) = (hp.beta1, hp.beta2, hp.learning_rate, hp.adam_epsilon);
        let mut theta = 0.0f64;
        let (mut m, mut v) = (0.0f64, 0.0f64);
        for t in 1..=5u32 {
            adam_step(&mut params, &grads, &mut state, &hp);

            let g = 1.0f64;
            m = beta1 * m + (1.0 - beta1) * g;
            v = beta2 * v + (1.0 - beta2) * g * g;
            let m_hat = m / (1.0 - beta1.powi(t as i32));
            let v_hat = v / (1.0 - beta2.powi(t as i32));
            theta -= lr * m_hat / (v_hat.sqrt() + eps);

            assert!(
                (params.output_bias - theta).abs() < 1e-12,
                "step {t}: {} vs oracle {theta}",
                params.output_bias
            );
        }
        assert_eq!(state.t, 5);
    }

    #[test]
    fn zero_learning_rate_is_bitwise_identity() {
        let hp = Hyperparams {
            learning_rate: 0.0,
            ..tiny_hp()
        };
        let mut params: ModelParams<f32> = init_params(&hp, 9);
        let before = params.clone();
        let mut grads = Gradients::zeros(&hp);
        grads.output_weights[0] = 3.0;
        grads.bias[2] = -1.5;
        let mut state = AdamState::new(&hp);
        for _ in 0..3 {
            adam_step(&mut params, &grads, &mut state, &hp);
        }
        assert_eq!(params, before);
    }
}
