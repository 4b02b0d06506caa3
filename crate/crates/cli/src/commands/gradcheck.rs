use anyhow::Result;

use jachai_core::model::{check_hyperparams, grad_check};

use crate::args::GradcheckArgs;

const THRESHOLD: f64 = 1e-4;

/// Returns the process exit code: 0 when every seed passes, 3 otherwise.
pub fn run(args: &GradcheckArgs) -> Result<i32> {
    let hp = check_hyperparams();
    eprintln!(
        "reduced model: vocab_rows {}, embed_dim {}, gru_units {}, seq_len {} (f64), eps {}",
        hp.vocab_rows, hp.embed_dim, hp.gru_units, hp.seq_len, args.eps
    );

    let mut worst = 0.0f64;
    for seed in 0..args.seeds {
        let err = grad_check(&hp, seed, args.eps)?;
        let verdict = if err < THRESHOLD { "ok" } else { "FAIL" };
        println!("seed {seed}: max relative error {err:.3e} ... {verdict}");
        worst = worst.max(err);
    }
    println!("max relative error over {} seed(s): {worst:.3e}", args.seeds);

    if worst < THRESHOLD {
        Ok(0)
    } else {
        eprintln!("gradient check failed: {worst:.3e} >= {THRESHOLD:.0e}");
        Ok(3)
    }
}
