use anyhow::{bail, Result};

use jachai_core::synthetic::make_synthetic_corpus;

use crate::args::SynthArgs;
use crate::commands::write_corpus_csv;

pub fn run(args: &SynthArgs) -> Result<()> {
    if args.size < 20 || !args.size.is_multiple_of(2) {
        bail!(jachai_core::Error::InvalidConfig(format!(
            "--size must be even and at least 20, got {}",
            args.size
        )));
    }
    let corpus = make_synthetic_corpus(args.size, args.seed);
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    write_corpus_csv(&corpus, &args.out)?;
    println!(
        "wrote {} synthetic documents ({} fake / {} real) to {}",
        corpus.len(),
        args.size / 2,
        args.size / 2,
        args.out.display()
    );
    Ok(())
}
