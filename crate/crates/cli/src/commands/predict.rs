use anyhow::{bail, Context, Result};
use serde_json::json;

use jachai_core::bundle::ModelBundle;

use crate::args::PredictArgs;

pub fn run(args: &PredictArgs) -> Result<()> {
    let bundle = ModelBundle::load(&args.model)?;

    if let Some(input) = &args.input {
        return predict_csv(&bundle, input);
    }

    let headline = args.headline.as_deref().unwrap_or("");
    let content = args.content.as_deref().unwrap_or("");
    if headline.is_empty() && content.is_empty() {
        bail!(jachai_core::Error::InvalidConfig(
            "predict needs --headline/--content or --input".into()
        ));
    }
    let prediction = bundle.predict(headline, content)?;
    if prediction.token_count == 0 {
        eprintln!("warning: input cleaned down to nothing; predicting on an all-padding sequence");
    }
    println!(
        "{}",
        json!({ "label": prediction.label, "probability": prediction.probability })
    );
    Ok(())
}

/// Batch mode: read headLine/content columns (label optional, ignored) and
/// print one `label,probability` CSV row per input, in order.
fn predict_csv(bundle: &ModelBundle, path: &std::path::Path) -> Result<()> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
    };
    let (Some(headline_idx), Some(content_idx)) = (find("headline"), find("content")) else {
        bail!(jachai_core::Error::InvalidConfig(format!(
            "{} must have headLine and content columns",
            path.display()
        )));
    };

    println!("label,probability");
    let mut empty_inputs = 0usize;
    for record in reader.records() {
        let record = record?;
        let headline = record.get(headline_idx).unwrap_or("");
        let content = record.get(content_idx).unwrap_or("");
        let prediction = bundle.predict(headline, content)?;
        if prediction.token_count == 0 {
            empty_inputs += 1;
        }
        println!("{},{}", prediction.label, prediction.probability);
    }
    if empty_inputs > 0 {
        eprintln!("warning: {empty_inputs} input(s) cleaned down to nothing");
    }
    Ok(())
}
