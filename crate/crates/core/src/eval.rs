//! Confusion-matrix metrics and model evaluation.
//!
//! Metric definitions:
//!
//! ```text
//! precision = TP / (TP + FP)        recall = TP / (TP + FN)
//! f1 = 2·TP / (2·TP + FP + FN)      accuracy = (TP + TN) / (TP + TN + FP + FN)
//! ```
//!
//! Any 0/0 is defined as 0 and flagged. The evaluation report carries both
//! per-class views (fake as positive and real as positive) plus their macro
//! average; the stored confusion matrix treats fake as the positive class.

use serde::{Deserialize, Serialize};

use crate::data::Label;
use crate::error::{Error, Result};
use crate::model::{Hyperparams, ModelParams};
use crate::trainer::batch_probabilities;
use crate::vectorizer::EncodedExample;

/// 2×2 outcome counts for a chosen positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    #[serde(rename = "tp")]
    pub true_positives: u64,
    #[serde(rename = "fp")]
    pub false_positives: u64,
    #[serde(rename = "fn")]
    pub false_negatives: u64,
    #[serde(rename = "tn")]
    pub true_negatives: u64,
}

impl ConfusionMatrix {
    pub fn zero() -> ConfusionMatrix {
        ConfusionMatrix {
            true_positives: 0,
            false_positives: 0,
            false_negatives: 0,
            true_negatives: 0,
        }
    }

    /// Tally (actual, predicted) pairs with `positive` as the positive
    /// class.
    pub fn from_outcomes<I>(outcomes: I, positive: Label) -> ConfusionMatrix
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let mut cm = ConfusionMatrix::zero();
        for (actual, predicted) in outcomes {
            match (actual == positive, predicted == positive) {
                (true, true) => cm.true_positives += 1,
                (false, true) => cm.false_positives += 1,
                (true, false) => cm.false_negatives += 1,
                (false, false) => cm.true_negatives += 1,
            }
        }
        cm
    }

    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.false_negatives + self.true_negatives
    }

    /// The same outcomes viewed with the other class as positive.
    pub fn swapped(&self) -> ConfusionMatrix {
        ConfusionMatrix {
            true_positives: self.true_negatives,
            false_positives: self.false_negatives,
            false_negatives: self.false_positives,
            true_negatives: self.true_positives,
        }
    }

    /// Plain-text 2×2 grid, actual class on rows.
    pub fn to_grid(&self, positive: Label) -> String {
        let negative = match positive {
            Label::Fake => Label::Real,
            Label::Real => Label::Fake,
        };
        let mut out = String::new();
        out.push_str(&format!(
            "{:<14}{:>16}{:>16}\n",
            "",
            format!("pred {positive}"),
            format!("pred {negative}")
        ));
        out.push_str(&format!(
            "{:<14}{:>16}{:>16}\n",
            format!("actual {positive}"),
            self.true_positives,
            self.false_negatives
        ));
        out.push_str(&format!(
            "{:<14}{:>16}{:>16}\n",
            format!("actual {negative}"),
            self.false_positives,
            self.true_negatives
        ));
        out
    }
}

/// The four headline metrics for one positive-class view.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    /// True when any metric hit a 0/0 and was defined as 0.
    pub degenerate: bool,
}

fn safe_div(numerator: f64, denominator: f64, degenerate: &mut bool) -> f64 {
    if denominator == 0.0 {
        *degenerate = true;
        0.0
    } else {
        numerator / denominator
    }
}

/// Evaluate the four metric equations on a confusion matrix. An all-zero
/// matrix is an error; 0/0 cases are defined as 0 with the `degenerate`
/// flag set.
pub fn compute_metrics(cm: &ConfusionMatrix) -> Result<Metrics> {
    if cm.total() == 0 {
        return Err(Error::EmptyEvaluation);
    }
    let (tp, fp, fn_, tn) = (
        cm.true_positives as f64,
        cm.false_positives as f64,
        cm.false_negatives as f64,
        cm.true_negatives as f64,
    );
    let mut degenerate = false;
    let precision = safe_div(tp, tp + fp, &mut degenerate);
    let recall = safe_div(tp, tp + fn_, &mut degenerate);
    let f1 = safe_div(2.0 * tp, 2.0 * tp + fp + fn_, &mut degenerate);
    let accuracy = (tp + tn) / (tp + tn + fp + fn_);
    Ok(Metrics {
        precision,
        recall,
        f1,
        accuracy,
        degenerate,
    })
}

/// Precision/recall/F1 for one class view.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl From<Metrics> for ClassMetrics {
    fn from(m: Metrics) -> ClassMetrics {
        ClassMetrics {
            precision: m.precision,
            recall: m.recall,
            f1: m.f1,
        }
    }
}

/// Full evaluation result: per-class metrics for both classes, macro
/// averages, accuracy, and the fake-as-positive confusion matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub fake: ClassMetrics,
    pub real: ClassMetrics,
    /// Unweighted mean of the two per-class rows.
    pub macro_avg: ClassMetrics,
    pub accuracy: f64,
    /// Fake is the positive class here.
    pub confusion: ConfusionMatrix,
    pub examples: u64,
    pub warnings: Vec<String>,
}

impl EvalReport {
    /// Build a report from a fake-as-positive confusion matrix.
    pub fn from_confusion(confusion: ConfusionMatrix) -> Result<EvalReport> {
        let fake_view = compute_metrics(&confusion)?;
        let real_view = compute_metrics(&confusion.swapped())?;
        let mut warnings = Vec::new();
        if fake_view.degenerate {
            warnings.push("fake-class metrics hit a 0/0 and were defined as 0".to_string());
        }
        if real_view.degenerate {
            warnings.push("real-class metrics hit a 0/0 and were defined as 0".to_string());
        }
        Ok(EvalReport {
            fake: fake_view.into(),
            real: real_view.into(),
            macro_avg: ClassMetrics {
                precision: (fake_view.precision + real_view.precision) / 2.0,
                recall: (fake_view.recall + real_view.recall) / 2.0,
                f1: (fake_view.f1 + real_view.f1) / 2.0,
            },
            accuracy: fake_view.accuracy,
            examples: confusion.total(),
            confusion,
            warnings,
        })
    }

    /// Aligned plain-text table: one row per class plus the macro average,
    /// accuracy reported once.
    pub fn to_table(&self) -> String {
        let pct = |v: f64| format!("{:.1}%", v * 100.0);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10}{:>12}{:>12}{:>12}{:>12}\n",
            "", "precision", "recall", "f1", "accuracy"
        ));
        out.push_str(&format!(
            "{:<10}{:>12}{:>12}{:>12}{:>12}\n",
            "fake",
            pct(self.fake.precision),
            pct(self.fake.recall),
            pct(self.fake.f1),
            pct(self.accuracy)
        ));
        out.push_str(&format!(
            "{:<10}{:>12}{:>12}{:>12}\n",
            "real",
            pct(self.real.precision),
            pct(self.real.recall),
            pct(self.real.f1)
        ));
        out.push_str(&format!(
            "{:<10}{:>12}{:>12}{:>12}\n",
            "average",
            pct(self.macro_avg.precision),
            pct(self.macro_avg.recall),
            pct(self.macro_avg.f1)
        ));
        out
    }
}

/// Predict every test example at threshold 0.5 (p ≥ 0.5 ⇒ real) and build
/// the full report.
pub fn evaluate(
    params: &ModelParams<f32>,
    hp: &Hyperparams,
    test_set: &[EncodedExample],
    threads: usize,
) -> Result<EvalReport> {
    if test_set.is_empty() {
        return Err(Error::EmptyDataset("test"));
    }
    let probabilities = batch_probabilities(params, hp, test_set, threads)?;
    let outcomes = test_set.iter().zip(&probabilities).map(|(ex, &p)| {
        let actual = Label::from_bit(ex.label);
        let predicted = if p >= 0.5 { Label::Real } else { Label::Fake };
        (actual, predicted)
    });
    EvalReport::from_confusion(ConfusionMatrix::from_outcomes(outcomes, Label::Fake))
}

/// One inference result. `probability` is the model output, the probability
/// that the item is real; `token_count` of 0 means the input cleaned down
/// to nothing and the model saw an all-padding sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: Label,
    pub probability: f32,
    #[serde(skip)]
    pub token_count: usize,
}
