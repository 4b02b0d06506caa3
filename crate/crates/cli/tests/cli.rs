//! Black-box tests against the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn jachai() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jachai"))
}

fn run(args: &[&str]) -> Output {
    jachai().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jachai-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn full_flow_synth_prepare_train_evaluate_predict() {
    let dir = temp_dir("flow");
    let corpus = dir.join("corpus.csv");

    let synth = run(&["synth", "--out", path_str(&corpus), "--size", "60", "--seed", "1"]);
    assert!(synth.status.success(), "{}", stderr(&synth));
    let body = std::fs::read_to_string(&corpus).unwrap();
    assert!(body.starts_with("headLine,content,label\n"));
    assert_eq!(body.lines().count(), 61);

    let prep_dir = dir.join("prep");
    let prepare = run(&[
        "prepare",
        "--data",
        path_str(&corpus),
        "--out",
        path_str(&prep_dir),
    ]);
    assert!(prepare.status.success(), "{}", stderr(&prepare));
    for file in [
        "train.csv",
        "validation.csv",
        "test.csv",
        "vocabulary.json",
        "class_counts.json",
        "load_report.json",
        "run_manifest.json",
    ] {
        assert!(prep_dir.join(file).exists(), "missing {file}");
    }
    let load_report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(prep_dir.join("load_report.json")).unwrap())
            .unwrap();
    assert_eq!(load_report["rows_read"], 60);
    assert_eq!(load_report["loaded"], 60);
    let counts: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(prep_dir.join("class_counts.json")).unwrap())
            .unwrap();
    assert_eq!(counts["initial"]["fake"], 30);
    assert_eq!(counts["train_after_oversample"]["fake"], counts["train_after_oversample"]["real"]);

    // Train with default epochs (10); the history CSV must have one row per
    // epoch plus the header.
    let run_dir = dir.join("run");
    let train = run(&[
        "train",
        "--data",
        path_str(&corpus),
        "--out",
        path_str(&run_dir),
    ]);
    assert!(train.status.success(), "{}", stderr(&train));
    let history = std::fs::read_to_string(run_dir.join("history.csv")).unwrap();
    let lines: Vec<&str> = history.lines().collect();
    assert_eq!(lines[0], "epoch,train_loss,train_acc,val_loss,val_acc");
    assert_eq!(lines.len(), 11, "history:\n{history}");
    assert!(run_dir.join("model.bundle").exists());
    assert!(run_dir.join("run_manifest.json").exists());

    let model = run_dir.join("model.bundle");
    let eval_dir = dir.join("eval");
    let evaluate = run(&[
        "evaluate",
        "--model",
        path_str(&model),
        "--data",
        path_str(&corpus),
        "--out",
        path_str(&eval_dir),
    ]);
    assert!(evaluate.status.success(), "{}", stderr(&evaluate));
    let table = stdout(&evaluate);
    assert!(table.contains("precision") && table.contains("average"), "{table}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(eval_dir.join("eval_report.json")).unwrap())
            .unwrap();
    let cm = &report["confusion"];
    let total = cm["tp"].as_u64().unwrap()
        + cm["fp"].as_u64().unwrap()
        + cm["fn"].as_u64().unwrap()
        + cm["tn"].as_u64().unwrap();
    assert_eq!(total, 6); // 10% test split of 60
    assert!(eval_dir.join("confusion_matrix.txt").exists());

    // Single prediction prints a {label, probability} JSON object.
    let predict = run(&[
        "predict",
        "--model",
        path_str(&model),
        "--headline",
        "ঝুমকাল পটকল",
        "--content",
        "ভ্রমিল ছলঘট এবং",
    ]);
    assert!(predict.status.success(), "{}", stderr(&predict));
    let json: serde_json::Value = serde_json::from_str(stdout(&predict).trim()).unwrap();
    assert!(json["label"] == "fake" || json["label"] == "real");
    let p = json["probability"].as_f64().unwrap();
    assert!(p > 0.0 && p < 1.0);

    // Batch prediction over a CSV prints one row per input.
    let batch = run(&["predict", "--model", path_str(&model), "--input", path_str(&corpus)]);
    assert!(batch.status.success(), "{}", stderr(&batch));
    let out = stdout(&batch);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "label,probability");
    assert_eq!(rows.len(), 61);

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn fully_oov_input_still_predicts() {
    let dir = temp_dir("oov");
    let corpus = dir.join("corpus.csv");
    run(&["synth", "--out", path_str(&corpus), "--size", "40", "--seed", "2"]);
    let run_dir = dir.join("run");
    let train = run(&[
        "train",
        "--data", path_str(&corpus),
        "--out", path_str(&run_dir),
        "--epochs", "1",
    ]);
    assert!(train.status.success(), "{}", stderr(&train));

    let predict = run(&[
        "predict",
        "--model",
        path_str(&run_dir.join("model.bundle")),
        "--headline",
        "totally unseen words here",
        "--content",
        "nothing from the vocabulary",
    ]);
    assert!(predict.status.success());
    let json: serde_json::Value = serde_json::from_str(stdout(&predict).trim()).unwrap();
    assert!(json["probability"].as_f64().is_some());

    // Input that cleans to nothing warns but still predicts.
    let empty = run(&[
        "predict",
        "--model",
        path_str(&run_dir.join("model.bundle")),
        "--headline",
        "!!!",
        "--content",
        "???",
    ]);
    assert!(empty.status.success());
    assert!(stderr(&empty).contains("warning"));

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn flags_override_config_file() {
    let dir = temp_dir("config");
    let corpus = dir.join("corpus.csv");
    run(&["synth", "--out", path_str(&corpus), "--size", "40", "--seed", "3"]);

    let config_path = dir.join("config.json");
    std::fs::write(&config_path, r#"{ "epochs": 2, "gru_units": 4, "embed_dim": 8 }"#).unwrap();

    let run_dir = dir.join("run");
    let train = run(&[
        "train",
        "--data", path_str(&corpus),
        "--out", path_str(&run_dir),
        "--config", path_str(&config_path),
        "--epochs", "1",
    ]);
    assert!(train.status.success(), "{}", stderr(&train));
    let history = std::fs::read_to_string(run_dir.join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), 2, "flag must override config epochs");

    // The manifest records the effective config.
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(run_dir.join("run_manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["epochs"], 1);
    assert_eq!(manifest["config"]["gru_units"], 4);
    assert!(manifest["inputs"][0]["fnv1a64"].as_str().is_some());

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_1() {
    let unknown = run(&["train", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).contains("Usage") || stderr(&unknown).contains("usage"));

    let no_sub = run(&[]);
    assert_eq!(no_sub.status.code(), Some(1));

    let odd_synth = run(&["synth", "--out", "/tmp/x.csv", "--size", "19"]);
    assert_eq!(odd_synth.status.code(), Some(1));

    // Unknown key in the config file is a usage error.
    let dir = temp_dir("badconfig");
    let config_path = dir.join("bad.json");
    std::fs::write(&config_path, r#"{ "epochz": 3 }"#).unwrap();
    let corpus = dir.join("corpus.csv");
    run(&["synth", "--out", path_str(&corpus), "--size", "20", "--seed", "1"]);
    let bad = run(&[
        "train",
        "--data", path_str(&corpus),
        "--out", path_str(&dir.join("run")),
        "--config", path_str(&config_path),
    ]);
    assert_eq!(bad.status.code(), Some(1), "{}", stderr(&bad));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn data_errors_exit_2() {
    let missing = run(&["train", "--data", "/definitely/not/here.csv", "--out", "/tmp/x"]);
    assert_eq!(missing.status.code(), Some(2));

    // A corpus whose rows all fail the drop rules is a data error.
    let dir = temp_dir("empty");
    let corpus = dir.join("empty.csv");
    std::fs::write(&corpus, "headLine,content,label\nh,,fake\n").unwrap();
    let empty = run(&["prepare", "--data", path_str(&corpus), "--out", path_str(&dir.join("p"))]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(stderr(&empty).contains("empty corpus"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn truncated_bundle_is_a_data_error_with_byte_counts() {
    let dir = temp_dir("trunc");
    let corpus = dir.join("corpus.csv");
    run(&["synth", "--out", path_str(&corpus), "--size", "20", "--seed", "4"]);
    let run_dir = dir.join("run");
    let train = run(&[
        "train",
        "--data", path_str(&corpus),
        "--out", path_str(&run_dir),
        "--epochs", "1",
        "--seq-len", "20",
        "--embed-dim", "8",
        "--gru-units", "4",
    ]);
    assert!(train.status.success(), "{}", stderr(&train));

    let bundle_path = run_dir.join("model.bundle");
    let mut bytes = std::fs::read(&bundle_path).unwrap();
    bytes.truncate(bytes.len() - 4);
    std::fs::write(&bundle_path, bytes).unwrap();

    let predict = run(&[
        "predict",
        "--model", path_str(&bundle_path),
        "--headline", "x",
        "--content", "y",
    ]);
    assert_eq!(predict.status.code(), Some(2));
    let err = stderr(&predict);
    assert!(err.contains("bytes"), "diagnostic should name byte counts: {err}");

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn gradcheck_passes_and_exits_zero() {
    let check = run(&["gradcheck"]);
    assert_eq!(check.status.code(), Some(0), "{}", stderr(&check));
    let out = stdout(&check);
    assert_eq!(out.matches("... ok").count(), 3, "{out}");
}
