use std::path::Path;
use std::process::{Command, Output};

fn ospq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ospq"))
        .args(args)
        .env_remove("OSPQ_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn superdim_renders_the_vector_module_value() {
    let out = ospq(&["superdim", "--n", "1", "--lambda", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sd"], "q - 1 + q^-1");
}

#[test]
fn irrep_trivial_module_is_one_dimensional() {
    let out = ospq(&["irrep", "--n", "1", "--lambda", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["module"]["dim"], 1);
    assert_eq!(v["module"]["parity"][0], 0);
}

#[test]
fn usage_errors_exit_with_code_two() {
    assert_eq!(ospq(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        ospq(&["superdim", "--n", "1", "--lambda", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ospq(&["superdim", "--n", "1", "--lambda", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn evaluate_matrix_coefficient_on_a_word() {
    let out = ospq(&[
        "evaluate", "--n", "1", "--lambda", "1", "--row", "0", "--col", "0", "--word", "k1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "q");
}

#[test]
fn decompose_tensor_square() {
    let out = ospq(&["decompose", "--n", "1", "--lambda", "1", "--mu", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<u64> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dim"].as_u64().unwrap())
        .collect();
    let mut sorted = dims.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 3, 5]);
    assert_eq!(v["dimension_sum_matches"], true);
}

#[test]
fn runs_with_identical_config_are_byte_identical() {
    let a = ospq(&["check", "--n", "1", "--seed", "7"]);
    let b = ospq(&["check", "--n", "1", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format_is_available() {
    let out = ospq(&["superdim", "--n", "1", "--lambda", "1", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "sd: q - 1 + q^-1\n");
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn cache_round_trips_and_is_write_once() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();

    let cold = ospq(&["superdim", "--n", "1", "--lambda", "1", "--cache-dir", dir]);
    assert!(cold.status.success());
    let files = cache_files(tmp.path());
    assert_eq!(files.len(), 1, "one cache entry after a cold run");
    let entry = &files[0];
    let body = std::fs::read(entry).unwrap();

    // warm run: identical output, entry untouched
    let warm = ospq(&["superdim", "--n", "1", "--lambda", "1", "--cache-dir", dir]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(std::fs::read(entry).unwrap(), body);

    // a corrupt entry is a miss with a warning, and write-once means the
    // corrupt file is left in place rather than silently rewritten
    std::fs::write(entry, b"{ not json").unwrap();
    let recover = ospq(&["superdim", "--n", "1", "--lambda", "1", "--cache-dir", dir]);
    assert!(recover.status.success());
    assert_eq!(cold.stdout, recover.stdout);
    assert!(String::from_utf8_lossy(&recover.stderr).contains("corrupt cache entry"));
    assert_eq!(std::fs::read(entry).unwrap(), b"{ not json");
}

#[test]
fn cache_dir_env_var_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ospq"))
        .args(["irrep", "--n", "1", "--lambda", "1"])
        .env("OSPQ_CACHE_DIR", tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(cache_files(tmp.path()).len(), 1);
}

#[test]
fn borel_weil_positive_weight_gives_zero_space() {
    let out = ospq(&["borel-weil", "--n", "1", "--mu", "1", "--cutoff", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 0);
    assert_eq!(v["nu"], serde_json::Value::Null);
}

#[test]
fn haar_orthogonality_of_distinct_blocks() {
    let out = ospq(&["haar-orthogonality", "--n", "1", "--lambda", "1", "--mu", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["checked"].as_u64().unwrap() > 0);
}
