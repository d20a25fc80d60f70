use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn laxforge(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxforge"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("LAXFORGE_CACHE")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn generate_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = laxforge(&["generate", "--m", "3", "--n", "2"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["sigma_3_2_vector.json", "r_vector_3_2.json"] {
        let text = fs::read_to_string(dir.path().join(f)).unwrap();
        serde_json::from_str::<serde_json::Value>(&text).unwrap();
    }
}

#[test]
fn unsupported_rank_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = laxforge(&["generate", "--m", "2", "--n", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&laxforge(&["verify", "--m", "3", "--n", "0", "--suite", "bogus"], dir.path())), 2);
    assert_eq!(code(&laxforge(&["generate", "--m", "3"], dir.path())), 2);
    assert_eq!(code(&laxforge(&["eval", "--m", "3", "--n", "0", "--s", "0"], dir.path())), 2);
}

#[test]
fn verify_all_passes_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = laxforge(&["verify", "--m", "3", "--n", "2", "--suite", "all", "--format", "json", "--samples", "4"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 12);
}

#[test]
fn corrupted_sigma_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&laxforge(&["generate", "--m", "3", "--n", "0"], dir.path())), 0);
    let path = dir.path().join("sigma_3_0_vector.json");
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // the recursed operator stops agreeing with the simple ones
    doc["entries"]["i1,i3"]["matrix"][0][2] = serde_json::json!("7");
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = laxforge(&["verify", "--m", "3", "--n", "0", "--suite", "path-independence,delta"], dir.path());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(!o.stderr.is_empty());
}

#[test]
fn cache_reuse_is_byte_identical() {
    let cache = tempfile::tempdir().unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let run = |out: &Path| {
        Command::new(env!("CARGO_BIN_EXE_laxforge"))
            .args(["generate", "--m", "4", "--n", "2", "--cache-dir"])
            .arg(cache.path())
            .arg("--out")
            .arg(out)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run(a.path())), 0);
    assert_eq!(code(&run(b.path())), 0);
    for f in ["sigma_4_2_vector.json", "r_vector_4_2.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
    }
}

#[test]
fn spectral_eval_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = laxforge(&["spectral", "--m", "3", "--n", "0", "--kind", "twisted", "--s", "2", "--z", "1/3"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectral_twisted_3_0_eval.json")).unwrap()).unwrap();
    assert_eq!(v["kind"], "twisted");
    assert!(!v["entries"].as_array().unwrap().is_empty());
}

#[test]
fn constant_eval_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = laxforge(&["eval", "--m", "3", "--n", "0", "--s", "2"], dir.path());
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(dir.path().join("eval_vector_3_0.json")).unwrap();
    assert!(text.contains("\"15/4\""));
}
