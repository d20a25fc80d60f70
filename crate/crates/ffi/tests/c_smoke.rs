//! Compiles `tests/c/smoke.c` against the generated header and the static
//! library. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps/<bin>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    // integration tests only get the rlib; build the staticlib explicitly
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "-p", "laxforge-ffi", "--lib"]);
    if target_dir().ends_with("release") {
        build.arg("--release");
    }
    let built = build.status().unwrap();
    assert!(built.success());
    let lib = target_dir().join("liblaxforge_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let out = std::env::temp_dir().join(format!("laxforge_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
