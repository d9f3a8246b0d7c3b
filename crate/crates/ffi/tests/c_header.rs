use std::path::PathBuf;
use std::process::Command;

// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Test builds skip the staticlib crate type; build it with the same
    // profile so the dependency artifacts are reused.
    let built = Command::new(env!("CARGO"))
        .args(["build", "--profile", "test", "-p", "charvar-ffi", "--lib"])
        .current_dir(&manifest)
        .status()
        .expect("cargo runs");
    assert!(built.success(), "cargo build failed");
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libcharvar_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("charvar_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&out)
        .status()
        .expect("cc is available");
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
}
