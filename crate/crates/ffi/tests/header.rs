//! The generated header declares the exported API, and a small C program
//! links against the static library.

use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(root().join("include/zeta_extremal.h")).unwrap();
    for name in [
        "ze_last_error",
        "ze_string_free",
        "ze_context_new",
        "ze_context_free",
        "ze_zeta",
        "ze_solve_constant",
        "ze_sigma_a",
        "ze_l_bound",
        "ze_root_value",
        "ze_root_bracket",
        "ze_root_free",
        "ze_search_height",
        "ze_verify_height",
        "ze_check_a3",
        "ze_winding_number",
        "typedef struct ZeRoot ZeRoot",
        "ZE_STATUS_OK = 0",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "zeta_extremal.h"

int main(void) {
    ZeRoot *root = NULL;
    if (ze_solve_constant(ZE_CONSTANT_SIGMA_ONE, 15, &root) != ZE_STATUS_OK) return 1;
    char *v = ze_root_value(root);
    int ok = strncmp(v, "1.9401016837436", 15) == 0;
    ze_string_free(v);
    ze_root_free(root);
    if (ze_sigma_a("1", 15, &root) == ZE_STATUS_OK) return 2;
    char *err = ze_last_error();
    if (err == NULL) return 3;
    ze_string_free(err);
    printf("%s\n", ok ? "ok" : "bad");
    return ok ? 0 : 4;
}
"#;

/// The static library next to the test binary.
fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libzeta_extremal_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links() {
    let Some(lib) = staticlib() else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root().join("include"))
        .arg(&lib)
        .args(["-lmpfr", "-lgmp", "-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
