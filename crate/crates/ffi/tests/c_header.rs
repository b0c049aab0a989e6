// SPDX-License-Identifier: Apache-2.0

//! Compiles and runs a small C program against the generated header and
//! the static library. Skipped when no C compiler or archive is found.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "cmc_simons.h"

int main(void) {
    CmcModel *m = NULL;
    if (cmc_model_new(4.0, 0.5, &m) != CMC_STATUS_OK) return 10;
    double r = 1.0;
    if (cmc_model_bracket_residual(m, CMC_CHART_BERGER, 20, 1, &r) != CMC_STATUS_OK) return 11;
    if (!(r < 1e-7)) return 12;
    CmcPinching p;
    if (cmc_pinching_interval(4.0, 0.5, 0.0, 0.0, &p) != CMC_STATUS_OK) return 13;
    if (fabs(p.a + 3.0) > 1e-14 || fabs(p.b - 0.5) > 1e-14) return 14;
    CmcModel *bad = NULL;
    if (cmc_model_new(1.0, 0.0, &bad) != CMC_STATUS_ZERO_TAU) return 15;
    if (cmc_last_error() == NULL) return 16;
    cmc_model_free(m);
    printf("ok %s\n", cmc_version());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn cc() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(String::from)
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler, skipped");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());

    let archive = target_dir().join("libcmc_simons_ffi.a");
    if !archive.exists() {
        eprintln!("{} missing, link step skipped", archive.display());
        return;
    }
    let bin = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&archive)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
