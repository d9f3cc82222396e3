//! Compiles a small C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "binact.h"

int main(void) {
    BinactGroup *g = NULL;
    if (binact_group_named("s3", &g) != BINACT_STATUS_OK || binact_group_order(g) != 6) return 1;
    char *json = NULL;
    if (binact_enumerate_json(g, 2, true, false, 0, &json) != BINACT_STATUS_OK) return 2;
    if (strstr(json, "\"raw_count\"") == NULL) return 3;
    binact_string_free(json);
    binact_group_free(g);

    BinactAction *a = NULL;
    const char *swap = "{\"group\":\"z2\",\"carrier\":2,\"table\":[[[0,1],[0,1]],[[0,1],[1,0]]]}";
    if (binact_action_from_json(swap, &a) != BINACT_STATUS_OK) return 4;
    uint64_t mask = 0;
    if (binact_action_minimal_bi_invariant(a, 1, &mask) != BINACT_STATUS_OK || mask != 3) return 5;
    binact_action_free(a);

    if (binact_action_from_json("{}", &a) != BINACT_STATUS_PARSE) return 6;
    if (binact_last_error_message() == NULL) return 7;
    puts("ok");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = target_dir();
    let status = Command::new("cargo")
        .args(["build", "-p", "binact-ffi", "--lib"])
        .args(if lib_dir.ends_with("release") { vec!["--release"] } else { vec![] })
        .status()
        .unwrap();
    assert!(status.success());
    let archive = lib_dir.join("libbinact_ffi.a");
    assert!(archive.exists(), "{archive:?} missing");

    let work = tempfile::tempdir().unwrap();
    let source = work.path().join("main.c");
    let exe = work.path().join("main");
    std::fs::write(&source, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&source)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
