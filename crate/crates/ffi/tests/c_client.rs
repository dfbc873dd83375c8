use std::path::PathBuf;
use std::process::Command;

// Compiles a small C program against the generated header and the static
// library, then runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libconnlab_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "connlab.h"

int main(void) {
    uint32_t s[] = {0, 2}, d[] = {1, 3};
    ConnlabGraph *g = NULL;
    if (connlab_graph_from_edges(5, s, d, 2, &g) != CONNLAB_STATUS_OK) return 1;
    uint32_t labels[5];
    size_t comps = 0;
    if (connlab_static_connectivity(g, "kout+async+halve", 1, 1, labels, 5, &comps) != CONNLAB_STATUS_OK) return 2;
    if (comps != 3 || labels[1] != 0 || labels[3] != 2 || labels[4] != 4) return 3;
    if (connlab_spec_validate("none+bogus") != CONNLAB_STATUS_CONFIG) return 4;
    if (connlab_last_error() == NULL) return 5;
    connlab_graph_free(g);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    let Ok(status) = status else {
        eprintln!("skipping: no C compiler");
        return;
    };
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "client exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
