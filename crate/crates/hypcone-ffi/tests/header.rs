use std::path::Path;
use std::process::Command;

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hypcone.h")).expect("header generated by build.rs")
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for name in [
        "hc_last_error",
        "hc_kappa",
        "hc_classify",
        "hc_reduce",
        "hc_rep_new",
        "hc_rep_from_json",
        "hc_rep_free",
        "hc_euler_class",
        "hc_glue_genus2",
        "hc_glued_summary",
        "hc_glued_vertices",
        "hc_glued_svg",
        "hc_string_free",
        "typedef struct HcRep HcRep",
        "HC_STATUS_SEARCH_EXHAUSTED",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-std=c99", "-x", "c"])
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hypcone.h"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
