use std::io::Write;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcone")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn euler_of_shipped_octagon() {
    let out = run(&["euler", "--rep", &data("fuchsian_octagon.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("euler_class: 2"), "{text}");
    assert!(text.contains("euler_characteristic: -2"), "{text}");
}

#[test]
fn kappa_of_markoff_triple() {
    let out = run(&["kappa", "3", "3", "3"]);
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), -2.0);
}

#[test]
fn reduce_reports_kind() {
    let out = run(&["reduce", "1.5", "1.5", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ELLIPTIC"));
}

#[test]
fn char2rep_output_feeds_euler() {
    let out = run(&["char2rep", "3", "3", "3"]);
    assert!(out.status.success());
    let dir = std::env::temp_dir().join(format!("hypcone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.json");
    std::fs::File::create(&path).unwrap().write_all(&out.stdout).unwrap();
    let e = run(&["euler", "--rep", path.to_str().unwrap()]);
    let text = stdout(&e);
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stderr));
    assert!(text.contains("euler_class: 1") || text.contains("euler_class: -1"), "{text}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn precondition_failures_exit_2() {
    assert_eq!(run(&["good-rep", "--trace", "1"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "x"]).status.code(), Some(2));
}

#[test]
fn malformed_json_exits_4_with_position() {
    let dir = std::env::temp_dir().join(format!("hypcone-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"surface\": [1,\n").unwrap();
    let out = run(&["euler", "--rep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json:3:"), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn assembled_decompositions_are_consistent() {
    for (rep, decomp) in [
        ("fuchsian_octagon.json", "octagon_decomposition.json"),
        ("four_holed_sphere.json", "sphere_decomposition.json"),
    ] {
        let out = run(&["assemble", "--rep", &data(rep), "--decomp", &data(decomp)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["total_euler"], 2, "{v}");
    }
}

#[test]
fn empty_render_is_a_bare_disk() {
    let out = run(&["render", "empty"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 1);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("path")).count(), 0);
}

#[test]
fn ergodic_exp_writes_csv_file_and_summary() {
    let dir = std::env::temp_dir().join(format!("hypcone-exp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.csv");
    let out = run(&[
        "ergodic-exp", "--trace", "3", "--samples", "10", "--depth", "8", "--stations", "16", "--seed", "1", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("# summary elliptic_count=10"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "t,index,x,y,z,type,good,depth,stations,ms");
    assert_eq!(lines.len(), 11);
    std::fs::remove_dir_all(dir).unwrap();
}
