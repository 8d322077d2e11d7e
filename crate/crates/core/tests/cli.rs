use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2hodge")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("l2hodge-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn every_sample_file_checks_clean() {
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        let out = run(&["check", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn weights_report_carries_the_convention_block() {
    let out = run(&["weights", data("curve_g2n3.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# convention\td1 sign"));
    assert!(text.contains("1\t1\t4\t4"), "{text}");
    assert!(text.contains("1\t2\t2\t2"), "{text}");
    assert!(text.contains("oracle abutment\tpass"));
}

#[test]
fn structured_output_is_json() {
    let out = run(&["--format", "structured", "euler", data("product_cover.json").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "euler");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn mismatch_exits_one() {
    let p = scratch(
        "wrong.json",
        r#"{"vertices": 3, "maximal": [[0, 1], [1, 2], [0, 2]], "expected": [1, 2]}"#,
    );
    let out = run(&["oracle", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("first mismatch at H^1"));
}

#[test]
fn input_errors_exit_two() {
    let p = scratch("bad.json", r#"{"vertices": 3, "maximal": [[0, 7]]}"#);
    assert_eq!(run(&["oracle", p.to_str().unwrap()]).status.code(), Some(2));
    let p = scratch("garbage.json", "not json");
    assert_eq!(run(&["check", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["weights", "/nonexistent/file.json"]).status.code(), Some(2));
    // a cocycle violation on the 2-cell names the face
    let p = scratch(
        "cocycle.json",
        r#"{"vertices": 3, "maximal": [[0, 1, 2]], "group": {"cyclic": 2},
            "edge_labels": [{"edge": [0, 1], "element": 1}]}"#,
    );
    let out = run(&["oracle", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[0, 1, 2]"));
}

#[test]
fn self_test_is_deterministic_and_prints_the_seed() {
    let a = run(&["check", "--seed", "11"]);
    let b = run(&["check", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("# seed\t11"));
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed 11"));
}

#[test]
fn pages_flag_limits_the_spectral_sequence() {
    let out = run(&["ss", "--pages", "1", data("raw_two_filtrations.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let pages = text.split("## cohomology").next().unwrap();
    assert!(!pages.lines().any(|l| l.starts_with("2\t")), "{text}");
    assert!(text.contains("# notice\tnot degenerate by E_1"));
}

#[test]
fn subdivide_flag_changes_nothing_on_the_torus() {
    let one = run(&["oracle", data("torus_minus_vertex.json").to_str().unwrap()]);
    let two = run(&["oracle", "--subdivide", "2", data("torus_minus_vertex.json").to_str().unwrap()]);
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout);
}
