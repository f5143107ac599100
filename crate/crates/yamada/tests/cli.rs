use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn yamada(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yamada")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn h_poly_methods_agree() {
    let file = data("theta3.graph");
    let outputs: Vec<String> = ["delcon", "definition", "closed"]
        .iter()
        .map(|m| {
            let out = yamada(&["h-poly", path(&file), "--method", m]);
            assert!(out.status.success(), "{m}: {}", stderr(&out));
            stdout(&out)
        })
        .collect();
    assert_eq!(outputs[0].trim(), "-A^2 - A - 2 - A^-1 - A^-2");
    assert!(outputs.iter().all(|o| o == &outputs[0]));
}

#[test]
fn closed_method_refuses_other_graphs() {
    let out = yamada(&["h-poly", path(&data("k4.graph")), "--method", "closed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
}

#[test]
fn flow_polynomial_of_k4() {
    let out = yamada(&["flow-poly", path(&data("k4.graph"))]);
    assert_eq!(stdout(&out).trim(), "q^3 - 6*q^2 + 11*q - 6");
}

#[test]
fn chain_poly_of_theta() {
    // With every value equal to w the chain polynomial of a theta is
    // (0 - w (w-1)^3) / (1 - w); at w = 2 that is 2.
    let out = yamada(&["chain-poly", path(&data("theta3.graph")), "--assign", "a=2", "b=2", "c=2", "--w", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "2");
    let def = yamada(&[
        "chain-poly",
        path(&data("theta3.graph")),
        "--assign",
        "a=A",
        "b=A^-1",
        "c=1+A",
        "--w",
        "A^2",
        "--method",
        "definition",
    ]);
    let rec = yamada(&["chain-poly", path(&data("theta3.graph")), "--assign", "a=A", "b=A^-1", "c=1+A", "--w", "A^2"]);
    assert_eq!(stdout(&def), stdout(&rec));
}

#[test]
fn compose_subdivided_theta() {
    let replace = format!("a={}:x:z", path(&data("path2.graph")));
    let out = yamada(&["compose", path(&data("theta3.graph")), "--replace", &replace, "--verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let plain = yamada(&["h-poly", path(&data("theta3.graph"))]);
    assert_eq!(stdout(&out), stdout(&plain));
}

#[test]
fn yamada_and_family_commands() {
    let out = yamada(&["yamada", path(&data("inf_plus.diagram"))]);
    assert_eq!(stdout(&out).trim(), "A^-1 + A^-2 + A^-3");

    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("c3.diagram");
    let fam = yamada(&["family", "--kind", "cycle", "--size", "3", "--bead", "infplus", "--emit-diagram", path(&emitted)]);
    assert!(fam.status.success(), "{}", stderr(&fam));
    let direct = yamada(&["yamada", path(&emitted)]);
    assert_eq!(stdout(&fam), stdout(&direct));
    let from_file = yamada(&["family", "--kind", "cycle", "--size", "3", "--bead", path(&data("inf_plus.diagram"))]);
    assert_eq!(stdout(&fam), stdout(&from_file));
}

#[test]
fn zeros_scan_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = yamada(&["--quiet", "zeros", "scan", "--family", "theta", "--s", "3", "--n", "5,8", "--out", path(dir.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let csv = std::fs::read_to_string(dir.path().join("scan_theta_s3.csv")).unwrap();
    let rows = csv.lines().count() - 1;
    assert!(rows > 0);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("theta,3,")));
    let svg = std::fs::read_to_string(dir.path().join("scan_theta_s3.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<circle"));
    let summary = std::fs::read_to_string(dir.path().join("scan_theta_s3_summary.txt")).unwrap();
    assert_eq!(summary.lines().count(), 2);
}

#[test]
fn zeros_region_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("omega.svg");
    let out = yamada(&["zeros", "region", "--which", "sigma", "--window", "-2,2,-2,2", "--res", "40", "--out", path(&file)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(std::fs::read_to_string(&file).unwrap().contains("<rect"));
}

#[test]
fn selftest_passes_and_flip_fails() {
    let out = yamada(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
    let flipped = yamada(&["selftest", "--flip-convention"]);
    assert_eq!(flipped.status.code(), Some(2));
    assert!(stderr(&flipped).contains("FAIL r-inf-plus"));
}

#[test]
fn config_guards_apply() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("config.toml");
    std::fs::write(&cfg, "max_crossings = 2\n").unwrap();
    let spec = dir.path().join("c3.diagram");
    yamada(&["family", "--kind", "cycle", "--size", "3", "--bead", "infplus", "--emit-diagram", path(&spec)]);
    let out = yamada(&["--config", path(&cfg), "yamada", path(&spec)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());

    std::fs::write(&cfg, "max_crossings = 2\nunknown = 1\n").unwrap();
    let out = yamada(&["--config", path(&cfg), "yamada", path(&spec)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown"));

    let sample = yamada(&["--config", path(&data("config.toml")), "--threads", "2", "h-poly", path(&data("k4.graph"))]);
    assert!(sample.status.success(), "{}", stderr(&sample));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertices: u v\nedge 0: u w\n").unwrap();
    let out = yamada(&["h-poly", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn usage_errors() {
    assert_eq!(yamada(&["h-poly"]).status.code(), Some(1));
    assert_eq!(yamada(&["zeros", "region", "--which", "omega", "--window", "1,0,0,1", "--out", "x.svg"]).status.code(), Some(1));
    let help = yamada(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("zeros"));
}
