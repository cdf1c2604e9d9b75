//! The `tubefit` binary end to end: outputs, warnings and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubefit")).args(args).output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// Data rows (comments and header stripped) split into fields.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn modes_table() {
    let s1 = config("sample1");
    let out = run(&["modes", "--config", s1.to_str().unwrap(), "--frequency", "5000", "--modes", "8"]);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    assert!(stdout.contains("# modes N = 8"));
    assert!(stdout.contains("first cutoff 2988."));
    let table = rows(&stdout);
    assert_eq!(table.len(), 8);
    assert_eq!(table[1][4], "propagating");
    assert_eq!(table[2][4], "evanescent");

    let out = run(&["modes", "--config", s1.to_str().unwrap(), "--modes", "1"]);
    assert!(out.status.success());
    assert_eq!(rows(&text(&out.stdout)).len(), 1);
}

#[test]
fn forward_then_retrieve() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = config("sample1");
    let tr = dir.path().join("tr.csv");
    let res = dir.path().join("res.csv");
    let out = run(&[
        "forward",
        "--config",
        s1.to_str().unwrap(),
        "--method",
        "averaged",
        "--output",
        tr.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(dir.path().join("tr.csv.meta.toml").exists());
    let out = run(&[
        "retrieve",
        "--config",
        s1.to_str().unwrap(),
        "--input",
        tr.to_str().unwrap(),
        "--output",
        res.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let table = rows(&std::fs::read_to_string(&res).unwrap());
    assert_eq!(table.len(), 45);
    for r in &table {
        let n: f64 = r[1].parse().unwrap();
        let ratio: f64 = r[5].parse().unwrap();
        assert!((n - 5.0).abs() < 0.01 * 5.0 && (ratio - 15.0).abs() < 0.01 * 15.0, "{r:?}");
        assert_eq!(r[12], "-");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = config("sample2");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        assert!(run(&["forward", "--config", s2.to_str().unwrap(), "--output", p.to_str().unwrap()])
            .status
            .success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn air_forward_is_transparent() {
    let out = run(&["forward", "--config", config("air").to_str().unwrap()]);
    assert!(out.status.success());
    for r in rows(&text(&out.stdout)) {
        let t = num_complex::Complex64::new(r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!((t.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn roundtrip_reports() {
    let out = run(&["roundtrip", "--config", config("air").to_str().unwrap(), "--method", "averaged"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    for r in rows(&text(&out.stdout)) {
        assert!(r[6].parse::<f64>().unwrap() < 1e-6 && r[7].parse::<f64>().unwrap() < 1e-6);
    }
    let out = run(&[
        "roundtrip",
        "--config",
        config("full_fill").to_str().unwrap(),
        "--method",
        "averaged",
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));

    // the printed sign pattern is the convention A/B harness: it must fail
    let out = run(&[
        "roundtrip",
        "--config",
        config("sample1").to_str().unwrap(),
        "--method",
        "averaged",
        "--printed-signs",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("FAIL"));
}

#[test]
fn input_problems_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = config("sample1");
    let empty = write_config(dir.path(), "empty.csv", "f,re_t,im_t,re_r,im_r\n");
    let out = run(&["retrieve", "--config", s1.to_str().unwrap(), "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("no data rows"));

    let bad = write_config(dir.path(), "bad.csv", "f,re_t,im_t,re_r,im_r\n300,1,0,0,0\n400,1,zero,0,0\n");
    let out = run(&["retrieve", "--config", s1.to_str().unwrap(), "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("line 3"));

    let missing = dir.path().join("missing.toml");
    let out = run(&["modes", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let above = write_config(
        dir.path(),
        "above.toml",
        "[geometry]\nr1 = 0.04\nr2 = 0.07\nt = 0.0052\n[material]\nn1 = 5.0\nz1_ratio = 15.0\n[sweep]\nstart = 2000.0\nstop = 3200.0\ncount = 4\n",
    );
    let out = run(&["forward", "--config", above.to_str().unwrap(), "--method", "fdfd"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("cut-on"));
    let out = run(&[
        "forward",
        "--config",
        above.to_str().unwrap(),
        "--method",
        "averaged",
        "--allow-above-cutoff",
    ]);
    assert!(out.status.success());
}

#[test]
fn single_frequency_warns() {
    let dir = tempfile::tempdir().unwrap();
    let one = write_config(dir.path(), "one.csv", "f,re_t,im_t,re_r,im_r\n500,0.9,0.1,0.02,-0.04\n");
    let out = run(&[
        "retrieve",
        "--config",
        config("sample1").to_str().unwrap(),
        "--input",
        one.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(text(&out.stderr).contains("unwrapping undetermined"));
    let table = rows(&text(&out.stdout));
    assert_eq!(table[0][7], "0");
}

#[test]
fn numerical_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let strict = write_config(
        dir.path(),
        "strict.toml",
        "[material]\nn1 = 5.0\nz1_ratio = 15.0\n[retrieval]\nmodes = 4\ntolerance = 1e-15\ntail = \"truncated\"\n",
    );
    let out = run(&["forward", "--config", strict.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", text(&out.stderr));
}
