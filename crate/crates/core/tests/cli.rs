use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tvsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvsa")).args(args).output().expect("binary runs")
}

fn config(dir: &Path, iterations: u64, retained: &str, replications: u32) -> String {
    let text = format!(
        r#"{{"objective": "multicos", "dim": 2, "kernel": {{"family": "student-t", "dof": 1}},
            "schedule": {{"family": "power", "sigma0": 1.0, "beta": 0.5}}, "retained": {retained},
            "cooling": {{"family": "power", "t0": 1.0, "a": 2.0}}, "iterations": {iterations},
            "replications": {replications}, "seed": 11, "x0": [0.05, 0.95]}}"#
    );
    let path = dir.join("config.in.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn run_into(cfg: &str, out: &Path) {
    let o = tvsa(&["run", "--config", cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zero_iterations_write_header_and_initial_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), 0, "2", 1);
    let out = dir.path().join("out");
    run_into(&cfg, &out);
    let csv = fs::read_to_string(out.join("rep_0000.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2, "{csv}");
    assert!(lines[1].starts_with("0,"));
    assert!(out.join("summary.txt").exists());
}

#[test]
fn reruns_are_byte_identical_including_from_echoed_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), 3_000, "3", 2);
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    run_into(&cfg, &a);
    run_into(&cfg, &b);
    run_into(a.join("config.json").to_str().unwrap(), &c);
    for f in ["rep_0000.csv", "rep_0001.csv", "config.json"] {
        let x = fs::read(a.join(f)).unwrap();
        assert_eq!(x, fs::read(b.join(f)).unwrap(), "{f}");
        assert_eq!(x, fs::read(c.join(f)).unwrap(), "{f} from echo");
    }
}

#[test]
fn replications_differ_for_finite_retained_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), 500, "1", 2);
    let out = dir.path().join("out");
    run_into(&cfg, &out);
    assert_ne!(fs::read(out.join("rep_0000.csv")).unwrap(), fs::read(out.join("rep_0001.csv")).unwrap());
}

#[test]
fn stride_thins_rows_but_keeps_the_last() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), 1_005, "2", 1);
    let out = dir.path().join("out");
    let o = tvsa(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--stride", "50", "--quiet"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(out.join("rep_0000.csv")).unwrap();
    let ns: Vec<u64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns.last(), Some(&1_005));
    assert!(ns.contains(&100) && ns.contains(&1_000));
    assert!(ns.iter().all(|n| n % 50 == 0 || [100, 1_000, 1_005].contains(n)));
}

#[test]
fn bad_config_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"objective": "multicos", "dim": 2, "bogus": 1}"#).unwrap();
    let o = tvsa(&["run", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = tvsa(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["nets", "kernels", "conditions"] {
        let o = tvsa(&["verify", suite]);
        let stdout = String::from_utf8_lossy(&o.stdout);
        assert!(o.status.success(), "{suite}:\n{stdout}");
        assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{suite}:\n{stdout}");
    }
}

#[test]
fn conditions_for_a_violating_config_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slow.json");
    fs::write(
        &path,
        r#"{"objective": "sphere", "dim": 1, "kernel": {"family": "student-t", "dof": 1},
            "schedule": {"family": "power", "sigma0": 1.0, "beta": 0.5}, "retained": 0,
            "cooling": {"family": "power", "t0": 1.0, "a": 0.5}, "iterations": 10}"#,
    )
    .unwrap();
    let o = tvsa(&["verify", "conditions", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL check_cooling"));
}
