use std::path::Path;
use std::process::{Command, Output};

fn eigenflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenflow"))
        .args(args)
        .output()
        .expect("spawn eigenflow")
}

fn csv_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .expect("read csv")
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn eigens_writes_every_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    let o = eigenflow(&["eigens", "--n-max", "100", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5049 + 1);
    assert!(rows[0].starts_with("family,"));
}

#[test]
fn eigens_to_stdout() {
    let o = eigenflow(&["eigens", "--n-max", "5"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 14 + 1);
}

#[test]
fn reproduce_all_small() {
    let dir = tempfile::tempdir().unwrap();
    let o = eigenflow(&[
        "reproduce-all",
        "--n-max",
        "20",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "table1.csv",
        "bins.csv",
        "classify.csv",
        "fits.json",
        "summary.json",
    ] {
        assert!(dir.path().join(f).is_file(), "missing {f}");
    }
    let table = csv_rows(&dir.path().join("table1.csv"));
    assert_eq!(table.len(), 3);
    let svgs = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "svg")
        })
        .count();
    assert!(svgs >= 5);
    let fits: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fits.json")).unwrap())
            .unwrap();
    assert!(fits["logistic"].is_object());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["n_max"], 20);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n_max": 30, "eps_ring": 0.02}"#).unwrap();
    let out = dir.path().join("a.csv");
    let o = eigenflow(&[
        "--config",
        cfg.to_str().unwrap(),
        "--n-max",
        "10",
        "eigens",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csv_rows(&out).len(), 54 + 1);
}

#[test]
fn usage_and_config_errors() {
    assert_eq!(eigenflow(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        eigenflow(&["eigens", "--n-max", "1"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"n_max\": ,\n}").unwrap();
    let o = eigenflow(&["--config", cfg.to_str().unwrap(), "eigens"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
    assert_eq!(eigenflow(&["--help"]).status.code(), Some(0));
}
