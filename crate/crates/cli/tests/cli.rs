use std::path::Path;
use std::process::{Command, Output};

fn spectool(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectool"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spectool runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn usage_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_spectool");
    let none = Command::new(bin).output().unwrap();
    assert_eq!(none.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&none.stderr).contains("Usage"));

    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout);
    for c in [
        "eig",
        "spectrum",
        "det",
        "lt-sweep",
        "disk-check",
        "lemma-check",
        "jensen-check",
    ] {
        assert!(text.contains(c), "{c} missing from help");
    }

    let typo = Command::new(bin).arg("spectrm").output().unwrap();
    assert_eq!(typo.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&typo.stderr).contains("spectrum"));
}

#[test]
fn bad_config_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    for (set, key) in [
        ("bogus=1", "bogus"),
        ("count=many", "count"),
        ("eps=-1", "eps"),
    ] {
        let out = spectool(&["lt-sweep", "--set", set], dir.path());
        assert_eq!(out.status.code(), Some(2), "{set}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(key), "{set}");
    }
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"count": 3, "eps": 0.2}"#).unwrap();
    let out_dir = dir.path().join("out");
    let out = spectool(
        &[
            "lt-sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--set",
            "count=2",
        ],
        &out_dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&out_dir, "report.json")).unwrap();
    assert_eq!(report["params"]["count"], 2);
    assert_eq!(report["params"]["eps"].as_f64(), Some(0.2));
}

#[test]
fn lt_sweep_rows_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let out = spectool(&["lt-sweep", "--set", "count=10"], d);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let rows = read(&a, "lt_reports.csv");
    // three inequalities per draw plus the header
    assert_eq!(rows.lines().count(), 1 + 3 * 10);
    assert!(rows.starts_with("id,lhs,rhs,ratio,p,eps,index,seed,scale\n"));
    for name in [
        "report.json",
        "lt_reports.csv",
        "per_scale.csv",
        "ratio_hist.dat",
    ] {
        assert_eq!(read(&a, name), read(&b, name), "{name}");
    }
    let hist = read(&a, "ratio_hist.dat");
    assert!(hist.lines().any(|l| l.starts_with("# edges:")));
    assert_eq!(hist.lines().filter(|l| !l.starts_with('#')).count(), 32);
}

#[test]
fn spectrum_reports_rank_one_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let out = spectool(&["spectrum"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "report.json")).unwrap();
    let accepted = report["results"]["accepted"].as_array().unwrap();
    assert_eq!(accepted.len(), 1);
    let re = accepted[0]["lambda"][0].as_f64().unwrap();
    assert!((re - 2.5).abs() < 1e-6);
    assert_eq!(report["status"], "pass");
}

#[test]
fn lemma_check_defaults_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = spectool(&["lemma-check"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "report.json")).unwrap();
    for key in ["lemma1", "e226", "e202", "e203"] {
        assert_eq!(report["results"][key]["failed"], 0, "{key}");
        assert!(
            report["results"][key]["passed"].as_u64().unwrap() > 0,
            "{key}"
        );
    }
}

#[test]
fn failing_assertion_exits_one_with_id() {
    let dir = tempfile::tempdir().unwrap();
    // the printed f_1 bound fails for small perturbations
    let args = [
        "det",
        "--set",
        r#"operator={"b": [[0.01, 0.0]]}"#,
        "--set",
        "check_f1=true",
        "--set",
        "grid_points=4",
        "--set",
        "ray_points=4",
    ];
    let out = spectool(&args, dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f1-bound"));
    assert!(dir.path().join("det_f1.csv").exists());
}

#[test]
fn eig_files_are_two_column_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = spectool(&["eig", "--set", "n=16"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let dat = read(dir.path(), "eigenvalues.dat");
    let rows: Vec<&str> = dat.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 2));
}
