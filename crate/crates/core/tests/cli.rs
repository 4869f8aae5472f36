use std::process::{Command, Output};

fn opq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opq"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn verify_liealg_passes() {
    let o = opq(&["verify", "--p", "2", "--q", "2", "--suite", "liealg"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"].as_array().unwrap().len() >= 8);
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "anchor", "status", "details"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn verify_gkmod_passes() {
    let o = opq(&[
        "verify", "--p", "3", "--q", "3", "--m", "0", "--suite", "gkmod", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for check in ["annihilation", "ladder", "growth"] {
        assert!(text.contains(&format!("gkmod.{check}[")), "{check} missing");
    }
    assert!(!text.contains(",fail,"));
}

#[test]
fn gates_exit_with_two() {
    assert_eq!(
        opq(&["verify", "--p", "3", "--q", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        opq(&["verify", "--p", "3", "--q", "3", "--m", "1", "--suite", "gkmod"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        opq(&["ktypes", "--p", "4", "--q", "2", "--m", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        opq(&["verify", "--suite", "everything"]).status.code(),
        Some(2)
    );
    assert_eq!(opq(&["verify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "verify", "--p", "2", "--q", "2", "--suite", "module", "--seed", "5",
    ];
    assert_eq!(stdout(&opq(&args)), stdout(&opq(&args)));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("opq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let out = dir.join("report.json");
    std::fs::write(&cfg, "# sample\np=3\nq=3\nsuite=sl2\nseed=9\n").unwrap();
    let o = opq(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--q",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["p"], 3);
    assert_eq!(v["config"]["q"], 5);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["suite"], "sl2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ktypes_exports() {
    let o = opq(&[
        "ktypes", "--p", "4", "--q", "4", "--m", "1", "--window", "9", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), golden("ktypes_4_4_1_w9.csv"));
    let o = opq(&[
        "ktypes", "--p", "14", "--q", "12", "--m", "4", "--window", "28", "--format", "figure",
    ]);
    assert_eq!(stdout(&o), golden("figure_14_12_4.txt"));
    let o = opq(&["ktypes", "--p", "3", "--q", "3", "--m", "0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in v["records"].as_array().unwrap() {
        assert_eq!(r["kappa_plus"], r["kappa_minus"]);
    }
}

#[test]
fn larger_window_is_a_superset() {
    let small = stdout(&opq(&[
        "ktypes", "--p", "5", "--q", "3", "--m", "1", "--window", "12", "--format", "figure",
    ]));
    let large = stdout(&opq(&[
        "ktypes", "--p", "5", "--q", "3", "--m", "1", "--window", "16", "--format", "figure",
    ]));
    for line in small.lines().filter(|l| l.starts_with("point")) {
        assert!(large.contains(line));
    }
}

#[test]
fn gkdim_reports_bernstein_degree() {
    let o = opq(&["gkdim", "--p", "4", "--q", "4", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bernstein_degree"], "48");
    assert_eq!(v["gk_dimension"], 5);
    let csv = stdout(&opq(&["gkdim", "--p", "3", "--q", "3", "--format", "csv"]));
    assert!(csv.starts_with("n,dim\n0,1\n1,9\n"));
    assert_eq!(
        opq(&["gkdim", "--p", "2", "--q", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn ladder_output() {
    let o = opq(&["ladder", "--p", "4", "--q", "4", "--mu", "1", "--nu", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("ladder_4_4_mu1_nu2.txt"));
    let echo = stdout(&opq(&[
        "ladder", "--p", "3", "--q", "3", "--k", "1", "--nu", "0",
    ]));
    assert!(echo.contains("closed   1·ψ[5/2]"));
    let up = opq(&[
        "ladder",
        "--p",
        "4",
        "--q",
        "4",
        "--mu",
        "1",
        "--nu",
        "1",
        "--direction",
        "up",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&up)).unwrap();
    assert_eq!(v["agrees"], true);
    assert_eq!(
        opq(&["ladder", "--p", "3", "--q", "3", "--direction", "left"])
            .status
            .code(),
        Some(2)
    );
}
