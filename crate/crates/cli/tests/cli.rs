use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn liltail(args: &[&str]) -> Output {
    liltail_env(args, &[])
}

fn liltail_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_liltail"));
    cmd.args(args).env_remove("LIL_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const RADEMACHER_SPEC: &str = r#"{
  "family": {"type": "rademacher"},
  "axes": [{"size": 2, "weights": [1, 1]}],
  "norm": {"type": "lp", "p": 2}
}"#;

fn bound_column(csv: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("u,bound,d,w,truncation_k,vacuous_flag"));
    lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

#[test]
fn constants_reports_rosenthal_value_at_e() {
    let o = liltail(&["constants", "--p", "2.718281828"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let k = v["rosenthal"][0]["K_R"].as_f64().unwrap();
    // C_R p / (e ln p) at p = e is C_R itself.
    assert!((k - v["C_R"].as_f64().unwrap()).abs() < 1e-8);
    assert!(stdout(&o).contains("1.77638"));
}

#[test]
fn constants_doob_and_mixingale() {
    let o = liltail(&["constants", "--l", "2,4", "--m", "2", "--beta-q", "0.25"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["doob"][0]["factor"].as_f64(), Some(2.0));
    assert!((v["doob"][1]["factor"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-15);
    assert_eq!(v["mixingale"][0]["divergent"], false);
}

#[test]
fn norm_lp_and_mixed() {
    let dir = TempDir::new().unwrap();
    let field = write(
        &dir,
        "f.json",
        r#"{"axes": [{"size": 2, "weights": [1, 1]}, {"size": 2, "weights": [0.5, 0.5]}], "values": [3, 4, 0, 0]}"#,
    );
    let o = liltail(&["norm", "--field", s(&field), "--p", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "lp");
    // (0.5 * 9 + 0.5 * 16)^{1/2}
    assert!((v["norm"].as_f64().unwrap() - 12.5f64.sqrt()).abs() < 1e-12);

    let o = liltail(&["norm", "--field", s(&field), "--p", "1,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "mixed");
    // inner L1 over axis 0 gives 7 then 0; outer L2 with weight 0.5 gives sqrt(24.5).
    assert!((v["norm"].as_f64().unwrap() - 24.5f64.sqrt()).abs() < 1e-12);

    let o = liltail(&["norm", "--field", s(&field), "--p", "2", "--cl"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "cl");
    assert!((v["norm"].as_f64().unwrap() - 5.0).abs() < 1e-12);
}

#[test]
fn malformed_json_names_the_field() {
    let dir = TempDir::new().unwrap();
    let field = write(&dir, "bad.json", r#"{"axes": [{"size": "two", "weights": [1, 1]}], "values": [1, 2]}"#);
    let o = liltail(&["norm", "--field", s(&field), "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("axes[0].size"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_a_configuration_error() {
    let o = liltail(&["norm", "--field", "/nonexistent/f.json", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(liltail(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(liltail(&["bound", "--u-grid", "e:10:5"]).status.code(), Some(1));
    assert_eq!(liltail(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_u_grid_is_rejected() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let out = dir.path().join("b.csv");
    let o = liltail(&["bound", "--spec", s(&spec), "--u-grid", "10:e:5", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("u grid"));
}

#[test]
fn run_config_is_echoed() {
    let o = liltail(&["constants", "--p", "3"]);
    let err = stderr(&o);
    let first = err.lines().next().unwrap();
    let v: serde_json::Value = serde_json::from_str(first).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["subcommand"], "constants");
    assert_eq!(v["p"][0], 3.0);
}

#[test]
fn bound_curve_from_envelope_is_non_increasing() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let env = dir.path().join("env.json");
    let first = dir.path().join("first.csv");
    let o = liltail(&[
        "bound", "--spec", s(&spec), "--u-grid", "e:100:50", "--optimize", "--out", s(&first), "--envelope-out", s(&env),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));

    let out = dir.path().join("b.csv");
    let o = liltail(&["bound", "--envelope", s(&env), "--r", "1", "--u-grid", "e:100:50", "--optimize", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let bounds = bound_column(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(bounds.len(), 50);
    assert!(bounds.iter().all(|b| (0.0..=1.0).contains(b)));
    assert!(bounds.windows(2).all(|w| w[1] <= w[0]));
    assert!(*bounds.last().unwrap() < 1.0);
}

#[test]
fn bound_with_fixed_partition() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let out = dir.path().join("b.csv");
    let o = liltail(&["bound", "--spec", s(&spec), "--u-grid", "10:100:8", "--d", "4", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("4")));
}

#[test]
fn simulate_then_compare() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let sim = dir.path().join("sim.csv");
    let bound = dir.path().join("bound.csv");
    // Stays above the zero-count Clopper-Pearson limit for 2000 trials (about 2.3e-3).
    let grid = "e:22:12";
    let o = liltail(&[
        "simulate", "--spec", s(&spec), "--n-max", "200", "--trials", "2000", "--seed", "3", "--u-grid", grid, "--out", s(&sim),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let sim_text = std::fs::read_to_string(&sim).unwrap();
    assert!(sim_text.starts_with("u,q_hat,cp_upper_99,trials\n"));

    let o = liltail(&["bound", "--spec", s(&spec), "--u-grid", grid, "--optimize", "--out", s(&bound)]);
    assert!(o.status.success(), "{}", stderr(&o));

    let report = dir.path().join("report.json");
    let o = liltail(&["compare", "--sim", s(&sim), "--bound", s(&bound), "--out", s(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).starts_with("PASS: 12 rows, 0 failures"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);

    // A bound far below the empirical tail must be reported.
    let fake: String = std::fs::read_to_string(&bound)
        .unwrap()
        .lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 0 {
                return format!("{l}\n");
            }
            let mut f: Vec<&str> = l.split(',').collect();
            f[1] = "1e-9";
            f[5] = "false";
            format!("{}\n", f.join(","))
        })
        .collect();
    let fake_path = write(&dir, "fake.csv", &fake);
    let o = liltail(&["compare", "--sim", s(&sim), "--bound", s(&fake_path)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn compare_rejects_mismatched_grids() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let sim = dir.path().join("sim.csv");
    let bound = dir.path().join("bound.csv");
    let o = liltail(&[
        "simulate", "--spec", s(&spec), "--n-max", "50", "--trials", "100", "--u-grid", "e:10:4", "--out", s(&sim),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = liltail(&["bound", "--spec", s(&spec), "--u-grid", "e:10:5", "--optimize", "--out", s(&bound)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = liltail(&["compare", "--sim", s(&sim), "--bound", s(&bound)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulation_output_does_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"family": {"type": "uniform", "a": 1.5}, "axes": [{"size": 2, "weights": [1, 1]}, {"size": 2, "weights": [1, 1]}],
            "norm": {"type": "mixed", "p": [2, 4]}}"#,
    );
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("sim{threads}.csv"));
        let o = liltail_env(
            &["simulate", "--spec", s(&spec), "--n-max", "300", "--trials", "500", "--seed", "11", "--u-grid", "1:20:10", "--out", s(&out)],
            &[("LIL_THREADS", threads)],
        );
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains(&format!("\"threads\":{threads}")));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn invalid_thread_count_is_rejected() {
    let o = liltail_env(&["constants", "--p", "3"], &[("LIL_THREADS", "many")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn horizon_check_prints_report() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", RADEMACHER_SPEC);
    let out = dir.path().join("sim.csv");
    let o = liltail(&[
        "simulate", "--spec", s(&spec), "--n-max", "64", "--trials", "200", "--u-grid", "e:10:3", "--out", s(&out), "--horizon-check",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let _: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
}

#[test]
fn entropy_for_a_small_field() {
    let dir = TempDir::new().unwrap();
    let field = write(
        &dir,
        "field.json",
        r#"{"x_weights": [1], "nt": 3, "omega_weights": [0.5, 0.5], "values": [1, 2, -1, -1, -2, 1]}"#,
    );
    let out = dir.path().join("nu.json");
    let env = dir.path().join("env.json");
    let o = liltail(&[
        "entropy", "--field", s(&field), "--p", "2", "--z", "2,3", "--out", s(&out), "--envelope-out", s(&env),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let nu = row["nu"].as_f64().unwrap();
        assert!(nu.is_finite() && nu > 0.0);
    }
    let e: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&env).unwrap()).unwrap();
    assert!(!e["L_grid"].as_array().unwrap().is_empty());
}

#[test]
fn entropy_for_the_holder_example() {
    let dir = TempDir::new().unwrap();
    let ex = write(&dir, "holder.json", r#"{"c1": 1, "c2": 1, "l": 1, "b": 0.5, "p": 2, "dim": 1, "diameter": 1}"#);
    let o = liltail(&["entropy", "--holder", s(&ex), "--z", "3,4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["Z"], 3.0);
}
