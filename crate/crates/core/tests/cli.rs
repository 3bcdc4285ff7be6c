use std::path::Path;
use std::process::{Command, Output};

fn curvosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvosc"))
        .args(args)
        .env_remove("CURVOSC_TOL")
        .output()
        .expect("binary runs")
}

fn with_tol(tol: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvosc"))
        .args(args)
        .env("CURVOSC_TOL", tol)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, split into fields.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn energies_at_030_lists_six_states_up_to_level_two() {
    let out = curvosc(&["energies", "--lambda", "0.30"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("m,n,N,e\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 6);
    assert_eq!(r.iter().map(|row| row[2].parse::<usize>().unwrap()).max(), Some(2));
}

#[test]
fn flat_energies_have_hermite_degeneracies() {
    let out = curvosc(&["energies", "--lambda", "0", "--n-max", "2"]);
    assert_eq!(code(&out), 0);
    let energies: Vec<f64> = rows(&stdout(&out)).iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(energies, vec![1.0, 2.0, 2.0, 3.0, 3.0, 3.0]);
}

#[test]
fn spherical_spacings_grow_linearly() {
    let out = curvosc(&["energies", "--lambda", "-0.30", "--n-max", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let states: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mut by_level = [f64::NAN; 4];
    for s in states.as_array().unwrap() {
        by_level[s["N"].as_u64().unwrap() as usize] = s["e"].as_f64().unwrap();
    }
    for (k, want) in [1.3, 1.6, 1.9].iter().enumerate() {
        assert!((by_level[k + 1] - by_level[k] - want).abs() < 1e-12);
    }
}

#[test]
fn unbounded_enumeration_is_rejected() {
    assert_eq!(code(&curvosc(&["energies", "--lambda", "-0.3"])), 2);
    assert_eq!(code(&curvosc(&["energies", "--lambda", "0"])), 2);
}

#[test]
fn levels_past_the_cutoff_are_inadmissible() {
    assert_eq!(code(&curvosc(&["energies", "--lambda", "0.3", "--n-max", "5"])), 3);
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(code(&curvosc(&["energies", "--lambda", "abc", "--n-max", "1"])), 2);
    assert_eq!(code(&curvosc(&["poly", "--family", "Q", "--index", "1"])), 2);
    assert_eq!(code(&curvosc(&["frobnicate"])), 2);
}

#[test]
fn poly_z2_on_the_sphere() {
    let out = curvosc(&["poly", "--family", "Z", "--index", "2", "--lambda", "-0.3", "--route", "recursion", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let exact: Vec<&str> = v["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(exact, vec!["1", "0", "-13/5"]);
    let values: Vec<f64> = v["values"].as_array().unwrap().iter().map(|c| c.as_f64().unwrap()).collect();
    assert_eq!(values, vec![1.0, 0.0, -2.6]);
}

#[test]
fn every_route_succeeds_for_y() {
    for route in ["recursion", "rodrigues", "genfunc"] {
        let out = curvosc(&["poly", "--family", "Y", "--index", "3", "--m-partner", "1", "--lambda", "0.1", "--route", route]);
        assert_eq!(code(&out), 0, "{route}");
    }
}

#[test]
fn flat_poly_is_hermite() {
    let out = curvosc(&["poly", "--family", "Z", "--index", "2", "--lambda", "0"]);
    assert_eq!(code(&out), 0);
    let exact: Vec<String> = rows(&stdout(&out)).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(exact, vec!["1", "0", "-2"]);
}

#[test]
fn poly_beyond_the_cutoff_exits_three() {
    assert_eq!(code(&curvosc(&["poly", "--family", "Z", "--index", "4", "--lambda", "0.3"])), 3);
}

#[test]
fn exact_routes_agree_under_any_threshold() {
    let args = ["poly", "--family", "Y", "--index", "8", "--m-partner", "2", "--lambda", "-0.37"];
    assert_eq!(code(&with_tol("1e-300", &args)), 0);
    assert_eq!(code(&with_tol("-1", &args)), 2);
}

#[test]
fn spherical_gram_matrix_is_diagonal() {
    let out = curvosc(&["ortho", "--family", "Z", "--max-index", "4", "--lambda", "-0.3"]);
    assert_eq!(code(&out), 0);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 5);
    for (i, row) in r.iter().enumerate() {
        let vals: Vec<f64> = row[1..].iter().map(|v| v.parse().unwrap()).collect();
        for (j, v) in vals.iter().enumerate() {
            if i != j {
                assert!(v.abs() < 1e-8 * vals[i].abs());
            }
        }
    }
}

#[test]
fn ortho_beyond_the_cutoff_exits_three() {
    assert_eq!(code(&curvosc(&["ortho", "--family", "Z", "--max-index", "4", "--lambda", "0.3"])), 3);
}

#[test]
fn flat_gram_diagonal_matches_hermite_norms() {
    let out = curvosc(&["ortho", "--family", "Z", "--max-index", "4", "--lambda", "0"]);
    assert_eq!(code(&out), 0);
    let mut norm = std::f64::consts::PI.sqrt();
    for (i, row) in rows(&stdout(&out)).iter().enumerate() {
        if i > 0 {
            norm *= 2.0 * i as f64;
        }
        let d: f64 = row[i + 1].parse().unwrap();
        assert!((d - norm).abs() < 1e-10 * norm, "n = {i}: {d} vs {norm}");
    }
}

#[test]
fn tolerance_override_turns_ortho_into_an_accuracy_failure() {
    let args = ["ortho", "--family", "Z", "--max-index", "4", "--lambda", "-0.3"];
    assert_eq!(code(&with_tol("1e-30", &args)), 5);
    assert_eq!(code(&with_tol("1e-6", &args)), 0);
    assert_eq!(code(&with_tol("tiny", &args)), 2);
}

#[test]
fn eigencheck_passes_and_reports_json() {
    let out = curvosc(&["eigencheck", "--m", "1", "--n", "1", "--lambda", "-0.3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn eigencheck_fails_under_an_impossible_threshold() {
    assert_eq!(code(&with_tol("1e-30", &["eigencheck", "--m", "1", "--n", "0", "--lambda", "0.2"])), 5);
}

#[test]
fn classical_run_writes_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let p = path.to_str().unwrap();
    let out = curvosc(&["classical", "--lambda", "-0.25", "--x0", "1", "--vy0", "0.5", "--steps", "100", "--out", p]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 102);
}

#[test]
fn classical_start_outside_the_chart_exits_two() {
    assert_eq!(code(&curvosc(&["classical", "--lambda", "-1", "--x0", "1.5"])), 2);
}

fn figure_files(id: &str, dir: &Path) -> Vec<String> {
    let out = curvosc(&["figure", id, "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "figure {id}");
    stdout(&out).lines().map(str::to_string).collect()
}

#[test]
fn every_figure_writes_csv_with_headers() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["I", "II", "III", "IV", "V", "VI", "VII"] {
        for file in figure_files(id, dir.path()) {
            let text = std::fs::read_to_string(&file).unwrap();
            assert!(text.lines().count() > 1, "{file}");
            assert!(text.ends_with('\n'));
        }
    }
}

#[test]
fn figure_vi_marks_three_levels_for_each_curved_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let files = figure_files("VI", dir.path());
    let points = files.iter().find(|f| f.ends_with("figure_VI_points.csv")).unwrap();
    let r = rows(&std::fs::read_to_string(points).unwrap());
    for lam in ["0.30", "-0.30"] {
        let levels: Vec<&str> = r.iter().filter(|row| row[0] == lam).map(|row| row[1].as_str()).collect();
        assert_eq!(levels, vec!["0", "1", "2"]);
    }
}

#[test]
fn figure_iv_covers_the_three_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let files = figure_files("IV", dir.path());
    let r = rows(&std::fs::read_to_string(&files[0]).unwrap());
    let mut lams: Vec<&str> = r.iter().map(|row| row[0].as_str()).collect();
    lams.dedup();
    assert_eq!(lams, vec!["0", "-0.15", "-0.30"]);
}

#[test]
fn unknown_figure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&curvosc(&["figure", "VIII", "--out", dir.path().to_str().unwrap()])), 2);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["energies", "--lambda", "0.15"],
        &["ortho", "--family", "Y", "--max-index", "3", "--m-partner", "1", "--lambda", "-0.2"],
        &["classical", "--lambda", "0.3", "--x0", "0.4", "--vy0", "0.3", "--steps", "500"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let mut runs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{k}_{run}.csv"));
            let mut full = args.to_vec();
            full.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(code(&curvosc(&full)), 0);
            runs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(runs[0], runs[1], "{args:?}");
    }
}

#[test]
fn failed_runs_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.json");
    let out = curvosc(&["poly", "--family", "Z", "--index", "5", "--lambda", "0.3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!path.exists());
}
