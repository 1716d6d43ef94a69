use std::process::{Command, Output};

use rotsurf_cli::INVARIANTS_HEADER;

fn rotsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotsurf")).args(args).output().expect("spawn rotsurf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of a CSV as strings, header first.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let r = rows(text);
    let k = r[0].iter().position(|h| h == name).unwrap();
    r[1..].iter().filter_map(|row| row[k].parse().ok()).collect()
}

#[test]
fn invariants_spot_row() {
    let o = rotsurf(&["invariants", "--type", "I", "--f", "1", "--g", "u", "--u-range", "-1:1:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = rows(&text);
    assert_eq!(r[0], INVARIANTS_HEADER);
    let mid = &r[2];
    let get = |name: &str| mid[INVARIANTS_HEADER.iter().position(|h| *h == name).unwrap()].parse::<f64>().unwrap();
    assert_eq!(get("u"), 0.0);
    assert!((get("K") - 1.0).abs() < 1e-12);
    assert!((get("H2") + 0.5).abs() < 1e-12);
    assert!((get("kappa") + 1.0).abs() < 1e-12);
}

#[test]
fn invariants_marks_invalid_rows() {
    // type II with f = 1, g = u, β = 2 is valid only for |u| > 1/2
    let o = rotsurf(&["invariants", "--type", "II", "--beta", "2", "--f", "1", "--u-range", "0:1:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = rows(&text);
    assert_eq!(r[1][1], "0");
    assert!(r[1][2..].iter().all(String::is_empty));
    assert_eq!(r[3][1], "1");
}

#[test]
fn invariants_empty_valid_set_is_a_config_error() {
    let o = rotsurf(&["invariants", "--type", "II", "--beta", "2", "--f", "1", "--u-range", "-0.4:0.4:5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pnmc_hnorm2_column_is_constant() {
    let o = rotsurf(&["invariants", "--family", "pnmc", "--C", "1", "--u-range", "-2:2:41"]);
    let h = column(&stdout(&o), "Hnorm2");
    assert_eq!(h.len(), 41);
    assert!(h.iter().all(|x| (x - 1.0).abs() < 1e-8));
}

#[test]
fn minimal_hnorm2_column_vanishes() {
    let o = rotsurf(&["invariants", "--family", "minimal", "--A", "1", "--C", "0.785398", "--u-range", "-2:2:41"]);
    let h = column(&stdout(&o), "Hnorm2");
    assert_eq!(h.len(), 41);
    assert!(h.iter().all(|x| x.abs() <= 1e-16), "{h:?}");
}

#[test]
fn generate_pnmc_type_two_is_clipped() {
    let o = rotsurf(&["generate", "pnmc", "--type", "II", "--C", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let u = column(&stdout(&o), "u");
    let (lo, hi) = (u[0], *u.last().unwrap());
    assert!(lo > 0.5_f64.sqrt() && lo - 0.5_f64.sqrt() < 1e-5, "{lo}");
    assert!(hi < 1.0 && 1.0 - hi < 1e-5, "{hi}");
}

#[test]
fn generated_flat_meridian_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("flat.csv");
    let csv = csv.to_str().unwrap();
    let o = rotsurf(&[
        "generate", "flat", "--type", "I", "--u0", "1", "--f0", "1", "--fp0", "0.3", "--u-end", "2", "--h", "1e-3",
        "--out", csv,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let inv = rotsurf(&["invariants", "--meridian-csv", csv, "--u-range", "1.001:1.999:97"]);
    let k = column(&stdout(&inv), "K");
    assert_eq!(k.len(), 97);
    assert!(k.iter().all(|x| x.abs() < 1e-6));
}

#[test]
fn singular_flat_ivp_exits_truncated() {
    let o = rotsurf(&[
        "generate", "flat", "--type", "I", "--u0", "1", "--f0", "0.5", "--fp0", "0", "--u-end", "2", "--h", "1e-3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated"));
    // partial solution is still written
    assert!(column(&stdout(&o), "u").len() > 100);
}

#[test]
fn cmc_needs_constant() {
    let o = rotsurf(&["generate", "cmc", "--u0", "1", "--f0", "0.5", "--fp0", "0", "--u-end", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_minimal_json() {
    let o = rotsurf(&["verify", "minimal", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        let name = r["check_name"].as_str().unwrap();
        assert!(r["passed"].as_bool().unwrap(), "{name}");
        if !name.contains("negative_control") {
            assert!(r["max_abs_residual"].as_f64().unwrap() < 1e-8, "{name}");
        }
    }
}

#[test]
fn coarse_flat_step_gives_larger_residual() {
    let max_k = |h: &str| {
        let o = rotsurf(&["verify", "flat", "--h", h, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_array().unwrap().iter().find(|r| r["check_name"] == "flat:gauss_curvature:I").unwrap()["max_abs_residual"]
            .as_f64()
            .unwrap()
    };
    assert!(max_k("1e-2") > max_k("1e-3"));
}

#[test]
fn unknown_suite_and_bad_numbers_exit_two() {
    assert_eq!(rotsurf(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(rotsurf(&["invariants", "--f", "1", "--u-range", "0:1:1"]).status.code(), Some(2));
    assert_eq!(rotsurf(&["invariants", "--f", "1", "--alpha", "2*3", "--u-range", "0:1:3"]).status.code(), Some(2));
    assert_eq!(rotsurf(&["invariants", "--f", "1 +", "--u-range", "0:1:3"]).status.code(), Some(2));
    assert_eq!(rotsurf(&["invariants", "--f", "1"]).status.code(), Some(2));
}

#[test]
fn mesh_obj_topology() {
    let o = rotsurf(&["mesh", "--f", "1", "--g", "u", "--u-range", "0:1:3", "--v-range", "0:1:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 9);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 8);
}

#[test]
fn mesh_csv_satisfies_rotation_identities() {
    // absolute 1e-12 on x4² − x3² needs cosh²(v) = O(1); the default grid is checked relative to x4²
    for (vr, relative) in [("0:1:64", false), ("0:6.2:64", true)] {
        let o = rotsurf(&[
            "mesh",
            "--f",
            "2 + 0.3*sin(u)",
            "--g",
            "u",
            "--u-range",
            "-1:1:11",
            "--v-range",
            vr,
            "--format",
            "csv",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let r = rows(&text);
        assert_eq!(r[0], ["u", "v", "x1", "x2", "x3", "x4"]);
        assert_eq!(r.len(), 1 + 11 * 64);
        for row in &r[1..] {
            let x: Vec<f64> = row.iter().map(|c| c.parse().unwrap()).collect();
            let (u, f) = (x[0], 2.0 + 0.3 * x[0].sin());
            let scale = if relative { (x[5] * x[5]).max(1.0) } else { 1.0 };
            assert!((x[2] * x[2] + x[3] * x[3] - f * f).abs() < 1e-12);
            assert!((x[5] * x[5] - x[4] * x[4] - u * u).abs() < 1e-12 * scale);
        }
    }
}

#[test]
fn mesh_drop_x1_keeps_hyperbolic_plane() {
    let o = rotsurf(&["mesh", "--f", "1", "--u-range", "0:1:2", "--v-range", "0:1:2", "--projection", "drop-x1"]);
    let text = stdout(&o);
    assert!(text.starts_with("# rotsurf mesh 2x2 drop-x1\n"));
    // v = 0 row of u = 1: z = (1, 0, 0, 1), drop x1 -> (0, 0, 1)
    let v3 = text.lines().filter(|l| l.starts_with("v ")).nth(2).unwrap();
    let xs: Vec<f64> = v3.split_whitespace().skip(1).map(|c| c.parse().unwrap()).collect();
    assert_eq!(xs, [0.0, 0.0, 1.0]);
}
