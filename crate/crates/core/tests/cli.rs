//! The `relqi` binary: subcommands, exit codes, formats and determinism.

use std::process::{Command, Output};

fn relqi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relqi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn wigner_reports_metadata_and_passes() {
    let out = relqi(&[
        "wigner",
        "--boost",
        "1.2,1,0,0",
        "--rotate",
        "0.5,0,0,1",
        "--momentum",
        "0.3,0.4,-0.2",
        "--seed",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["pass"], true);
    assert!(v["tolerances"]["oracle"].is_number());
    assert!(v["data"]["oracle_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn lambda_factor_order_matters() {
    let a = json(&relqi(&[
        "wigner",
        "--rotate",
        "0.9,0,1,0",
        "--boost",
        "1,1,0,0",
        "--momentum",
        "0.2,0.5,0",
    ]));
    let b = json(&relqi(&[
        "wigner",
        "--boost",
        "1,1,0,0",
        "--rotate",
        "0.9,0,1,0",
        "--momentum",
        "0.2,0.5,0",
    ]));
    assert_ne!(a["data"]["lambda"], b["data"]["lambda"]);
    // R·L: the first row of L is untouched by a rotation applied on the left
    assert!((a["data"]["lambda"][0][1].as_f64().unwrap() - 1f64.sinh()).abs() < 1e-14);
}

#[test]
fn pure_rotation_is_its_own_wigner_rotation() {
    let v = json(&relqi(&[
        "wigner",
        "--rotate",
        "0.7,0,0,1",
        "--momentum",
        "1.5,-0.3,0.2",
        "--mass",
        "0.5",
    ]));
    assert!((v["data"]["angle"].as_f64().unwrap() - 0.7).abs() < 1e-12);
    assert!((v["data"]["axis"][2].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn invalid_input_is_a_usage_error() {
    assert_eq!(
        relqi(&["wigner", "--boost", "1,0,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(relqi(&["wigner", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(
        relqi(&["wigner", "--tol", "nonsense=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        relqi(&["invariance-sweep", "--samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        relqi(&["bell-transform", "--p1", "0.5,0,0", "--p2", "0.5,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(relqi(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    let out = relqi(&[
        "generators-check",
        "--n",
        "17",
        "--tol",
        "hermiticity_separation=1e9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"]["hermiticity"], false);
}

#[test]
fn bell_transform_singlet_is_rotation_invariant() {
    let v = json(&relqi(&[
        "bell-transform",
        "--p1",
        "0.5,0.1,0",
        "--p2",
        "-0.5,-0.1,0",
        "--rotate",
        "1.1,0.3,0.4,0.5",
    ]));
    let amps = &v["data"]["amplitudes_out"];
    assert!((amps[0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    for mu in 1..4 {
        assert!(amps[mu][0].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn sweep_csv_is_deterministic() {
    let args = [
        "invariance-sweep",
        "--samples",
        "20",
        "--seed",
        "42",
        "--format",
        "csv",
    ];
    let a = relqi(&args);
    let b = relqi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("sample,rapidity,delta_entropy,delta_spectrum\n"));
    assert_eq!(text.lines().count(), 21);
    assert!(!text.contains('\r'));
    let other = relqi(&[
        "invariance-sweep",
        "--samples",
        "20",
        "--seed",
        "43",
        "--format",
        "csv",
    ]);
    assert_ne!(text.as_bytes(), &other.stdout[..]);
}

#[test]
fn csv_output_file_gets_metadata_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("entropy.csv");
    let out = relqi(&[
        "entropy-demo",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("case,route,value,residual\n"));
    let meta: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("entropy.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["seed"], 5);
    assert_eq!(meta["pass"], true);
}

#[test]
fn generators_check_small_grid_reports_table() {
    let out = relqi(&["generators-check", "--n", "33", "--levels", "2"]);
    let v = json(&out);
    assert_eq!(v["data"]["families"].as_array().unwrap().len(), 3);
    assert!(v["data"]["spin_algebra_residual"].as_f64().unwrap() <= 1e-14);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn boundary_leak_is_reported() {
    let out = relqi(&["generators-check", "--n", "17", "--extent", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("leaks"));
}
