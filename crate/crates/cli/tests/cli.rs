use std::path::Path;

use assert_cmd::Command;
use serde_json::Value;
use tempfile::tempdir;

fn qswitch() -> Command {
    Command::cargo_bin("qswitch").unwrap()
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = qswitch().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (json, code)
}

fn fidelity(v: &Value) -> f64 {
    v["fidelity"].as_f64().unwrap()
}

#[test]
fn fig2_with_pauli_x() {
    let (r, code) = report(&[
        "run", "--preset", "fig2", "--u", "x", "--alpha", "0.6", "--beta", "0.8",
    ]);
    assert_eq!(code, 0);
    assert!((fidelity(&r) - 1.0).abs() < 1e-10);
    assert_eq!(r["passed"], true);
    assert_eq!(r["output"]["kind"], "pure");
    assert_eq!(r["input"]["alpha"][0], 0.6);
}

#[test]
fn fig5_and_ion_presets_pass() {
    for args in [
        vec![
            "run", "--preset", "fig5", "--uf", "haar:1", "--ug", "haar:2", "--dim", "3",
        ],
        vec![
            "run",
            "--preset",
            "ion-ctrl-u",
            "--u",
            "h",
            "--beta-phase",
            "0.3",
        ],
        vec![
            "run",
            "--preset",
            "ion-ctrl-switch",
            "--uf",
            "rx:0.4",
            "--ug",
            "ry:1.1",
        ],
    ] {
        let (r, code) = report(&args);
        assert_eq!(code, 0, "{args:?}");
        assert!((fidelity(&r) - 1.0).abs() < 1e-10, "{args:?}");
    }
}

#[test]
fn ion_switch_with_identities_returns_input() {
    let (r, code) = report(&[
        "run",
        "--preset",
        "ion-ctrl-switch",
        "--uf",
        "i",
        "--ug",
        "i",
        "--alpha",
        "0.8",
        "--beta",
        "0.6",
        "--psi",
        "amps:[[0,1],[0,0]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["ground_mode"], true);
    let amps = r["output"]["amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 48);
    // (0.8|g⟩ + 0.6|e⟩) ⊗ i|g⟩ ⊗ |0⟩: indices (l1·4 + l2)·3 + n.
    for (k, a) in amps.iter().enumerate() {
        let want = match k {
            0 => [0.0, 0.8],
            12 => [0.0, 0.6],
            _ => [0.0, 0.0],
        };
        assert!((a[0].as_f64().unwrap() - want[0]).abs() < 1e-12, "{k}");
        assert!((a[1].as_f64().unwrap() - want[1]).abs() < 1e-12, "{k}");
    }
}

#[test]
fn big_brother_reports_mixed_fidelity_without_threshold() {
    let (r, code) = report(&[
        "run", "--preset", "fig2-bb", "--u", "haar:7", "--alpha", "0.7071", "--beta", "0.7071",
    ]);
    assert_eq!(code, 0);
    assert!((fidelity(&r) - 0.5).abs() < 1e-6);
    assert_eq!(r["passed"], Value::Null);
    assert_eq!(r["output"]["kind"], "mixed");

    let (r, code) = report(&[
        "run", "--preset", "fig2-bb", "--u", "z", "--sample", "--seed", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["output"]["kind"], "sampled");
    assert!((fidelity(&r) - 0.5).abs() < 1e-10);
}

#[test]
fn unnormalized_control_warns() {
    let out = qswitch()
        .args([
            "run", "--preset", "fig2", "--u", "x", "--alpha", "1", "--beta", "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalizing"));
}

#[test]
fn wrong_scheme_fails_fidelity_with_exit_1() {
    let dir = tempdir().unwrap();
    let scheme = dir.path().join("plain.json");
    // The device sits on the input path: this is 𝟙 ⊗ U, not controlled-U.
    std::fs::write(
        &scheme,
        r#"{"space":{"paths":["u","l"],"internal_dim":2},
            "stages":[{"type":"device","path":"u","slot":"U"}],"slots":["U"]}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    qswitch()
        .args([
            "run",
            "--scheme",
            scheme.to_str().unwrap(),
            "--target",
            "ctrl-u",
            "--u",
            "x",
        ])
        .args(["--psi", "basis:0", "--out", out.to_str().unwrap()])
        .assert()
        .code(1);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["passed"], false);
    // |⟨χ|ξ⟩|² = |α² + β²⟨0|X|0⟩|² = 1/4
    assert!((fidelity(&r) - 0.25).abs() < 1e-12);
}

#[test]
fn malformed_input_exits_2_without_writing() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cases: [&[&str]; 6] = [
        &[
            "run",
            "--preset",
            "fig2",
            "--u",
            "matrix:[[1,0],[1,0],[0,0],[1,0]]",
        ],
        &["run", "--preset", "fig2", "--u", "rx:abc"],
        &["run", "--preset", "fig2", "--u", "x", "--dim", "3"],
        &["run", "--preset", "fig9", "--u", "x"],
        &["run", "--preset", "fig5", "--uf", "x"],
        &["nogo", "--kind", "switch", "--restarts", "0"],
    ];
    for args in cases {
        qswitch()
            .args(args)
            .args(["--out", out.to_str().unwrap()])
            .assert()
            .code(2);
        assert!(!out.exists(), "{args:?}");
    }
    qswitch().args(["run", "--bogus"]).assert().code(2);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

fn run_to_file(args: &[&str], out: &Path) -> Value {
    qswitch()
        .args(args)
        .args(["--out", out.to_str().unwrap()])
        .assert()
        .success();
    serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
}

#[test]
fn emitted_schemes_reproduce_presets() {
    let dir = tempdir().unwrap();
    let cases = [
        ("fig2", "--scheme", "ctrl-u"),
        ("fig2-bb", "--scheme", "ctrl-u"),
        ("fig5", "--scheme", "switch"),
        ("fig5-bb", "--scheme", "switch"),
        ("ion-ctrl-u", "--sequence", "ctrl-u"),
        ("ion-ctrl-switch", "--sequence", "switch"),
    ];
    let gates = [
        "--u", "haar:4", "--uf", "haar:5", "--ug", "haar:6", "--alpha", "0.3", "--beta", "0.9",
    ];
    for (name, flag, target) in cases {
        let file = dir.path().join(format!("{name}.json"));
        qswitch()
            .args([
                "emit-scheme",
                "--preset",
                name,
                "--out",
                file.to_str().unwrap(),
            ])
            .assert()
            .success();
        let a = run_to_file(
            &[&["run", "--preset", name][..], &gates].concat(),
            &dir.path().join("a.json"),
        );
        let b = run_to_file(
            &[
                &["run", flag, file.to_str().unwrap(), "--target", target][..],
                &gates,
            ]
            .concat(),
            &dir.path().join("b.json"),
        );
        assert_eq!(a["output"], b["output"], "{name}");
        assert_eq!(a["fidelity"], b["fidelity"], "{name}");
    }
}

#[test]
fn nogo_small_run_is_deterministic() {
    let args = [
        "nogo",
        "--kind",
        "switch",
        "--restarts",
        "1",
        "--samples",
        "1",
        "--seed",
        "1",
    ];
    let a = qswitch().args(args).output().unwrap();
    let b = qswitch().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    let best = r["best_worst_case_fidelity"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&best));
    assert_eq!(r["kind"], "switch");
    assert_eq!(r["restarts"].as_array().unwrap().len(), 1);
}

#[test]
fn nogo_known_oracle_is_reachable() {
    let (r, code) = report(&[
        "nogo",
        "--kind",
        "ctrl-u",
        "--ancilla",
        "1",
        "--restarts",
        "2",
        "--samples",
        "1",
        "--known-oracle",
    ]);
    assert_eq!(code, 0);
    assert!(r["best_worst_case_fidelity"].as_f64().unwrap() >= 1.0 - 1e-6);
}

#[test]
fn nogo_full_ctrl_u_search_stays_below_one() {
    let (r, code) = report(&[
        "nogo",
        "--kind",
        "ctrl-u",
        "--dim",
        "2",
        "--ancilla",
        "2",
        "--restarts",
        "20",
        "--samples",
        "16",
        "--seed",
        "42",
    ]);
    assert_eq!(code, 0);
    assert!(r["best_worst_case_fidelity"].as_f64().unwrap() < 0.999);
}

#[test]
fn version_flag() {
    let out = qswitch().arg("--version").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
