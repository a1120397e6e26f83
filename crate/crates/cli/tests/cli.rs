use std::process::{Command, Output};

use serde_json::Value;

fn hcint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcint"))
        .args(args)
        .env_remove("HC_MAX_RANK")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(
        text.lines().count(),
        1,
        "one JSON object per invocation: {text}"
    );
    serde_json::from_str(&text).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn f(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn eval_unitary_two() {
    for method in ["weyl", "det"] {
        let out = hcint(&[
            "eval", "--group", "U", "--rank", "2", "--a", "0,1", "--b", "0,1", "--method", method,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let v = json(&out);
        assert!((f(&v, "closed_form") - (std::f64::consts::E - 1.0)).abs() < 1e-12);
        assert_eq!(v["group"], "U(2)");
        assert_eq!(v["rank"], 2);
        assert!(v.get("mc_mean").is_none());
    }
}

#[test]
fn eval_symplectic_rank_one() {
    let out = hcint(&[
        "eval", "--group", "USp", "--rank", "1", "--a", "0.5", "--b", "0.5", "--method", "det",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((f(&v, "closed_form") - 0.5f64.sinh() / 0.5).abs() < 1e-14);
    assert_eq!(v["method"], "determinant");
}

#[test]
fn rank_one_even_orthogonal_is_rejected() {
    let out = hcint(&[
        "eval", "--group", "SO", "--rank", "1", "--a", "0.5", "--b", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("rank 1"), "{}", stderr(&out));
}

#[test]
fn degenerate_spectrum_exits_two_and_names_coordinates() {
    let args = [
        "--group",
        "U",
        "--rank",
        "3",
        "--a",
        "0.2,0.7,0.2",
        "--b",
        "0,1,2",
    ];
    for cmd in ["eval", "verify"] {
        let out = hcint(&[&[cmd][..], &args].concat());
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        let msg = stderr(&out);
        assert!(
            msg.contains("degenerate") && msg.contains("coordinates 0 and 2"),
            "{msg}"
        );
    }
    let out = hcint(&[
        "eval", "--group", "Sp", "--rank", "2", "--a", "0,1", "--b", "0.5,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero coordinate in a"));
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &[
            "eval", "--group", "U", "--rank", "2", "--a", "0,abc", "--b", "0,1",
        ][..],
        &[
            "eval", "--group", "U", "--rank", "2", "--a", "0,1", "--b", "0,1,2",
        ],
        &[
            "eval", "--group", "G2", "--rank", "2", "--a", "0,1", "--b", "0,1",
        ],
        &[
            "eval", "--group", "U", "--odd", "--rank", "2", "--a", "0,1", "--b", "0,1",
        ],
        &[
            "eval", "--group", "U", "--rank", "2", "--a", "0,inf", "--b", "0,1",
        ],
        &[
            "verify",
            "--group",
            "U",
            "--rank",
            "2",
            "--a",
            "0,1",
            "--b",
            "0,1",
            "--samples",
            "0",
        ],
    ] {
        assert_eq!(hcint(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn coordinates_accept_signs_and_exponents() {
    let out = hcint(&[
        "eval",
        "--group",
        "su",
        "--rank",
        "2",
        "--a",
        "-2.5e-1,7.5E-1",
        "--b",
        "-1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["a"], serde_json::json!([-0.25, 0.75]));
}

#[test]
fn constants_match_closed_forms() {
    let v = json(&hcint(&["constants", "--group", "U", "--rank", "3"]));
    assert_eq!(v["weyl_order"], 6);
    assert_eq!(v["pi_pi"], "12");
    assert_eq!(v["positive_roots"], 3);

    let v = json(&hcint(&[
        "constants",
        "--group",
        "O",
        "--rank",
        "2",
        "--with-polynomial",
    ]));
    assert_eq!(v["group"], "O(4)");
    assert_eq!(v["weyl_order"], 4);
    assert_eq!(v["components"], 2);
    assert_eq!(v["pi_pi"], "4");
    assert_eq!(v["pi_polynomial"], "x1^2 - x2^2");

    let v = json(&hcint(&["constants", "--group", "Sp", "--rank", "2"]));
    assert_eq!(v["pi_pi"], "192");

    // C_6 is far beyond 64 bits: 2^12 · 6! · 3! 5! 7! 9! 11!.
    let v = json(&hcint(&["constants", "--group", "USp", "--rank", "6"]));
    assert_eq!(v["pi_pi"], "155015179735771643904000000");
}

#[test]
fn verify_unitary_two_passes() {
    let out = hcint(&[
        "verify",
        "--group",
        "U",
        "--rank",
        "2",
        "--a",
        "0,1",
        "--b",
        "0,1",
        "--samples",
        "1000000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let z = (f(&v, "closed_form") - f(&v, "mc_mean")).abs() / f(&v, "mc_stderr");
    assert!((f(&v, "z_score") - z).abs() < 1e-12 * z.max(1.0));
    assert_eq!(v["seed"], 7);
    assert_eq!(v["n_samples"], 1_000_000);
}

#[test]
fn verify_full_orthogonal_group_against_cosh_determinant() {
    let args = [
        "--group", "O", "--rank", "2", "--a", "0.3,0.8", "--b", "0.5,-0.4",
    ];
    let det = json(&hcint(
        &[&["eval"][..], &args, &["--method", "det"]].concat(),
    ));
    let out = hcint(
        &[
            &["verify"][..],
            &args,
            &["--samples", "200000", "--method", "det"],
        ]
        .concat(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(f(&json(&out), "closed_form"), f(&det, "closed_form"));
}

#[test]
fn verify_exits_one_when_threshold_is_exceeded() {
    let out = hcint(&[
        "verify",
        "--group",
        "U",
        "--rank",
        "2",
        "--a",
        "0,1",
        "--b",
        "0,1",
        "--samples",
        "1000",
        "--z-max",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(f(&json(&out), "z_score") > 0.0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "verify",
        "--group",
        "SO",
        "--odd",
        "--rank",
        "2",
        "--a",
        "0.3,0.7",
        "--b",
        "0.2,0.5",
        "--samples",
        "20000",
        "--seed",
        "42",
        "--shards",
        "3",
        "--no-timing",
    ];
    let first = hcint(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, hcint(&args).stdout);
    assert_eq!(json(&first)["elapsed_ms"], 0);
}

#[test]
fn spin_is_evaluated_on_the_orthogonal_group() {
    let spin = json(&hcint(&[
        "eval",
        "--group",
        "Spin",
        "--rank",
        "3",
        "--a",
        "0.1,0.4,0.9",
        "--b",
        "0.3,0.5,0.6",
    ]));
    let so = json(&hcint(&[
        "eval",
        "--group",
        "SO",
        "--rank",
        "3",
        "--a",
        "0.1,0.4,0.9",
        "--b",
        "0.3,0.5,0.6",
    ]));
    assert_eq!(spin["group"], "Spin(6)");
    assert_eq!(spin["closed_form"], so["closed_form"]);
    assert!(spin["method"].as_str().unwrap().contains("SO(6)"));
}

#[test]
fn weyl_sum_rank_cap_comes_from_the_environment() {
    let args = [
        "eval", "--group", "U", "--rank", "3", "--a", "0,1,2", "--b", "0,1,2",
    ];
    let capped = Command::new(env!("CARGO_BIN_EXE_hcint"))
        .args(args)
        .env("HC_MAX_RANK", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("cap 2"));
    let bad = Command::new(env!("CARGO_BIN_EXE_hcint"))
        .args(args)
        .env("HC_MAX_RANK", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(hcint(&args).status.code(), Some(0));
    // The determinant route ignores the cap.
    let det = Command::new(env!("CARGO_BIN_EXE_hcint"))
        .args(args)
        .args(["--method", "det"])
        .env("HC_MAX_RANK", "2")
        .output()
        .unwrap();
    assert_eq!(det.status.code(), Some(0));
}
