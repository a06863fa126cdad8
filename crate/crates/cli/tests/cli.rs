use std::path::PathBuf;
use std::process::{Command, Output};

fn hyperc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn hyperc_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperc"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn output_value(report: &serde_json::Value, name: &str) -> f64 {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|q| q["name"] == name)
        .unwrap_or_else(|| panic!("no output {name}"))["value"]
        .as_f64()
        .unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn compute_reports_constant_and_exact_note() {
    let o = hyperc(&["compute", "--p", "2", "--q", "4", "--json"]);
    assert_eq!(code(&o), 0);
    let rep = json(&o);
    assert!((output_value(&rep, "r") - 0.5660188).abs() < 1e-7);
    assert_eq!(rep["inputs"]["p"], "2");
    for q in rep["outputs"].as_array().unwrap() {
        assert!(q["accuracy"].is_number());
    }

    let o = hyperc(&["compute", "--p", "4/3", "--q", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("x = 2^(-3/2), y = 2^(-1/2)"), "{text}");
}

#[test]
fn compute_rejects_bad_pairs() {
    assert_eq!(code(&hyperc(&["compute", "--p", "3", "--q", "1.5"])), 2);
    assert_eq!(code(&hyperc(&["compute", "--p", "abc", "--q", "4"])), 2);
    assert_eq!(code(&hyperc(&["compute", "--p", "2"])), 2);
}

#[test]
fn sigma_examples() {
    let o = hyperc(&["sigma", "--lambda", "1/3", "--p", "2", "--q", "4", "--json"]);
    assert_eq!(code(&o), 0);
    assert!((output_value(&json(&o), "sigma") - 0.5660188).abs() < 1e-7);

    let o = hyperc(&["sigma", "--lambda", "1/2", "--p", "2", "--q", "4", "--json"]);
    let rep = json(&o);
    assert!((output_value(&rep, "sigma") - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert_eq!(rep["method"], "closed_form_z2");

    let o = hyperc(&[
        "sigma", "--lambda", "0.25", "--p", "1.5", "--q", "3", "--json",
    ]);
    let rep = json(&o);
    assert_eq!(rep["method"], "closed_form_sinh");
    assert!(output_value(&rep, "sigma_sinh").is_finite());

    assert_eq!(
        code(&hyperc(&[
            "sigma", "--lambda", "0.7", "--p", "2", "--q", "4"
        ])),
        2
    );
}

#[test]
fn verify_examples() {
    for args in [
        vec!["verify", "--p", "2", "--q", "4", "--json"],
        vec!["verify", "--p", "3", "--q", "6", "--json"],
    ] {
        let o = hyperc(&args);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        let rep = json(&o);
        assert!(output_value(&rep, "gap") < 1e-4);
        assert_eq!(rep["passed"], true);
    }
    let o = hyperc(&[
        "verify", "--p", "2", "--q", "4", "--lambda", "1/3", "--json",
    ]);
    assert_eq!(code(&o), 0);
    assert!(output_value(&json(&o), "identity_gap") < 2e-4);
}

#[test]
fn certify_two_four_writes_certificate() {
    let path = temp("cert24.json");
    let o = hyperc(&[
        "certify",
        "--p",
        "2",
        "--q",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("factor 7*r^4 + 4*r^2 - 2 detected"));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["variable"], "r");
    assert!(cert["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.is_string()));
    assert!(cert["abs_value"].as_f64().unwrap() <= cert["bound"].as_f64().unwrap());
    assert!((cert["evaluated_at"].as_f64().unwrap() - 0.5660188).abs() < 1e-7);
}

#[test]
fn certify_three_six_checks_reference_polynomial() {
    let o = hyperc(&["certify", "--p", "3", "--q", "6", "--out", "-"]);
    assert_eq!(code(&o), 0);
    let cert = json(&o);
    assert_eq!(cert["variable"], "r");
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("exact factor yes, root test pass"), "{err}");
}

#[test]
fn certify_needs_rational_form() {
    assert_eq!(code(&hyperc(&["certify", "--p", "2.5", "--q", "4"])), 2);
}

#[test]
fn certify_capacity_exit() {
    let o = hyperc(&["certify", "--p", "13/4", "--q", "29/3", "--out", "-"]);
    assert_eq!(code(&o), 5);
}

#[test]
fn sweep_curves_sym_shape() {
    let o = hyperc(&["sweep", "curves-H", "--alphas", "9", "--t-grid", "512"]);
    assert_eq!(code(&o), 0);
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["alpha", "t", "H1", "H2"]);
    assert_eq!(rows.len(), 9 * 512);
    for r in &rows {
        assert!(r.iter().all(|v| v.is_finite()));
    }
}

#[test]
fn sweep_schemas() {
    let cases: [(&[&str], &[&str]); 8] = [
        (&["curves-h", "--x-grid", "8"], &["p", "x", "u", "v"]),
        (&["curves-H", "--t-grid", "8"], &["alpha", "t", "H1", "H2"]),
        (&["blowup-b", "--t-grid", "8"], &["alpha", "t", "U", "V"]),
        (&["blowup-B", "--t-grid", "8"], &["alpha", "t", "U", "V"]),
        (
            &["curves-Hlambda", "--t-grid", "8"],
            &["lambda", "alpha", "t", "U", "V"],
        ),
        (
            &["sigma-heatmap", "--lambda-grid", "4", "--pairs", "2"],
            &["lambda", "p", "q", "sigma"],
        ),
        (
            &["nonmult", "--s-grid", "4"],
            &["p", "s", "q", "r_pq", "r_ps", "r_sq", "gap"],
        ),
        (&["defect", "--rho-grid", "8"], &["p", "q", "r", "rho", "G"]),
    ];
    for (args, header) in cases {
        let mut full = vec!["sweep"];
        full.extend_from_slice(args);
        let o = hyperc(&full);
        assert_eq!(code(&o), 0, "{args:?}");
        let text = stdout(&o);
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().next().unwrap(), header.join(","));

        full.extend(["--format", "json"]);
        let o = hyperc(&full);
        let arr = json(&o);
        let first = arr.as_array().unwrap()[0].as_object().unwrap();
        let keys: Vec<&str> = first.keys().map(String::as_str).collect();
        assert_eq!(keys, header, "{args:?}");
    }
}

#[test]
fn sweep_nonmult_pivot() {
    let o = hyperc(&[
        "sweep", "nonmult", "--p", "3/2", "--q", "3", "--s-grid", "64",
    ]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    let at_two = rows.iter().find(|r| r[1] == 2.0).expect("s = 2 sampled");
    assert!(at_two[6].abs() < 1e-8, "{at_two:?}");

    // Away from the conjugate pair the pivot gap does not close.
    let o = hyperc(&[
        "sweep", "nonmult", "--p", "1.5", "--s-grid", "64", "--q", "4",
    ]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 64);
    let at_two = rows.iter().find(|r| r[1] == 2.0).expect("s = 2 sampled");
    assert!(at_two[6] > 1e-6);
}

#[test]
fn sweep_sigma_heatmap_is_monotone() {
    let o = hyperc(&[
        "sweep",
        "sigma-heatmap",
        "--lambda-grid",
        "32",
        "--pairs",
        "8",
    ]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 256);
    for block in rows.chunks(32) {
        assert!(block.windows(2).all(|w| w[1][3] >= w[0][3]));
    }
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("0 decreases"));
}

#[test]
fn sweep_rejects_bad_config() {
    assert_eq!(code(&hyperc(&["sweep", "curves-H", "--t-grid", "1"])), 2);
    assert_eq!(code(&hyperc(&["sweep", "blowup-b", "--t-max", "1"])), 2);
    assert_eq!(code(&hyperc(&["sweep", "no-such-kind"])), 2);
}

#[test]
fn file_output_and_io_errors() {
    let path = temp("h.csv");
    let o = hyperc(&[
        "sweep",
        "curves-h",
        "--x-grid",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 1 + 5 * 5);
    let leftovers = std::fs::read_dir(path.parent().unwrap())
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .contains(".tmp")
        })
        .count();
    assert_eq!(leftovers, 0);

    let o = hyperc(&["sweep", "curves-h", "--out", "/nonexistent-dir/x/h.csv"]);
    assert_eq!(code(&o), 6);
}

#[test]
fn runs_are_deterministic() {
    let a = hyperc(&[
        "sweep",
        "sigma-heatmap",
        "--lambda-grid",
        "6",
        "--pairs",
        "3",
        "--seed",
        "9",
    ]);
    let b = hyperc_env(
        &[
            "sweep",
            "sigma-heatmap",
            "--lambda-grid",
            "6",
            "--pairs",
            "3",
            "--seed",
            "9",
        ],
        "HYPERC_THREADS",
        "1",
    );
    assert_eq!(a.stdout, b.stdout);

    let a = hyperc(&["identities", "--sample-size", "6", "--seed", "3"]);
    let b = hyperc(&["identities", "--sample-size", "6", "--seed", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn identities_empty_run() {
    let o = hyperc(&["identities", "--sample-size", "0", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["rows"].as_array().unwrap().is_empty());
}

#[test]
fn bad_thread_count() {
    let o = hyperc_env(
        &["compute", "--p", "2", "--q", "4"],
        "HYPERC_THREADS",
        "zero",
    );
    assert_eq!(code(&o), 2);
}
