use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightframe")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coherence_text_output() {
    let o = run(&["coherence", "--frame", "tetra", "--state", "qutrit136"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.750000000000\n");
}

#[test]
fn coherence_json_report() {
    let o = run(&["coherence", "--frame", "polygon:4", "--state", "rho1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["prefactor"], 0.5);
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "--frame", "tetra"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.json");
    std::fs::write(
        &dup,
        r#"{"dim":2,"vectors":[[{"re":1,"im":0},{"re":0,"im":0}],[{"re":1,"im":0},{"re":0,"im":0}]]}"#,
    )
    .unwrap();
    let o = run(&["check", "--frame", dup.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tight"], false);
    assert!((v["residual"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-15);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"vectors\": [").unwrap();
    assert_eq!(run(&["check", "--frame", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check", "--frame", "hexagon"]).status.code(), Some(2));
}

#[test]
fn usage_and_validation_errors_exit_2() {
    assert_eq!(run(&["coherence", "--frame", "tetra"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "--frame", "tetra", "--state", "rho0"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "--frame", "triangle", "--state", "qubit:0.5,0.6,0"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--family", "polygon-n", "--state", "rho1", "--n-min", "2"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--family", "interpolate-t", "--state", "rho1"]).status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let args = ["sweep", "--family", "polygon-n", "--state", "rho1", "--out", path.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,coherence");
    assert_eq!(lines.len(), 49);
    assert_eq!(lines[2], "4,0.5");
}

#[test]
fn interpolate_endpoints() {
    let o = run(&["interpolate", "--from", "canonical:3", "--to", "fourier:3", "--state", "qutrit136", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(text.lines().next(), Some("t,coherence"));
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], vec![0.0, 0.0]);
    assert!((rows[2][1] - 0.5 / 3f64.sqrt()).abs() < 1e-11);

    let same = run(&["sweep", "--family", "interpolate-t", "--from", "canonical:3", "--to", "fourier:3", "--state", "qutrit136", "--steps", "3"]);
    assert_eq!(stdout(&same), text);
}

#[test]
fn surface_sweep() {
    let o = run(&["sweep", "--family", "surface-ab", "--theta", "1.0471975511965976", "--steps", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("a,b,coherence"));
    assert_eq!(text.lines().count(), 1 + 121);
}

#[test]
fn naimark_reports() {
    let o = run(&["naimark", "--frame", "triangle", "--state", "rho3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("extended dimension: 3"));
    assert!(text.contains("identities hold"));

    let o = run(&["naimark", "--frame", "canonical:2", "--state", "rho0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["extended_dim"], 2);
    assert_eq!(v["frame_coherence"], 0.0);

    assert_eq!(run(&["naimark", "--frame", "canonical:2+canonical:2", "--state", "rho0"]).status.code(), Some(0));
    let loose = run(&["naimark", "--frame", "canonical:2+rotated:0.3+canonical:3", "--state", "rho0"]);
    assert_eq!(loose.status.code(), Some(2));
}
