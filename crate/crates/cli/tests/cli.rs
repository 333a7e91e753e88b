use std::path::PathBuf;
use std::process::{Command, Output};

fn hmstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmstab"))
        .args(args)
        .env_remove("HMSTAB_SEED")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hmstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn report(args: &[&str]) -> serde_json::Value {
    let out = hmstab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn nodal_cubic_is_semistable_without_conditions() {
    let points = scratch("node.txt", "[0:0:1]\n");
    let r = report(&[
        "analyze",
        "--poly",
        "X1^2*X2 - X0^3 - X0^2*X2",
        "--nvars",
        "3",
        "--points",
        points.to_str().unwrap(),
    ]);
    assert_eq!(r["version"], "v1");
    assert_eq!(r["final"]["semistability"], "semistable");
    assert_eq!(r["final"]["conditional_on"].as_array().unwrap().len(), 0);
    let part2 = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "part2").unwrap();
    assert_eq!(part2["result"], "semistable");
}

#[test]
fn cusp_certificate_round_trips_through_verify() {
    let r = report(&["analyze", "--poly", "X1^2*X2 - X0^3", "--nvars", "3"]);
    assert_eq!(r["final"]["semistability"], "not-semistable");
    let cert = r["certificates"][0].clone();
    assert_eq!(cert["claim"], "not-semistable");

    let path = scratch("cusp-cert.json", &cert.to_string());
    assert_eq!(hmstab(&["verify", path.to_str().unwrap()]).status.code(), Some(0));

    let mut tampered = cert.clone();
    let flipped: Vec<i64> = tampered["alpha"].as_array().unwrap().iter().map(|a| -a.as_i64().unwrap()).collect();
    tampered["alpha"] = serde_json::json!(flipped);
    let path = scratch("cusp-tampered.json", &tampered.to_string());
    assert_eq!(hmstab(&["verify", path.to_str().unwrap()]).status.code(), Some(1));

    let mut unbalanced = cert.clone();
    unbalanced["alpha"][0] = serde_json::json!(unbalanced["alpha"][0].as_i64().unwrap() + 1);
    let path = scratch("cusp-unbalanced.json", &unbalanced.to_string());
    assert_eq!(hmstab(&["verify", path.to_str().unwrap()]).status.code(), Some(2));

    let whole = scratch("cusp-report.json", &r.to_string());
    assert_eq!(hmstab(&["verify", whole.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn published_cusp_weights_verify() {
    let cert = r#"{"field":"q","nvars":3,"poly":"X1^2*X2 - X0^3","frame":[["1","0","0"],["0","1","0"],["0","0","1"]],"alpha":[-1,-2,3],"degree_value":"-1","claim":"not-semistable"}"#;
    let path = scratch("cusp-fixed.json", cert);
    assert_eq!(hmstab(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(hmstab(&["analyze", "--poly", "X0^2", "--nvars", "3", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(hmstab(&["analyze", "--poly", "X0^2 + X1", "--nvars", "3"]).status.code(), Some(2));
    assert_eq!(hmstab(&["analyze", "--poly", "X5^2", "--nvars", "3"]).status.code(), Some(2));
    assert_eq!(hmstab(&["analyze", "--nvars", "3"]).status.code(), Some(2));
    let missing = hmstab(&["verify", "/nonexistent/cert.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn polynomial_can_come_from_a_file() {
    let path = scratch("fermat.txt", "X0^3 + X1^3 + X2^3\n");
    let arg = format!("@{}", path.display());
    let r = report(&["analyze", "--poly", &arg, "--nvars", "3"]);
    assert_eq!(r["final"]["stability"], "stable");
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let args = ["analyze", "--poly", "X0^2*X1^2 + X2^4", "--nvars", "3", "--seed", "7"];
    let a = hmstab(&args);
    let b = hmstab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_hmstab"))
        .args(&args[..5])
        .env("HMSTAB_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn corpus_filter_runs_a_subset() {
    let out = hmstab(&["corpus", "cubic", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty() && rows.len() < hmstab_cli::corpus::builtin().len());
    assert!(rows.iter().all(|r| r["entry"].as_str().unwrap().contains("cubic") && r["pass"] == true));
}

#[test]
fn corpus_reports_a_wrong_expectation() {
    let body = r#"[
        {"name":"cusp","poly":"X1^2*X2 - X0^3","nvars":3,"field":"q","semistability":"semistable","stability":"not-stable","source":"deliberately wrong"},
        {"name":"fermat","poly":"X0^3 + X1^3 + X2^3","nvars":3,"field":"q","semistability":"semistable","stability":"stable","source":"classical"}
    ]"#;
    let path = scratch("wrong.json", body);
    let out = hmstab(&["corpus", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows[0]["entry"], "cusp");
    assert_eq!(rows[0]["pass"], false);
    assert_eq!(rows[1]["pass"], true);
}
