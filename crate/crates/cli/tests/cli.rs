use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const E1: &str = r#"{"A": [[1,1,1,1],[0,1,0,1],[0,0,1,1]], "alpha": ["1/5","1/3","1/7"]}"#;
const E1_LOG: &str = r#"{"A": [[1,1,1,1],[0,1,0,1],[0,0,1,1]], "alpha": ["1","1/2","1/2"], "heights": ["0","1","1","0"]}"#;
const E1_RES: &str = r#"{"A": [[1,1,1,1],[0,1,0,1],[0,0,1,1]], "alpha": ["1/2","0","1/2"]}"#;
const E2: &str = r#"{"A": [[1,1,1,1],[0,1,2,3]], "alpha": ["1/3","2/5"]}"#;
const E3: &str = r#"{"A": [[1,1,1,1],[0,1,2,0],[0,0,0,1]], "alpha": ["1/3","1/5","2/7"]}"#;

fn gkz(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gkz"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("GKZ_EFFORT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn machine(verb: &str, job: &str, extra: &[&str]) -> (Value, String) {
    let mut args = vec![verb, "--format", "machine"];
    args.extend_from_slice(extra);
    let out = gkz(&args, job, &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        out.status.success(),
        "{verb} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn analyze_reports_volume_and_facets() {
    let (v, _) = machine("analyze", E1, &[]);
    let r = &v["result"];
    assert_eq!(r["volume"], 2);
    assert_eq!(r["rank"], 2);
    assert_eq!(r["facets"].as_array().unwrap().len(), 4);
    assert_eq!(r["nonresonant"], true);
    assert_eq!(r["pyramid_apexes"].as_array().unwrap().len(), 0);
    let (v, _) = machine("analyze", E3, &[]);
    assert_eq!(v["result"]["pyramid_apexes"], serde_json::json!([4]));
}

#[test]
fn resonant_parameter_gets_a_hint() {
    let (v, _) = machine("analyze", E1_RES, &[]);
    let r = &v["result"];
    assert_eq!(r["nonresonant"], false);
    assert!(r["hint"].as_str().unwrap().contains("restrict"));
    assert_eq!(r["witness"]["facet"], "x2");
    let flagged: Vec<&Value> = r["facets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["integral"] == true)
        .collect();
    assert_eq!(flagged.len(), 2);
}

#[test]
fn exit_codes() {
    let malformed = gkz(
        &["analyze"],
        r#"{"A": [[1,1],[0]], "alpha": ["1","2"]}"#,
        &[],
    );
    assert_eq!(malformed.status.code(), Some(2));
    let not_json = gkz(&["analyze"], "A = 1", &[]);
    assert_eq!(not_json.status.code(), Some(2));
    let invalid = gkz(
        &["analyze"],
        r#"{"A": [[1,1],[0,2]], "alpha": ["1","1"]}"#,
        &[],
    );
    assert_eq!(invalid.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("ConfigInvalid"));
    let resonant = gkz(&["contiguity", "--column", "1"], E1_RES, &[]);
    assert_eq!(resonant.status.code(), Some(1));
    let none = gkz(&["restrict"], E1, &[]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn triangulate_with_heights() {
    let (v, _) = machine("triangulate", E2, &["--heights", "0,1,4,9"]);
    let s = v["result"]["simplices"].as_array().unwrap();
    assert_eq!(s.len(), 3);
    assert!(s.iter().all(|x| x["volume"] == 1));
    assert_eq!(v["result"]["volume_matches"], true);
    let (v, _) = machine(
        "triangulate",
        E1,
        &["--heights", "0,1,1,0", "--rho", "0,1,1,0"],
    );
    assert_eq!(v["result"]["rho_consistent"], true);
}

#[test]
fn series_and_logbasis_counts() {
    let (v, _) = machine("series", E2, &[]);
    assert_eq!(v["result"]["count"], 3);
    assert!(v["result"]["series"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["support_holds"] == true));
    let (v, _) = machine("logbasis", E1_LOG, &[]);
    assert_eq!(v["result"]["count"], 2);
    let series = v["result"]["blocks"][0]["series"].as_array().unwrap();
    let with_logs = series
        .iter()
        .filter(|s| {
            s["terms"]
                .as_array()
                .unwrap()
                .iter()
                .any(|t| !t["log_poly"].as_array().unwrap().is_empty())
        })
        .count();
    assert_eq!(with_logs, 1);
    // T-resonant input is refused by `series`
    let out = gkz(&["series"], E1_LOG, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("TResonant"));
}

#[test]
fn evaluation_at_a_point() {
    let job = r#"{"A": [[1,1,1,1],[0,1,0,1],[0,0,1,1]], "alpha": ["1/5","1/3","1/7"],
        "heights": ["0","1","1","0"], "point": ["1","1","1","1/10"], "rho": ["0","1","1","0"]}"#;
    let (v, _) = machine("series", job, &["--truncation", "12"]);
    for s in v["result"]["series"].as_array().unwrap() {
        let e = &s["evaluation"];
        assert!(e["re"].as_f64().unwrap().is_finite());
        assert_eq!(e["convergent"], true);
    }
}

#[test]
fn verify_emitted_reports() {
    for (verb, job) in [
        ("logbasis", E1_LOG),
        ("series", E1),
        ("series", E2),
        ("restrict", E1_RES),
    ] {
        let (_, text) = machine(verb, job, &["--truncation", "5"]);
        let (v, _) = machine("verify", &text, &[]);
        assert_eq!(v["result"]["source"], "supplied");
        assert_eq!(v["result"]["all_zero"], true, "{verb}");
        assert!(!v["result"]["series"].as_array().unwrap().is_empty());
    }
    let (v, _) = machine("verify", E1, &[]);
    assert_eq!(v["result"]["source"], "built");
    assert_eq!(v["result"]["all_zero"], true);
}

#[test]
fn verify_catches_tampering() {
    let (_, text) = machine("series", E1, &["--truncation", "4"]);
    let tampered = text.replacen("\"-2/125\"", "\"-3/125\"", 1);
    assert_ne!(tampered, text);
    let out = gkz(&["verify", "--format", "machine"], &tampered, &[]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["all_zero"], false);
}

#[test]
fn round_trip_and_determinism() {
    for verb in [
        "analyze",
        "triangulate",
        "series",
        "logbasis",
        "verify",
        "contiguity",
        "restrict",
    ] {
        let job = match verb {
            "logbasis" => E1_LOG,
            "restrict" => E1_RES,
            _ => E1,
        };
        let extra: &[&str] = if verb == "contiguity" {
            &["--column", "2"]
        } else {
            &[]
        };
        let (v, first) = machine(verb, job, extra);
        let (_, second) = machine(verb, job, extra);
        assert_eq!(first, second, "{verb} is not deterministic");
        // the report carries its job: feeding it back reproduces it
        let (_, again) = machine(verb, &first, &[]);
        if verb != "verify" {
            assert_eq!(again, first, "{verb} report does not round trip");
        }
        assert_eq!(v["command"], verb);
    }
}

#[test]
fn contiguity_effort_bound() {
    let (v, _) = machine("contiguity", E1, &["--column", "4", "--truncation", "8"]);
    assert_eq!(v["result"]["certified_series"], 2);
    assert_eq!(v["result"]["certified_truncation"], 8);
    let out = gkz(&["contiguity", "--column", "4"], E1, &[("GKZ_EFFORT", "1")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("EffortExceeded"));
    assert!(err.contains("round 1"));
    let bad = gkz(
        &["contiguity", "--column", "4"],
        E1,
        &[("GKZ_EFFORT", "lots")],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn restrict_lifts_a_solution() {
    let (v, _) = machine("restrict", E1_RES, &[]);
    let r = &v["result"];
    assert_eq!(r["points"], serde_json::json!([1, 3]));
    assert_eq!(r["matrix"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(r["restricted_alpha"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(r["annihilated"], true);
    assert_eq!(
        r["solutions"][0]["gamma"],
        serde_json::json!(["0", "0", "1/2", "0"])
    );
}

#[test]
fn human_output() {
    let out = gkz(&["analyze"], E1, &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("volume: 2"));
    assert!(text.contains("x1 - x2"));
    let out = gkz(&["triangulate", "--seed", "3"], E2, &[]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("total volume 3"));
}
