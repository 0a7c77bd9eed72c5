use std::process::{Command, Output};

use cyclotomic_cli::report::{Status, VerificationRecord};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .output()
        .expect("run cyclo")
}

fn records(output: &Output) -> Vec<VerificationRecord> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn verify_range_passes_and_round_trips() {
    let out = cyclo(&["verify", "--range", "5..12", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let parsed = records(&out);
    let again: String = parsed
        .iter()
        .map(|r| serde_json::to_string(r).unwrap() + "\n")
        .collect();
    assert_eq!(text, again);
    let header = String::from_utf8(out.stderr).unwrap();
    assert!(header.contains("\"det\":1e-8"), "{header}");
    assert!(header.contains("\"series\":1e-6"), "{header}");
    let keys: Vec<(u64, String)> = parsed
        .iter()
        .map(|r| (r.modulus, r.check.clone()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn twice_two_mod_four_is_skipped() {
    let out = cyclo(&["verify", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed = records(&out);
    assert_eq!(parsed.len(), 8);
    for r in parsed {
        assert_eq!(r.status, Status::Skipped);
        assert_eq!(r.details, "m ≡ 2 (mod 4)");
    }
}

#[test]
fn seventeen_reports_singular_branch() {
    let out = cyclo(&["verify", "17", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let ratio = records(&out)
        .into_iter()
        .find(|r| r.check == "ratio")
        .unwrap();
    assert_eq!(ratio.status, Status::Pass);
    assert!(ratio.residual < 1e-8);
    assert!(ratio.details.contains("infinite index"));
}

#[test]
fn perturbed_det_tolerance_fails() {
    let out = cyclo(&["verify", "17", "--json", "--tol-det", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--range", "9..5"][..],
        &["verify", "--range", "a..b"],
        &["verify"],
        &["characters", "2"],
        &["lvalues", "6"],
        &["regulators", "15"],
        &["verify", "7", "--tol-series", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(cyclo(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn characters_table() {
    let out = cyclo(&["characters", "8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let conductors: Vec<u64> = rows
        .iter()
        .map(|r| r["conductor"].as_u64().unwrap())
        .collect();
    assert_eq!(conductors, vec![1, 8, 4, 8]);
    let five = cyclo(&["characters", "5", "--json"]);
    let even = String::from_utf8_lossy(&five.stdout)
        .lines()
        .filter(|l| l.contains("\"even\""))
        .count();
    assert_eq!(even, 2);
}

#[test]
fn lvalues_mod_four_and_five() {
    let out = cyclo(&["lvalues", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 1);
    let l = rows[0]["l_re"].as_f64().unwrap();
    assert!((l - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    let both = cyclo(&["lvalues", "5", "--method", "both", "--csv"]);
    assert_eq!(both.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(&both.stdout[..]);
    let headers = reader.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "disagreement").unwrap();
    for row in reader.records() {
        let d: f64 = row.unwrap()[col].parse().unwrap();
        assert!(d < 1e-6);
    }
}

#[test]
fn regulators_extended_precision() {
    let out = cyclo(&["regulators", "31", "--precision", "30", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let row: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(row["branch"], "infinite-index");
    assert!(row["r_tilde_cyc"].as_f64().unwrap() < 1e-25);
}

#[test]
fn dedekind_selftest_passes() {
    let out = cyclo(&["dedekind-selftest", "--trials", "40", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out).iter().all(|r| r.status == Status::Pass));
}
