// SPDX-License-Identifier: Apache-2.0

//! Exit-code contract and determinism of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cmc-simons"));
    c.env_remove("CMC_SIMONS_TOL");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn clifford_all_cmc_passes() {
    let o = run(bin().arg("verify").arg(fixture("clifford_all_cmc.json")));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["verdict"], "pass");
    for rec in r["records"].as_array().unwrap() {
        assert!(rec["max_residual"].as_f64().unwrap() < 1e-7);
    }
    assert_eq!(r["provenance"]["seed"], 7);
    assert_eq!(r["provenance"]["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn cmc_checks_on_non_cmc_surface_are_a_config_error() {
    let o = run(bin().arg("verify").arg(fixture("perturbed_all_cmc.json")));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not cmc-tagged"));
}

#[test]
fn perturbed_general_suite_reports_residual_failure() {
    // the commuting relations need constant H
    let o = run(bin().arg("verify").arg(fixture("perturbed_all_general.json")));
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["verdict"], "fail");
    let failing: Vec<&str> = r["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["verdict"] == "fail")
        .map(|x| x["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["beta12_sym", "codazzi1", "tau_beta2"]);
    let worst = &r["records"][1]["worst"];
    assert!(worst["u"].is_number() && worst["beta"].is_number());
    assert!(worst["data"]["beta12"].is_number());
}

#[test]
fn tolerance_overrides() {
    let o = run(bin()
        .env("CMC_SIMONS_TOL", "100")
        .arg("verify")
        .arg(fixture("perturbed_all_general.json")));
    assert_eq!(code(&o), 0);
    let o = run(bin()
        .env("CMC_SIMONS_TOL", "abc")
        .arg("verify")
        .arg(fixture("perturbed_all_general.json")));
    assert_eq!(code(&o), 2);

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("clifford_all_cmc.json")).unwrap();
    let text = text.replace("\"seed\": 7", "\"seed\": 7, \"tolerances\": {\"grad_a\": 1e-30}");
    let cfg = dir.path().join("strict.json");
    std::fs::write(&cfg, text).unwrap();
    let o = run(bin().env("CMC_SIMONS_TOL", "1").arg("verify").arg(&cfg));
    assert_eq!(code(&o), 1);
}

#[test]
fn malformed_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("clifford_all_cmc.json")).unwrap();
    for (i, bad) in [
        text.replace("\"schema_version\": 1", "\"schema_version\": 3"),
        text.replace("all-cmc", "nonexistent"),
        text.replace("\"n_u\": 24", "\"n_u\": 4"),
        text.replace("\"seed\"", "\"sede\""),
        "{ not json".to_string(),
    ]
    .into_iter()
    .enumerate()
    {
        let p = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&p, bad).unwrap();
        assert_eq!(code(&run(bin().arg("verify").arg(&p))), 2, "case {i}");
    }
    assert_eq!(code(&run(bin().arg("verify").arg(dir.path().join("missing.json")))), 2);
    assert_eq!(code(&run(bin().arg("nonsense"))), 2);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("r{i}.json"));
        let o = run(bin()
            .arg("verify")
            .arg(fixture("berger_hopf_torus.json"))
            .arg("--out")
            .arg(&p));
        assert_eq!(code(&o), 0);
        outs.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    let a = run(bin().args(["formal", "--count", "50", "--seed", "3"]));
    let b = run(bin().args(["formal", "--count", "50", "--seed", "3"]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn formal_subcommand() {
    let o = run(bin().args(["formal", "--count", "1000", "--seed", "7"]));
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);
    let o = run(bin().args(["formal", "--count", "5", "--mutate"]));
    assert_eq!(code(&o), 1);
    let r = json(&o);
    let f = &r["failures"][0];
    assert!(f["witness"].as_str().unwrap().contains("beta1"));
    assert_ne!(f["residual"], "0");
    let o = run(bin().args(["formal", "--trivial"]));
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(bin().args(["formal", "--count", "0"]))), 2);
}

#[test]
fn simons_subcommand() {
    let o = run(bin().arg("simons").arg(fixture("clifford_all_cmc.json")));
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["simons"]["integral"]["value"].as_f64().unwrap().abs() < 1e-7);
    assert_eq!(r["simons"]["equality"], true);
    assert!(r["space_form"]["value"].as_f64().unwrap().abs() < 1e-7);
    let o = run(bin().arg("simons").arg(fixture("berger_hopf_torus.json")));
    assert_eq!(code(&o), 0);
    assert!(json(&o)["space_form"].is_null());
    assert_eq!(code(&run(bin().arg("simons").arg(fixture("nil_cylinder.json")))), 2);
    assert_eq!(code(&run(bin().arg("simons").arg(fixture("perturbed_all_general.json")))), 2);
}

#[test]
fn bounds_subcommand() {
    let o = run(bin().args(["bounds", "--kappa", "4", "--tau", "0.5", "--H", "0", "--C", "0"]));
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let row = rdr.records().next().unwrap().unwrap();
    assert_eq!(&row[4], "12.25");
    assert_eq!(&row[5], "-3");
    assert_eq!(&row[6], "0.5");
    let o = run(bin().args(["bounds", "--kappa", "4", "--tau", "0", "--H", "0", "--C", "0"]));
    assert_eq!(code(&o), 2);
    let o = run(bin().args(["bounds", "--kappa", "4", "--tau", "0.5", "--H", "0", "--C", "-1.5"]));
    assert_eq!(code(&o), 2);
}

#[test]
fn sweep_subcommand() {
    let o = run(bin().arg("sweep").arg(fixture("sweep_corridor.json")));
    assert_eq!(code(&o), 0);
    let mut rdr = csv::Reader::from_reader(&o.stdout[..]);
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[7], "corridor_lo");
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| &r[9] == "corridor" && &r[10] == "0"));

    let o = run(bin().arg("sweep").arg(fixture("sweep_open.json")));
    assert_eq!(code(&o), 0);
    let mut rdr = csv::Reader::from_reader(&o.stdout[..]);
    for r in rdr.records() {
        let r = r.unwrap();
        assert_eq!(&r[9], "open regime");
        assert!(r[7].is_empty() && r[10].is_empty());
    }

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    let text = std::fs::read_to_string(fixture("sweep_corridor.json"))
        .unwrap()
        .replace("\"steps\": 41", "\"steps\": 0");
    std::fs::write(&p, text).unwrap();
    assert_eq!(code(&run(bin().arg("sweep").arg(&p))), 2);
}
