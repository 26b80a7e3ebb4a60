use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qldpc_core::alist::write_alist;
use qldpc_core::constructions::{steane_code, toric_code};
use qldpc_core::gf2::in_row_space;
use qldpc_core::montecarlo::{run_trials, DecoderKind, RunConfig};
use qldpc_core::{BitMatrix, BitVector};
use tempfile::TempDir;

fn qldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn support(text: &str, n: usize) -> BitVector {
    BitVector::from_support(n, text.lines().map(|l| l.parse::<usize>().unwrap()))
}

#[test]
fn info_reports_parameters() {
    let o = qldpc(&["info", "--code", "toric:2,1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["n=18", "r_X=9", "r_Z=9", "k=2", "max_check_weight_Z=4", "max_qubit_degree_Z=2"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in\n{out}");
    }
    let out = stdout(&qldpc(&["info", "--code", "steane"]));
    assert!(out.contains("n=7\n") && out.contains("k=1\n"));
}

#[test]
fn commutation_violation_is_reported_with_coordinates() {
    let dir = TempDir::new().unwrap();
    let hx = write(&dir, "hx.alist", &write_alist(&BitMatrix::from_strs(&["110", "011"])));
    let hz = write(&dir, "hz.alist", &write_alist(&BitMatrix::from_strs(&["111", "100"])));
    let o = qldpc(&["info", "--hx", &hx, "--hz", &hz]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("H_X row 0 anticommutes with H_Z row 1"), "{}", stderr(&o));
}

#[test]
fn malformed_alist_is_an_error() {
    let dir = TempDir::new().unwrap();
    let hx = write(&dir, "hx.alist", "3 1\n1 x\n");
    let hz = write(&dir, "hz.alist", &write_alist(&BitMatrix::from_strs(&["111"])));
    let o = qldpc(&["info", "--hx", &hx, "--hz", &hz]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn export_round_trips_through_alist() {
    let dir = TempDir::new().unwrap();
    let hx = dir.path().join("hx.alist");
    let hz = dir.path().join("hz.alist");
    let (hx, hz) = (hx.to_str().unwrap(), hz.to_str().unwrap());
    let o = qldpc(&["export", "--code", "toric:3,1,2", "--hx-out", hx, "--hz-out", hz]);
    assert_eq!(o.status.code(), Some(0));
    let from_files = stdout(&qldpc(&["info", "--hx", hx, "--hz", hz]));
    let builtin = stdout(&qldpc(&["info", "--code", "toric:3,1,2"]));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("code=")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&from_files), strip(&builtin));
    assert!(from_files.contains("k=3\n"));
}

#[test]
fn zero_syndrome_gives_empty_correction() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.txt", "000\n");
    let out = dir.path().join("c.txt");
    let o = qldpc(&["decode", "--code", "steane", "--syndrome", &s, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(out).unwrap(), "");
}

#[test]
fn steane_decoding_matches_qubit_seven_up_to_stabilizer() {
    let dir = TempDir::new().unwrap();
    let code = steane_code();
    let e7 = BitVector::unit(7, 6);
    for (file, text) in [("bits.txt", "111\n"), ("idx.txt", "0\n1\n2\n")] {
        let s = write(&dir, file, text);
        let o = qldpc(&["decode", "--code", "steane", "--syndrome", &s]);
        assert_eq!(o.status.code(), Some(0));
        let c = support(&stdout(&o), 7);
        assert_eq!(code.syndrome(&c).unwrap(), BitVector::ones(3));
        assert!(in_row_space(code.h_x(), &(&c ^ &e7)).unwrap());
    }
    let s = write(&dir, "s.txt", "111");
    let o = qldpc(&["decode", "--code", "steane", "--syndrome", &s, "--decoder", "bp", "-p", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn flagged_bp_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let tc = toric_code(2, 1, 4).unwrap();
    let sigma = tc.code().syndrome(&BitVector::unit(32, 5)).unwrap();
    let s = write(&dir, "s.txt", &format!("{sigma}\n"));
    let o = qldpc(&["decode", "--code", "toric:2,1,4", "--syndrome", &s, "--decoder", "bp", "-p", "0.01"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = qldpc(&["decode", "--code", "toric:2,1,4", "--syndrome", &s, "--decoder", "bp+uf", "-p", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let c = support(&stdout(&o), 32);
    assert_eq!(tc.code().syndrome(&c).unwrap(), sigma);
}

#[test]
fn infeasible_syndrome_exits_with_three() {
    let dir = TempDir::new().unwrap();
    // Both checks act on the same qubits, so only 00 and 11 are realizable.
    let hx = write(&dir, "hx.alist", &write_alist(&BitMatrix::zeros(0, 2)));
    let hz = write(&dir, "hz.alist", &write_alist(&BitMatrix::from_strs(&["11", "11"])));
    let s = write(&dir, "s.txt", "10\n");
    let out = dir.path().join("c.txt");
    let o = qldpc(&["decode", "--hx", &hx, "--hz", &hz, "--syndrome", &s, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_with_64() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.txt", "1111\n");
    assert_eq!(qldpc(&["decode", "--code", "steane", "--syndrome", &s]).status.code(), Some(64));
    let s = write(&dir, "s.txt", "111\n");
    assert_eq!(qldpc(&["decode", "--code", "steane", "--syndrome", &s, "--decoder", "bp"]).status.code(), Some(64));
    assert_eq!(qldpc(&["decode", "--code", "steane", "--syndrome", &s, "--decoder", "xx"]).status.code(), Some(64));
    assert_eq!(qldpc(&["info", "--code", "cube"]).status.code(), Some(64));
    assert_eq!(qldpc(&["info"]).status.code(), Some(64));
    assert_eq!(qldpc(&["sim", "--code", "steane", "-p", "0.7", "--decoder", "bp"]).status.code(), Some(64));
    assert_eq!(qldpc(&["--help"]).status.code(), Some(0));
}

fn library_rows(p: f64, decoders: &[DecoderKind], trials: u64, seed: u64) -> Vec<qldpc_core::montecarlo::SimResult> {
    let tc = toric_code(2, 1, 5).unwrap();
    decoders
        .iter()
        .map(|&decoder| {
            run_trials(
                tc.code(),
                &RunConfig {
                    decoder,
                    p,
                    trials,
                    seed,
                    threads: None,
                },
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn sim_matches_library_byte_for_byte() {
    let rows = library_rows(0.01, &[DecoderKind::UnionFind], 100_000, 11);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(&rows[0]).unwrap();
    let expected_csv = String::from_utf8(w.into_inner().unwrap()).unwrap();
    let args = ["sim", "--code", "toric:2,1,5", "-p", "0.01", "--trials", "100000", "--seed", "11"];
    let o = qldpc(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), expected_csv);

    let o = qldpc(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(stdout(&o), serde_json::to_string_pretty(&rows).unwrap() + "\n");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed[0]["per_logical_rate"].as_f64(), rows[0].per_logical_rate);
}

#[test]
fn sim_rows_per_decoder_and_thread_independence() {
    let base = ["sim", "--code", "toric:2,1,5", "-p", "0,0.03", "--decoder", "uf,bp", "--trials", "3000", "--seed", "5"];
    let one = stdout(&qldpc(&[&base[..], &["--threads", "1"]].concat()));
    let four = stdout(&qldpc(&[&base[..], &["--threads", "4"]].concat()));
    assert_eq!(one, four);
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(lines[0], "code,decoder,p,trials,success,logical_fail,flagged_fail,k,per_logical_rate,seed");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "toric-2-1-5,uf,0.0,3000,3000,0,0,2,0.0,5");
    assert_eq!(lines[2], "toric-2-1-5,bp,0.0,3000,3000,0,0,2,0.0,5");
    assert!(lines[3].starts_with("toric-2-1-5,uf,0.03,3000,"));
    assert!(lines[4].starts_with("toric-2-1-5,bp,0.03,3000,"));
}

#[test]
fn radius_scan_and_budget_refusal() {
    let o = qldpc(&["radius", "--code", "toric:2,1,5", "--wmax", "3"]);
    assert_eq!(
        stdout(&o),
        "weight,errors,undetectable,max_rho_cov,max_rho_bar_cov\n1,50,0,1,1\n2,1225,0,1,1\n3,19600,0,3,3\n"
    );
    let o = qldpc(&["radius", "--code", "steane", "--wmax", "1"]);
    assert_eq!(stdout(&o), "weight,errors,undetectable,max_rho_cov,max_rho_bar_cov\n1,7,0,1,1\n");

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.csv");
    let o = qldpc(&["radius", "--code", "toric:2,1,5", "--wmax", "3", "--budget", "1000", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("needs 20876 candidates, budget is 1000"), "{}", stderr(&o));
    assert!(!Path::new(&out).exists());
}

#[test]
fn soundness_table() {
    let o = qldpc(&["soundness", "--code", "toric:2,1,5", "--wmax", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["weight"], 1);
    assert_eq!(v[0]["reduced_errors"], 50);
    assert_eq!(v[0]["min_ratio"], 2.0);
    assert_eq!(v[1]["min_ratio"], 1.0);
}
