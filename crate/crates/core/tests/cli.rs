use std::path::Path;
use std::process::{Command, Output};

use charzak::cli::{OutputRecord, Payload};
use charzak::sequences::SeqSpec;
use charzak::transforms::{dft_naive, fzt_direct};

fn charzak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charzak"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    charzak(args).status.code().expect("exited")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sequence(rec: OutputRecord) -> charzak::ComplexSeq {
    match rec.payload {
        Payload::Sequence(s) => s,
        Payload::Grid(_) => panic!("expected a sequence"),
    }
}

#[test]
fn gen_then_dft_is_bitwise_the_in_process_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, ext) in [("golomb:3,5", "csv"), ("jacobi:105", "json"), ("golomb-prime:11", "csv")] {
        let seq_path = dir.path().join(format!("seq.{ext}"));
        let dft_path = dir.path().join(format!("dft.{ext}"));
        assert_eq!(code(&["gen", spec, "--out", path_str(&seq_path)]), 0);
        assert_eq!(
            code(&["dft", "--input", path_str(&seq_path), "--method", "naive", "--out", path_str(&dft_path)]),
            0
        );
        let from_file = sequence(OutputRecord::read(&dft_path).unwrap());
        let x = spec.parse::<SeqSpec>().unwrap().generate().unwrap();
        let in_process = dft_naive(&x);
        for (a, b) in from_file.iter().zip(in_process.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits(), "{spec}");
            assert_eq!(a.im.to_bits(), b.im.to_bits(), "{spec}");
        }
        assert_eq!(sequence(OutputRecord::read(&seq_path).unwrap()), x);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        assert_eq!(code(&["dft", "jacobi:105", "--method", "gtpf", "--out", path_str(out)]), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_outputs() {
    let out = charzak(&["gen", "golomb:3,5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# kind=golomb,n=15,params=3;5,transform=sequence,convention=dft-sign:+"));
    let y = sequence(OutputRecord::parse(&text).unwrap());
    assert_eq!(y.len(), 15);
    assert!(y.iter().all(|v| (v.norm() - 1.0).abs() < 1e-15));

    let out = charzak(&["gen", "jacobi:15", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"convention\": \"dft-sign:+\""));
    let x = sequence(OutputRecord::parse(&text).unwrap());
    assert_eq!(x.iter().filter(|v| v.norm() > 0.0).count(), 8);
}

#[test]
fn dft_closed_matches_naive_for_character() {
    let dir = tempfile::tempdir().unwrap();
    let closed = dir.path().join("closed.csv");
    let naive = dir.path().join("naive.csv");
    let spec = "character:15:l=1,1";
    assert_eq!(code(&["dft", spec, "--method", "closed", "--out", path_str(&closed)]), 0);
    assert_eq!(code(&["dft", spec, "--method", "naive", "--out", path_str(&naive)]), 0);
    let a = sequence(OutputRecord::read(&closed).unwrap());
    let b = sequence(OutputRecord::read(&naive).unwrap());
    assert!(a.max_abs_diff(&b).unwrap() < 1e-9);
}

#[test]
fn fzt_direct_and_closed_agree() {
    let dir = tempfile::tempdir().unwrap();
    let mut grids = Vec::new();
    for method in ["direct", "closed"] {
        let path = dir.path().join(format!("{method}.json"));
        assert_eq!(
            code(&["fzt", "modified-jacobi:3,5", "--l", "5", "--method", method, "--out", path_str(&path)]),
            0
        );
        let rec = OutputRecord::read(&path).unwrap();
        assert_eq!((rec.meta.rows, rec.meta.cols), (Some(5), Some(3)));
        let Payload::Grid(g) = rec.payload else { panic!() };
        grids.push(g);
    }
    assert!(grids[0].max_abs_diff(&grids[1]).unwrap() < 1e-9 * 15.0);
    let x = "modified-jacobi:3,5".parse::<SeqSpec>().unwrap().generate().unwrap();
    assert_eq!(grids[0], fzt_direct(&x, 5).unwrap());
}

#[test]
fn exit_code_contract() {
    assert_eq!(code(&["gen", "golomb:4,6"]), 3);
    assert_eq!(code(&["gen", "golomb:3,x"]), 2);
    assert_eq!(code(&["gen", "nonsense"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["fzt", "golomb:3,5", "--l", "7"]), 3);
    assert_eq!(code(&["fzt", "golomb-prime:7", "--l", "7", "--method", "closed"]), 4);
    assert_eq!(code(&["dft", "character:9:l=3", "--method", "closed"]), 4);
    assert_eq!(code(&["dft", "--input", "/nonexistent/file.csv"]), 3);
    assert_eq!(code(&["verify", "--suite", "qrl", "--max-n", "99"]), 0);
}

#[test]
fn parse_error_names_the_token() {
    let out = charzak(&["gen", "golomb:3,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`x`"));
}

#[test]
fn malformed_input_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "index,re,im\n0,1,0\n").unwrap();
    assert_eq!(code(&["dft", "--input", path_str(&path)]), 2);
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = charzak(&["verify", "--suite", "sequences", "--max-n", "35", "--report", path_str(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 failed: PASS"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["suite"], "sequences");
    assert!(json["checks"].as_array().unwrap().len() > 10);
}
