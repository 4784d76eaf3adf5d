use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use lelong::cli::{run_with_capacity, EXIT_DATA, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use lelong::report::parse_report;
use lelong::{parse_instance, serialize_instance};
use lelong_core::coneopt::DEFAULT_RAY_LIMIT;
use lelong_core::invariants::report;
use lelong_core::{ade_graph, AdeFamily, Divisor, Rat};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_file(name: &str) -> String {
    corpus().join(name).to_string_lossy().into_owned()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_in(args: &[&str], stdin: &str, capacity: usize) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lelong").chain(args.iter().copied());
    let code = run_with_capacity(argv, capacity, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Outcome {
    run_in(args, "", DEFAULT_RAY_LIMIT)
}

fn ranges() -> Vec<(AdeFamily, usize)> {
    (1..=12)
        .map(|k| (AdeFamily::A, k))
        .chain((4..=12).map(|k| (AdeFamily::D, k)))
        .chain((6..=8).map(|k| (AdeFamily::E, k)))
        .collect()
}

#[test]
fn ade_pipes_into_validate() {
    for (f, k) in ranges() {
        let family = f.to_string();
        let k = k.to_string();
        let ade = run(&["ade", &family, &k]);
        assert_eq!(ade.code, EXIT_OK);
        let v = run_in(&["validate", "-"], &ade.stdout, DEFAULT_RAY_LIMIT);
        assert_eq!(
            (v.code, v.stdout.as_str()),
            (EXIT_OK, "valid\n"),
            "{family}{k}"
        );
    }
    assert_eq!(run(&["ade", "D", "3"]).code, EXIT_USAGE);
    assert_eq!(run(&["ade", "E", "9"]).code, EXIT_USAGE);
    assert_eq!(run(&["ade", "F", "2"]).code, EXIT_USAGE);
}

#[test]
fn ade_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e7.json");
    let path = path.to_str().unwrap();
    let o = run(&["ade", "E", "7", "-o", path]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, ""));
    let g = parse_instance(&fs::read(path).unwrap()).unwrap();
    assert_eq!(g, ade_graph(AdeFamily::E, 7).unwrap());
}

#[test]
fn corpus_files_are_canonical_and_valid() {
    let mut names: Vec<String> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names.len(), 23);
    for name in names {
        let bytes = fs::read(corpus().join(&name)).unwrap();
        let g = parse_instance(&bytes).unwrap();
        assert_eq!(serialize_instance(&g).as_bytes(), &bytes[..], "{name}");
        assert!(g.validate().is_valid(), "{name}");
    }
}

#[test]
fn sharp_example_from_pipe() {
    let a3 = run(&["ade", "A", "3"]).stdout;
    let o = run_in(&["sharp", "-", "--format", "json"], &a3, DEFAULT_RAY_LIMIT);
    assert_eq!(o.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(o.stdout.trim_end()).unwrap();
    assert_eq!(doc["c_sharp"], "2");
    assert_eq!(doc["extremal"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(
        doc["rays"],
        serde_json::json!([["1", "2", "1"], ["1", "2", "3"], ["3", "2", "1"]])
    );
    assert_eq!(o.stdout.lines().count(), 1);

    let text = run_in(&["sharp", "-"], &a3, DEFAULT_RAY_LIMIT).stdout;
    assert!(text.starts_with("c_sharp = 2 (≈2.00000)\n"));
    assert!(!text.contains("equality case"));
}

#[test]
fn d6_sharp_notes_equality_case() {
    let o = run(&["sharp", &corpus_file("d6.json")]);
    assert!(o.stdout.starts_with("c_sharp = 1"));
    assert!(o.stdout.contains("equality case: ν = mult·s"));
}

#[test]
fn invariants_at_fundamental_divisor() {
    let a3 = corpus_file("a3.json");
    let o = run(&["invariants", &a3, "--divisor", "1,1,1", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK);
    let r = parse_report(o.stdout.trim_end()).unwrap();
    assert_eq!(
        (r.slope, r.lelong, r.ratio),
        (Rat::one(), Rat::from(2i64), Some(Rat::one()))
    );

    let text = run(&["invariants", &a3, "--divisor", "1,1,1"]).stdout;
    let line = |key: &str| {
        text.lines()
            .find(|l| l.starts_with(key))
            .unwrap()
            .to_owned()
    };
    assert!(line("slope").contains("(≈1.00000)"));
    assert!(line("lelong").contains("2"));
    assert!(line("ratio").contains("1"));
}

#[test]
fn json_reports_round_trip_through_the_parser() {
    let g = ade_graph(AdeFamily::A, 4).unwrap().into_valid().unwrap();
    let a4 = corpus_file("a4.json");
    for divisor in ["1,2,3,4", "0,0,0,0", "3/2,1,1,5", "7,1,1,1"] {
        let o = run(&["invariants", &a4, "--divisor", divisor, "--format", "json"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let coeffs = divisor.split(',').map(|s| s.parse().unwrap()).collect();
        let want = report(&g, &Divisor::new(coeffs).unwrap()).unwrap();
        assert_eq!(parse_report(o.stdout.trim_end()).unwrap(), want);
    }
    // slope 0: undefined ratio
    let zero = run(&["invariants", &a4, "--divisor", "0,0,0,0"]);
    assert!(zero
        .stdout
        .lines()
        .any(|l| l.starts_with("ratio") && l.ends_with("—")));
    let zero = run(&[
        "invariants",
        &a4,
        "--divisor",
        "0,0,0,0",
        "--format",
        "json",
    ]);
    assert!(zero.stdout.contains("\"ratio\":null"));
}

#[test]
fn sample_lines_round_trip() {
    let o = run(&[
        "sample",
        &corpus_file("e6.json"),
        "--count",
        "25",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 26);
    for line in &lines[..25] {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let r = parse_report(&v["report"].to_string()).unwrap();
        assert!(r.in_cone);
        assert_eq!(r.ratio, Some(Rat::one()));
    }
    let summary: serde_json::Value = serde_json::from_str(lines[25]).unwrap();
    assert_eq!(summary["max_ratio"], "1");
    assert_eq!(summary["count"], 25);
}

#[test]
fn exit_codes() {
    let a3 = corpus_file("a3.json");
    // usage
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["invariants", &a3]).code, EXIT_USAGE);
    assert_eq!(
        run(&["invariants", &a3, "--divisor", "1,1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["invariants", &a3, "--divisor", "1,x,1"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["chain-bound", &a3, "--from", "E1"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["chain-bound", &a3, "--from", "E1", "--to", "E9"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["quotient", "--order", "0", "--dim", "2"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["ord", &a3, "--divisor", "1,1,1", "--kmax", "0"]).code,
        EXIT_USAGE
    );
    // data
    assert_eq!(run(&["validate", "/nonexistent/x.json"]).code, EXIT_DATA);
    assert_eq!(
        run_in(&["validate", "-"], "{", DEFAULT_RAY_LIMIT).code,
        EXIT_DATA
    );
    assert_eq!(
        run(&["invariants", &a3, "--divisor", "1,-1,1"]).code,
        EXIT_DATA
    );
    assert_eq!(
        run(&["ord", &a3, "--divisor", "1,1/2,1", "--kmax", "3"]).code,
        EXIT_DATA
    );
    let cap = run_in(&["rays", &corpus_file("a5.json")], "", 4);
    assert_eq!(cap.code, EXIT_DATA);
    assert!(cap.stderr.contains("limit of 4"));
    // validation
    let bad = fs::read_to_string(&a3)
        .unwrap()
        .replacen("\"m\": 1", "\"m\": 0", 1);
    let v = run_in(&["validate", "-"], &bad, DEFAULT_RAY_LIMIT);
    assert_eq!(v.code, EXIT_INVALID);
    assert!(v.stdout.contains("non-positive multiplicity at E1"));
    let s = run_in(&["sharp", "-"], &bad, DEFAULT_RAY_LIMIT);
    assert_eq!((s.code, s.stdout.as_str()), (EXIT_INVALID, ""));
    assert!(s.stderr.contains("failed validation"));
    // help is not an error
    let help = run(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("chain-bound"));
}

#[test]
fn disconnected_instance_is_reported() {
    let text = r#"{"name":"2A1","dimension":2,
        "vertices":[{"id":"P","m":1},{"id":"Q","m":1}],
        "intersections":[["P","P",-2],["Q","Q",-2]],"theta_degrees":null}"#;
    let v = run_in(
        &["validate", "-", "--format", "json"],
        text,
        DEFAULT_RAY_LIMIT,
    );
    assert_eq!(v.code, EXIT_INVALID);
    let doc: serde_json::Value = serde_json::from_str(v.stdout.trim_end()).unwrap();
    assert_eq!(doc["valid"], false);
    assert!(doc["violations"][0]
        .as_str()
        .unwrap()
        .starts_with("disconnected"));
}

#[test]
fn sharp_skips_rays_over_capacity() {
    let o = run_in(
        &["sharp", &corpus_file("a6.json"), "--format", "json"],
        "",
        3,
    );
    assert_eq!(o.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(o.stdout.trim_end()).unwrap();
    assert_eq!(doc["c_sharp"], "7/2");
    assert!(doc["rays"].is_null());
    let t = run_in(&["sharp", &corpus_file("a6.json")], "", 3);
    assert!(t.stdout.contains("skipped"));
}

#[test]
fn chain_bound_outputs() {
    let o = run(&[
        "chain-bound",
        &corpus_file("a3.json"),
        "--from",
        "E1",
        "--to",
        "E3",
        "--format",
        "json",
    ]);
    assert_eq!(
        o.stdout,
        "{\"from\":\"E1\",\"to\":\"E3\",\"path\":[\"E1\",\"E2\",\"E3\"],\"factors\":[\"2\",\"2\"],\"product\":\"4\"}\n"
    );
    let g = run(&["chain-bound", &corpus_file("a5.json"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(g.stdout.trim_end()).unwrap();
    assert_eq!(doc["product"], "16");
    let t = run(&[
        "chain-bound",
        &corpus_file("triangle.json"),
        "--from",
        "E1",
        "--to",
        "E3",
    ]);
    assert!(t.stdout.contains("E1 -> E3"));
    assert!(t.stdout.contains("best effective chain"));
    let single = run(&[
        "chain-bound",
        &corpus_file("single-blowup.json"),
        "--format",
        "json",
    ]);
    assert!(single.stdout.contains("\"factors\":[],\"product\":\"1\""));
}

#[test]
fn quotient_and_ord() {
    assert_eq!(
        run(&["quotient", "--order", "24", "--dim", "2"]).stdout,
        "24\n"
    );
    assert_eq!(
        run(&["quotient", "--order", "3", "--dim", "4"]).stdout,
        "27\n"
    );
    let big = run(&[
        "quotient", "--order", "1000000", "--dim", "5", "--format", "json",
    ]);
    assert_eq!(
        big.stdout,
        "{\"order\":1000000,\"dim\":5,\"bound\":\"1000000000000000000000000\"}\n"
    );
    let o = run(&[
        "ord",
        &corpus_file("a3.json"),
        "--divisor",
        "1,2,3",
        "--kmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(
        o.stdout,
        "{\"k\":1,\"ord\":\"1\",\"lower\":\"1\",\"upper\":\"2\"}\n{\"k\":2,\"ord\":\"2\",\"lower\":\"1\",\"upper\":\"3/2\"}\n"
    );
}

fn binary(args: &[&str], stdin: &str, env: Option<(&str, &str)>) -> (i32, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lelong"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("LELONG_CAPACITY");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), out.stdout, out.stderr)
}

#[test]
fn binary_honours_capacity_variable() {
    let a5 = corpus_file("a5.json");
    assert_eq!(binary(&["rays", &a5], "", None).0, EXIT_OK);
    let (code, _, err) = binary(&["rays", &a5], "", Some(("LELONG_CAPACITY", "4")));
    assert_eq!(code, EXIT_DATA);
    assert!(String::from_utf8(err).unwrap().contains("limit of 4"));
    assert_eq!(
        binary(&["rays", &a5], "", Some(("LELONG_CAPACITY", "many"))).0,
        EXIT_USAGE
    );
}

#[test]
fn binary_pipeline_and_determinism() {
    let (code, a4, _) = binary(&["ade", "A", "4"], "", None);
    assert_eq!(code, 0);
    let a4 = String::from_utf8(a4).unwrap();
    for args in [
        vec!["sharp", "-"],
        vec!["sharp", "-", "--format", "json"],
        vec!["sample", "-", "--count", "50", "--seed", "3"],
        vec![
            "sample", "-", "--count", "50", "--seed", "3", "--format", "json",
        ],
        vec!["rays", "-"],
        vec!["chain-bound", "-"],
    ] {
        let first = binary(&args, &a4, None);
        let second = binary(&args, &a4, None);
        assert_eq!(first.0, 0, "{args:?}");
        assert_eq!(first.1, second.1, "{args:?}");
    }
}
