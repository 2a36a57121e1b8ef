use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const FAMILY: &str =
    r#"{"dim": 3, "vectors": [["1","0","1"],["0","1","1"],["1","1","1"],["2","-1","5"],["3","-2","13"]]}"#;

fn phaselab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_phaselab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_then_check_through_pipes() {
    let gen = phaselab(&["gen", "rd-family", "--d", "3", "--xs", "2", "3"], "");
    assert!(gen.status.success());
    let check = phaselab(&["check", "frame", "--pr"], &stdout(&gen));
    assert_eq!(check.status.code(), Some(0));
    let reports = lines(&check);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["check"], "phase_retrieval");
    assert_eq!(reports[0]["verdict"], true);
    assert_eq!(reports[0]["certainty"], "PROOF");
    assert!(String::from_utf8_lossy(&check.stderr).contains("phase_retrieval"));
}

#[test]
fn all_frame_checks_by_default() {
    let out = phaselab(&["check", "frame", "-"], FAMILY);
    let checks: Vec<String> = lines(&out)
        .iter()
        .map(|r| r["check"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        checks,
        [
            "full_spark",
            "complement_property",
            "phase_retrieval",
            "tight",
            "scalable"
        ]
    );
    let scalable = &lines(&out)[4];
    assert_eq!(scalable["verdict"], false);
    assert_eq!(scalable["payload"]["lp"], "infeasible");
}

#[test]
fn float_backend_is_evidence() {
    let out = phaselab(&["--backend", "float", "check", "frame", "--full-spark"], FAMILY);
    let r = &lines(&out)[0];
    assert_eq!(r["certainty"], "EVIDENCE");
    assert_eq!(r["backend"], "float");
    assert!(r["tolerances"]["tol"].is_number());
}

#[test]
fn witness_indices_are_one_based() {
    let planes = phaselab(&["gen", "r3-hyperplanes"], "");
    let normals = phaselab(&["perp"], &stdout(&planes));
    assert!(normals.status.success());
    let lines_file: Value = serde_json::from_str(&stdout(&normals)).unwrap();
    assert_eq!(lines_file["subspaces"].as_array().unwrap().len(), 5);
    assert_eq!(
        lines_file["subspaces"][2]["basis"],
        serde_json::json!([["1", "-1", "0"]])
    );
    let frame = r#"{"dim": 3, "vectors": [["1","0","0"],["0","1","0"],["1","-1","0"],["0","1","-1"],["1","0","-1"]]}"#;
    let r = &lines(&phaselab(&["check", "frame", "--cp"], frame))[0];
    assert_eq!(r["verdict"], false);
    assert_eq!(r["payload"]["witness"], serde_json::json!([1, 2, 3]));
    assert_eq!(r["payload"]["witness_complement"], serde_json::json!([4, 5]));
}

#[test]
fn exit_codes() {
    assert_eq!(phaselab(&["check", "frame"], "not json").status.code(), Some(2));
    assert_eq!(
        phaselab(&["check", "frame"], r#"{"dim": 2, "vectors": [["1","q"]]}"#)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(phaselab(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(
        phaselab(
            &["check", "arrangement"],
            r#"{"dim": 2, "subspaces": [{"normal": ["1","0"]}]}"#
        )
        .status
        .code(),
        Some(2)
    );
    let vectors: Vec<String> = (0..31).map(|i| format!(r#"["1","{i}"]"#)).collect();
    let big = format!(r#"{{"dim": 2, "vectors": [{}]}}"#, vectors.join(","));
    let out = phaselab(&["check", "frame", "--cp"], &big);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
    assert_eq!(phaselab(&["--help"], "").status.code(), Some(0));
}

#[test]
fn reruns_are_byte_identical() {
    let six = stdout(&phaselab(&["gen", "r4-six"], ""));
    let args = [
        "check",
        "arrangement",
        "--edidin-search",
        "--restarts",
        "60",
        "--seed",
        "7",
    ];
    let a = phaselab(&args, &six);
    let b = phaselab(&args, &six);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = &lines(&a)[0];
    assert_eq!(r["verdict"], "no witness");
    assert_eq!(r["certainty"], "EVIDENCE");
    assert_eq!(r["seed"], 7);
    assert!(r["payload"].get("wall_time_ms").is_none());
    let zargs = ["zprobe", "--trials", "40", "--seed", "5"];
    assert_eq!(phaselab(&zargs, &six).stdout, phaselab(&zargs, &six).stdout);
    let timed = phaselab(
        &["--timing", "check", "arrangement", "--edidin-search", "--restarts", "5"],
        &six,
    );
    assert!(lines(&timed)[0]["payload"]["wall_time_ms"].is_number());
}

#[test]
fn thread_count_does_not_change_reports() {
    let six = stdout(&phaselab(&["gen", "r4-six"], ""));
    let args = [
        "check",
        "arrangement",
        "--edidin-search",
        "--restarts",
        "40",
        "--seed",
        "3",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_phaselab"))
        .args(args)
        .env("PHASELAB_THREADS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(six.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(one.stdout, phaselab(&args, &six).stdout);
}

#[test]
fn generated_files_round_trip_through_the_cli() {
    for target in [
        &["r3-quintet"][..],
        &["rd-family", "--d", "4"],
        &["r3-hyperplanes"],
        &["r4-six"],
    ] {
        let mut args = vec!["gen"];
        args.extend_from_slice(target);
        let first = stdout(&phaselab(&args, ""));
        let json: Value = serde_json::from_str(&first).unwrap();
        let check: &[&str] = if json.get("vectors").is_some() {
            &["check", "frame", "--full-spark", "--pr"]
        } else {
            &["check", "arrangement", "--min-count", "--fusion-scalable"]
        };
        let direct = phaselab(check, &first);
        let reserialized = serde_json::to_string(&json).unwrap();
        let again = phaselab(check, &reserialized);
        assert!(direct.status.success(), "{target:?}");
        assert_eq!(direct.stdout, again.stdout, "{target:?}");
    }
}

#[test]
fn sturm_commands() {
    let r = &lines(&phaselab(&["sturm", "--f0"], ""))[0];
    assert_eq!(r["verdict"], 0);
    assert_eq!(r["certainty"], "PROOF");
    let out = phaselab(&["sturm", "--interval", "0", "2"], "0 2 1\n2 0 -2\n");
    assert_eq!(lines(&out)[0]["verdict"], 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("real roots: 1"));
    let bad = phaselab(&["sturm"], "0 2 1\n0 2 3\n");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reconstruct_command() {
    let frame = r#"{"dim": 2, "vectors": [["1","0"],["0","1"]]}"#;
    let r = &lines(&phaselab(&["reconstruct", "--signal", "1,1"], frame))[0];
    assert_eq!(r["verdict"], false);
    assert_eq!(r["payload"]["classes"], serde_json::json!([["1", "1"], ["1", "-1"]]));
    let three = r#"{"dim": 2, "vectors": [["1","0"],["0","1"],["1","1"]]}"#;
    let r = &lines(&phaselab(&["reconstruct", "--signal", "1", "2"], three))[0];
    assert_eq!(r["verdict"], true);
    assert_eq!(r["payload"]["classes"], serde_json::json!([["1", "2"]]));
}
