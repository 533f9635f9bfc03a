use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn sympair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_reports_parameters() {
    let out = sympair(&["construct", "--family", "dp9", "--q", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(12), Some(5)));
    assert_eq!(v["defining_set"].as_array().unwrap().len(), 7);

    let v = json(&sympair(&["construct", "--family", "dp8", "--q", "11"]));
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(40), Some(34)));
}

#[test]
fn inadmissible_q_exits_with_two() {
    let out = sympair(&["construct", "--family", "dp7", "--q", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mod 4"), "{err}");
    let out = sympair(&["certify", "--family", "dp9", "--q", "15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_exit_codes() {
    for (family, q, code) in [("dp8", "7", 0), ("dp9", "5", 0), ("dp9", "3", 3)] {
        let out = sympair(&["certify", "--family", family, "--q", q]);
        assert_eq!(out.status.code(), Some(code), "{family} q={q}");
    }
    let v = json(&sympair(&["certify", "--family", "dp9", "--q", "3"]));
    assert_eq!(v["status"], "DISCREPANCY");
    assert_eq!(v["d_P"]["value"], 8);
    assert_eq!(v["claimed_d_P"], 9);
    // a Hamming bound below d_H leaves the search inconclusive
    let out = sympair(&["certify", "--family", "dp7", "--q", "5", "--w-max", "2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn certificates_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let path = dir.path().join(name);
        let out = sympair(&[
            "certify",
            "--family",
            "dp7",
            "--q",
            "9",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read(path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    assert_eq!(a, b);
    assert_eq!(a, run("c.json", "4"));
}

#[test]
fn distance_of_the_small_dp8_code() {
    let g = json(&sympair(&["construct", "--family", "dp8", "--q", "3"]))["generator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let v = json(&sympair(&["distance", "--q", "3", "--n", "8", "--generator", &g, "--pair"]));
    assert_eq!(v["d_H"]["value"], 6);
    assert_eq!(v["d_P"]["value"], 8);
    assert!(v["bounds"]["bch"].as_u64().unwrap() <= 6);
}

#[test]
fn distance_rejects_bad_codes() {
    // x^8 − 1 generates the zero code
    let out = sympair(&["distance", "--q", "3", "--n", "8", "--generator", "2,0,0,0,0,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    // roots of x^2 + 2 have order 8, which does not divide 12
    let out = sympair(&["distance", "--q", "5", "--n", "12", "--generator", "2,0,1"]);
    assert!(!out.status.success());
}

#[test]
fn distance_engines_agree() {
    // cosets {0}, {1, 5}, {2, 10} mod 12 give a [12, 7] cyclic code
    let mut seen = Vec::new();
    for engine in ["rank", "full"] {
        let v = json(&sympair(&[
            "distance",
            "--q",
            "5",
            "--n",
            "12",
            "--defining-set",
            "0,1,5,2,10",
            "--pair",
            "--engine",
            engine,
        ]));
        assert_eq!(v["k"], 7);
        seen.push((v["d_H"]["value"].clone(), v["d_P"]["value"].clone()));
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn table_output() {
    let out = sympair(&["table", "--q"]);
    assert!(out.status.success());
    assert_eq!(json(&out), Value::Array(vec![]));

    let out = sympair(&["table", "--family", "dp7", "--q", "5,9,13"]);
    assert!(out.status.success());
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["status"] == "MDS_CONFIRMED"));

    let rows = json(&sympair(&["table", "--family", "dp8", "--q", "3,7,11"]));
    assert!(rows.as_array().unwrap().iter().all(|r| r["status"] == "MDS_CONFIRMED"));
}

#[test]
fn lemma_style_checks() {
    let v = json(&sympair(&["subcode", "--q", "7"]));
    assert_eq!(v["subcode"], true);
    let v = json(&sympair(&["dual-generator", "--q", "7"]));
    assert_eq!(v["agree"], true);
    let out = sympair(&["stability", "--family", "dp9", "--q", "5", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("stable: true"));
}
