use std::process::Command;

use serde_json::Value;

fn loci(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_loci"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).expect("output is JSON");
    (code, value)
}

#[test]
fn alex_poly_pencil() {
    let (code, v) = loci(&[
        "alex-poly",
        "--pres",
        "<x1,x2,x3 | [x1,x1x2x3],[x2,x1x2x3]>",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["delta"], "t1*t2*t3 - 1");
    assert_eq!(v["b1"], 3);
    assert_eq!(v["newton_is_segment"], true);
}

#[test]
fn cover_betti_both_methods_agree() {
    let (code, v) = loci(&[
        "cover-betti",
        "--pres",
        "<x1,x2|>",
        "--mod",
        "2",
        "--values",
        "x1=1,x2=1",
        "--prime",
        "5",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["b1"], 3);
    assert_eq!(v["agreement"], true);
}

#[test]
fn tau1_subtorus() {
    let (code, v) = loci(&["tau1", "--poly", "t1*t2 - 1"]);
    assert_eq!(code, 0);
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), 1);
    assert_eq!(members[0]["normals"], serde_json::json!([["1", "1"]]));
}

#[test]
fn input_error_exits_2() {
    let (code, v) = loci(&["alex-poly", "--pres", "<x1 | y1>"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("unknown"));
}

#[test]
fn cap_overflow_exits_3() {
    let (code, v) = loci(&[
        "tau1",
        "--poly",
        "t1^5 + t1^4 + t1^3 + t1^2 + t1 - 5",
        "--support-cap",
        "3",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "cap_exceeded");
}

#[test]
fn arrangement_round_trip() {
    let arr = r#"{"combinatorics":{"n":6,
        "multiple_points":[[1,2,4],[1,3,5],[2,3,6],[4,5,6]],
        "parallel_classes":[]}}"#;
    let (code, v) = loci(&["arr", "lattice", "--arr", arr]);
    assert_eq!(code, 0);
    assert_eq!(v["b1"], 6);
    assert_eq!(v["b2"], 11);
    // The emitted lattice re-parses as input.
    let back = serde_json::json!({ "combinatorics": {
        "n": v["n"],
        "multiple_points": v["multiple_points"],
        "parallel_classes": v["parallel_classes"],
    }});
    let (code, v2) = loci(&["arr", "lattice", "--arr", &back.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(v2["b2"], v["b2"]);
}

#[test]
fn toric_loci_wedge() {
    let (code, v) = loci(&[
        "toric",
        "loci",
        "--complex",
        r#"{"n":3,"facets":[[1],[2],[3]]}"#,
        "-i",
        "1",
        "-d",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["subsets"], serde_json::json!([["x1", "x2", "x3"]]));
}
