use std::process::{Command, Output};

use ringauto_core::fixed::CoeffModule;

fn ringauto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringauto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = ringauto(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classes_json_z9() {
    let out = stdout_of(&["classes", "--modulus", "9", "--format", "json"]);
    assert_eq!(
        out.trim(),
        r#"{"modulus":9,"group_order":54,"count":10,"classes":[{"u":1,"a":9,"size":1},{"u":1,"a":1,"size":6},{"u":1,"a":3,"size":2},{"u":2,"a":1,"size":9},{"u":4,"a":1,"size":6},{"u":4,"a":3,"size":3},{"u":5,"a":1,"size":9},{"u":7,"a":1,"size":6},{"u":7,"a":3,"size":3},{"u":8,"a":1,"size":9}]}"#
    );
}

#[test]
fn classes_csv_and_table_z4() {
    let csv = stdout_of(&["classes", "--modulus", "4", "--format", "csv"]);
    assert_eq!(csv, "u,a,size\n1,4,1\n1,1,2\n1,2,1\n3,1,2\n3,2,2\n");
    let table = stdout_of(&["classes", "--modulus", "4", "--check-bruteforce"]);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "B(Z_4): order 8, 5 classes");
    assert_eq!(lines.len(), 7);
    assert!(lines[2].starts_with("1*x+4"));
    assert!(lines[2].ends_with(" 1"));
}

#[test]
fn count() {
    assert_eq!(stdout_of(&["count", "--modulus", "9", "--check-bruteforce"]), "10\n");
    assert_eq!(stdout_of(&["count", "--modulus", "60"]), "75\n");
}

#[test]
fn conjugate_and_canon() {
    assert_eq!(
        stdout_of(&["conjugate", "--modulus", "9", "--first", "2,1", "--second", "2,5"]),
        "CONJUGATE\nwitness 1,5\n"
    );
    assert_eq!(
        stdout_of(&["conjugate", "--modulus", "9", "--first", "1,1", "--second", "1,3"]),
        "NOT_CONJUGATE\n"
    );
    assert_eq!(stdout_of(&["canon", "--modulus", "9", "--elem", "4,5"]), "4*x+1\n");
    assert_eq!(stdout_of(&["canon", "--modulus", "9", "--elem", "1,0"]), "1*x+9\n");
}

#[test]
fn auto_check() {
    assert_eq!(
        stdout_of(&["auto-check", "--modulus", "9", "--image", "[1,1,3]"]),
        "AUTOMORPHISM\na=1 u=1 f=[3]\n"
    );
    let out = stdout_of(&["auto-check", "--modulus", "9", "--image", "[0,1,1]"]);
    assert!(out.starts_with("NOT_AUTOMORPHISM\n"));
    let out = stdout_of(&["auto-check", "--modulus", "9", "--image", "[1,3]"]);
    assert!(out.starts_with("NOT_AUTOMORPHISM\n"));
}

#[test]
fn invert_order_expand() {
    assert_eq!(
        stdout_of(&["invert", "--modulus", "8", "--image", "[0,1,0,2]"]),
        "[0,1,0,6,0,4]\n"
    );
    assert_eq!(stdout_of(&["order", "--modulus", "9", "--image", "[1,1]"]), "9\n");
    assert_eq!(stdout_of(&["order", "--modulus", "9", "--image", "[0,8]"]), "2\n");
    assert_eq!(
        stdout_of(&["expand", "--modulus", "9", "--f", "[0,0,1]", "--g", "[1,2,3,4]"]),
        "[[1,2],[3,4]]\n"
    );
}

#[test]
fn fixed_json_round_trips() {
    let out = stdout_of(&["fixed", "--modulus", "4", "--gens", "[1,-1]", "--degree", "4", "--format", "json"]);
    assert_eq!(
        out.trim(),
        r#"{"modulus":4,"degree_bound":4,"basis":[[0,1,0,2,1],[0,3,1],[1]]}"#
    );
    let module = CoeffModule::from_json(out.trim()).unwrap();
    assert_eq!(module.to_json(), out.trim());
    assert_eq!(module.cardinality(), 64);

    let table = stdout_of(&["fixed", "--modulus", "4", "--gens", "[1,-1]", "--degree", "4"]);
    assert!(table.lines().last().unwrap().starts_with("catalog: Y_PLUS_XF"));
}

#[test]
fn z4_commands() {
    let out = stdout_of(&["z4", "identify", "--gens", "beta:[0,2]", "--degree", "8"]);
    assert_eq!(out.lines().next(), Some("Y2_2Y"));
    let out = stdout_of(&["z4", "identify", "--gens", "beta:[0,2,2]", "--degree", "8"]);
    assert_eq!(out.lines().next(), Some("Y_PLUS_XF [0,2,2]"));
    let out = stdout_of(&["z4", "identify", "--gens", "alpha:[2];alpha:[0,2]", "--degree", "6"]);
    assert_eq!(out.lines().next(), Some("X2_2X"));

    let out = stdout_of(&["z4", "stabilizer", "--ring-gens", "[0,0,1];[0,2]", "--pool-degree", "2"]);
    let elems: Vec<serde_json::Value> = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(elems.len(), 8);
    assert!(elems.iter().all(|e| e["kind"] == "alpha"));

    let out = stdout_of(&["z4", "classes", "--pool-degree", "1"]);
    assert_eq!(
        out,
        concat!(
            "[{\"kind\":\"alpha\",\"f\":[]}]\n",
            "[{\"kind\":\"alpha\",\"f\":[2]}]\n",
            "[{\"kind\":\"alpha\",\"f\":[0,2]},{\"kind\":\"alpha\",\"f\":[2,2]}]\n",
            "[{\"kind\":\"beta\",\"f\":[]},{\"kind\":\"beta\",\"f\":[2]}]\n",
            "[{\"kind\":\"beta\",\"f\":[0,2]},{\"kind\":\"beta\",\"f\":[2,2]}]\n",
        )
    );
}

#[test]
fn verify_small_suites_pass() {
    let out = stdout_of(&["verify", "--suite", "conjugacy", "--max-n", "12"]);
    assert!(out.lines().last().unwrap().ends_with(" 0 failed"));
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn exit_codes() {
    let out = ringauto(&["canon", "--modulus", "9", "--elem", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ringauto(&["invert", "--modulus", "9", "--image", "[0,1,x]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ringauto(&["canon", "--modulus", "9", "--elem", "3,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    let out = ringauto(&["invert", "--modulus", "9", "--image", "[0,3]"]);
    assert_eq!(out.status.code(), Some(1));
    let out = ringauto(&["classes", "--modulus", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = ringauto(&["z4", "identify", "--gens", "alpha:[1]", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
}
