use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn seqspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqspan"))
        .args(args)
        .env_remove("SEQSPAN_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn example15_report() {
    let out = seqspan(&["verify", "example15"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["measured"], 1232);
    assert_eq!(v["bound"], 1029);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_targets_pass() {
    for args in [
        &["verify", "lemma2", "--m", "2", "--k", "2"][..],
        &["verify", "prop4", "--m", "3", "--k", "2"],
        &["verify", "ideal"],
        &["verify", "theorem9"],
        &["verify", "theorem13", "--m", "3", "--k", "1", "--gamma", "3"],
        &["verify", "lemma7"],
    ] {
        let out = seqspan(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["pass"], true, "{args:?}");
    }
    let v = json(&seqspan(&["verify", "prop4", "--m", "3", "--k", "2"]));
    assert_eq!((v["matched"].as_u64(), v["total"].as_u64()), (Some(64), Some(64)));
    let v = json(&seqspan(&["verify", "lemma2", "--m", "2", "--k", "2"]));
    assert_eq!(v["values"], serde_json::json!([-17, -1, 15]));
}

#[test]
fn failed_assertion_exits_3() {
    // the m-sequence index set does not contain 2^(m-1)-1 = 3 at m = 3
    let out = seqspan(&["verify", "theorem9", "--index-set", "mseq"]);
    assert_eq!(out.status.code(), Some(2));
    // C_5 is not an ideal index set, so the autocorrelation check fails
    let out = seqspan(&["verify", "ideal", "--m", "3", "--k", "1", "--index-set", "cosets:1,3"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn validation_errors_exit_2() {
    let out = seqspan(&["generate", "--m", "2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("seqspan: error kind=validation code=2:"), "{err}");
    assert!(err.contains("gcd(k-1, 2^m-1)"));
    assert_eq!(
        seqspan(&["generate", "--m", "3", "--k", "2", "--h", "64"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        seqspan(&["generate", "--m", "3", "--k", "2", "--u", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(seqspan(&["correlate", "--m", "4", "--k", "2"]).status.code(), Some(2));
    assert_eq!(
        seqspan(&["verify", "lemma2", "--m", "4", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        seqspan(&["span", "--m", "4", "--k", "4", "--u", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn generate_writes_one_file_per_member() {
    let dir = tempfile::tempdir().unwrap();
    let out = seqspan(&[
        "generate",
        "--m",
        "3",
        "--k",
        "2",
        "--u",
        "auto",
        "--index-set",
        "cosets:3",
        "--h",
        "all",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 64);
    let text = fs::read_to_string(dir.path().join("h0.seq")).unwrap();
    assert!(text.starts_with("SEQ1 n=12 m=3 k=2 u=1 h=0 I=3 period=4095\n"));

    let v = json(&seqspan(&[
        "span",
        "--file",
        dir.path().join("h0.seq").to_str().unwrap(),
    ]));
    assert_eq!(v["measured"], 48);
}

#[test]
fn generate_is_deterministic_and_thread_independent() {
    let args = ["generate", "--m", "2", "--k", "3", "--h", "0-7"];
    let one = Command::new(env!("CARGO_BIN_EXE_seqspan"))
        .args(args)
        .env("SEQSPAN_THREADS", "1")
        .output()
        .unwrap();
    let many = seqspan(&["--threads", "4", "generate", "--m", "2", "--k", "3", "--h", "0-7"]);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(String::from_utf8_lossy(&one.stdout).lines().count(), 16);
}

#[test]
fn example15_sequence_file() {
    let out = seqspan(&[
        "generate",
        "--m",
        "7",
        "--k",
        "1",
        "--index-set",
        "legendre:3,1",
        "--h",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("SEQ1 n=14 m=7 k=1 u=1 h=0 I=3,5,7,23,27,29,43,55,63 period=16383\n"));
}

#[test]
fn correlate_outputs() {
    let v = json(&seqspan(&["correlate", "--m", "2", "--k", "2", "--u", "1"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["r_max"], 17);
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    let counts = v["value_counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 16 * 16 * 255 - 16);
    let csv = seqspan(&["correlate", "--m", "2", "--k", "2", "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert!(csv.starts_with("value,count\n-17,"));
    // a member subset is allowed above the spectrum guardrail
    let out = seqspan(&["correlate", "--m", "4", "--k", "2", "--h", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn span_reports() {
    let v = json(&seqspan(&[
        "span",
        "--m",
        "3",
        "--k",
        "2",
        "--index-set",
        "cosets:3",
        "--h",
        "0,1",
    ]));
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports[0]["measured"], 48);
    assert_eq!(reports[0]["L0"], 48);
    assert_eq!(reports[0]["gamma_hex"], "0");
    assert!(reports[1]["epsilon"].is_i64());
    for r in reports {
        assert_eq!(r["measured"], r["predicted"]);
    }
    let csv = seqspan(&[
        "span",
        "--m",
        "3",
        "--k",
        "2",
        "--index-set",
        "cosets:3",
        "--format",
        "csv",
    ]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("h,gamma_hex,epsilon,c,g,in_F_prime,measured,predicted,L0,L1")
    );
}

#[test]
fn field_commands() {
    let out = seqspan(&["field", "--dump-table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("degree,poly_hex"));
    assert_eq!(text.lines().count(), 32);
    let v = json(&seqspan(&["field", "--m", "3", "--k", "2"]));
    assert_eq!((v["n"].as_u64(), v["order"].as_u64()), (Some(12), Some(4095)));
}

#[test]
fn report_tables() {
    let v = json(&seqspan(&["report", "tables", "--m-max", "5"]));
    let two = v["table_two"].as_array().unwrap();
    assert!(two.iter().all(|r| r["matches"] == true));
    let row = two.iter().find(|r| r["k"] == 3 && r["m"] == 3).unwrap();
    assert_eq!(row["L1"], "1296");
    let one = v["table_one"].as_array().unwrap();
    let kasami = one
        .iter()
        .find(|r| r["family"] == "Small set of Kasami sequences")
        .unwrap();
    assert_eq!(kasami["value"], "18");
    assert_eq!(kasami["measured"], 18);
    let studied = one
        .iter()
        .find(|r| r["family"] == "Sequences we studied" && r["m"] == 3)
        .unwrap();
    assert_eq!(studied["value"], "90");
    assert!(studied["measured"].as_u64().unwrap() > 90);
    let tn = v["tn_comparison"].as_array().unwrap();
    assert_eq!(tn.iter().find(|c| c["m"] == 4).unwrap()["exceeds"], false);
    let csv = String::from_utf8(seqspan(&["report", "tables", "--format", "csv"]).stdout).unwrap();
    assert!(csv.contains("# table two\nk,m,n,L0,L1,matches\n3,2,12,24,54,true\n"));
}

#[test]
fn index_set_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    fs::write(&path, r#"{"m": 3, "leaders": [3]}"#).unwrap();
    let spec = format!("json:{}", path.display());
    let v = json(&seqspan(&["span", "--m", "3", "--k", "2", "--index-set", &spec]));
    assert_eq!(v["reports"][0]["measured"], 48);
    fs::write(&path, "not json").unwrap();
    assert_eq!(
        seqspan(&["span", "--m", "3", "--k", "2", "--index-set", &spec])
            .status
            .code(),
        Some(5)
    );
}
