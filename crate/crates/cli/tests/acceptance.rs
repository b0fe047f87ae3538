//! End-to-end contract of the `summab` binary: byte-stable JSON report for
//! the canonical scenario, exit-code semantics, line-numbered scenario
//! diagnostics, and the CSV dumps.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn summab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn canon_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/canon-1.scn")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal exit")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn acceptance_9_cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let canon = canon_path();
    let canon_str = canon.to_str().unwrap();

    // Golden report: two runs byte-identical, stdout matches the file,
    // exactly the six stable top-level keys, overall pass.
    let json1 = dir.path().join("run1.json");
    let json2 = dir.path().join("run2.json");
    let first = summab(&["theorem", "--scenario", canon_str, "--json", json1.to_str().unwrap()]);
    assert_eq!(exit_code(&first), 0, "stderr: {}", stderr_text(&first));
    let second = summab(&[
        "theorem",
        "--scenario",
        canon_str,
        "--json",
        json2.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(exit_code(&second), 0);
    assert!(second.stdout.is_empty(), "--quiet must silence stdout");

    let bytes1 = std::fs::read(&json1).unwrap();
    let bytes2 = std::fs::read(&json2).unwrap();
    assert_eq!(bytes1, bytes2, "reruns must be byte-identical");
    assert_eq!(first.stdout, bytes1, "stdout and --json file must agree");

    let report: serde_json::Value = serde_json::from_slice(&bytes1).unwrap();
    let mut keys: Vec<&str> = report.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["command", "conditions", "decomposition", "index", "provenance", "scenario"]
    );
    assert_eq!(report["provenance"]["overall"], "pass");
    assert_eq!(report["index"]["verdict"], "summable_trend");
    assert_eq!(report["decomposition"]["residual_ok"], true);
    assert_eq!(report["scenario"]["name"], "CANON-1");
    assert!(report["conditions"]["C12"]["verdict"].is_string());

    // Exit 1: the square-inverse factor replaced by the plain inverse makes
    // the bounded-variation side diverge.
    let neg = dir.path().join("neg.scn");
    let canon_text = std::fs::read_to_string(&canon).unwrap();
    std::fs::write(&neg, canon_text.replace("inverse_x_squared", "inverse_x")).unwrap();
    let failing = summab(&["theorem", "--scenario", neg.to_str().unwrap(), "--quiet"]);
    assert_eq!(exit_code(&failing), 1);

    // Exit 2: a barely-decaying alternating series converges too slowly for
    // the dyadic blocks to certify either way.
    let slow = dir.path().join("slow.scn");
    std::fs::write(
        &slow,
        "horizon = 4096\nk = 1\nterms.family = alternating_power\nterms.delta = 0.05\n\
         weights.family = unit\nindex.method = weighted\n",
    )
    .unwrap();
    let inconclusive = summab(&["index", "--scenario", slow.to_str().unwrap(), "--quiet"]);
    assert_eq!(exit_code(&inconclusive), 2);

    // Exit 10 with a line-numbered diagnostic for an unknown key.
    let bad = dir.path().join("bad.scn");
    std::fs::write(&bad, "horizon = 4096\nbogus = 1\n").unwrap();
    let unknown = summab(&["conditions", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&unknown), 10);
    let msg = stderr_text(&unknown);
    assert!(msg.contains("bad.scn:2"), "diagnostic must cite the line: {msg}");
    assert!(msg.contains("bogus"), "{msg}");

    // Exit 10 for an out-of-range exponent.
    let badk = dir.path().join("badk.scn");
    std::fs::write(&badk, "k = 0.5\n").unwrap();
    let small_k = summab(&["index", "--scenario", badk.to_str().unwrap()]);
    assert_eq!(exit_code(&small_k), 10);
    assert!(stderr_text(&small_k).contains("k must be >= 1"), "{}", stderr_text(&small_k));

    // Exit 11 for a command-line usage error.
    let usage = summab(&["theorem", "--no-such-flag"]);
    assert_eq!(exit_code(&usage), 11);

    // CSV dumps: a constant factor zeroes the fourth split column exactly.
    let const_scn = dir.path().join("const.scn");
    std::fs::write(
        &const_scn,
        "horizon = 128\nk = 1\nlambda.family = constant\nlambda.c = 0.7\n",
    )
    .unwrap();
    let dump_dir = dir.path().join("dump");
    let _ = summab(&[
        "decompose",
        "--scenario",
        const_scn.to_str().unwrap(),
        "--dump",
        dump_dir.to_str().unwrap(),
        "--quiet",
    ]);
    let split_csv = std::fs::read_to_string(dump_dir.join("abel_split.csv")).unwrap();
    let mut lines = split_csv.lines();
    assert_eq!(lines.next().unwrap(), "n,v1,v2,v3,v4,direct,residual");
    let mut rows = 0usize;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7, "{line}");
        assert_eq!(cols[4].parse::<f64>().unwrap(), 0.0, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 128);
    assert!(dump_dir.join("term_indexes.csv").exists());

    println!(
        "ACCEPTANCE 9 PASS golden report byte-stable ({} bytes), exits 0/1/2/10/11 observed, \
         scenario diagnostics carry line numbers, split dump zeroes the constant-factor column",
        bytes1.len()
    );
}
