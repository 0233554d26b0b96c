use std::path::PathBuf;

use assert_cmd::Command;
use handelman::rational::parse_q;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn bin() -> Command {
    Command::cargo_bin("handelman").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = bin().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn rank_of_five_cycle_with_trace() {
    let c5 = data("c5.graph");
    let out = stdout(&["rank", c5.to_str().unwrap()]);
    assert!(out.starts_with("rank = 3\n"), "{out}");
    assert!(out.contains("p_han^(1) = INF"));
    assert!(out.contains("p_han^(2) = 5/2"));
    assert!(out.contains("p_han^(3) = 2"));
}

#[test]
fn shipped_certificate_is_valid() {
    let out = stdout(&[
        "verify-cert",
        data("c5_certificate.json").to_str().unwrap(),
        data("c5.graph").to_str().unwrap(),
    ]);
    assert_eq!(out, "VALID\n");
}

#[test]
fn certificate_against_wrong_graph_is_rejected() {
    bin()
        .args(["verify-cert", data("c5_certificate.json").to_str().unwrap(), "circuit:7"])
        .assert()
        .code(1)
        .stdout("INVALID\n");
}

#[test]
fn emitted_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let json = stdout(&["certificate", "co-circuit:5", "--t", "3", "--format", "json"]);
    std::fs::write(&path, json).unwrap();
    let out = stdout(&["verify-cert", path.to_str().unwrap(), "co-circuit:5"]);
    assert_eq!(out, "VALID\n");
}

#[test]
fn stability_number_of_weighted_edgeless_graph() {
    let out = stdout(&["stab", data("weighted_edgeless.graph").to_str().unwrap()]);
    assert!(out.starts_with("alpha = 6\n"), "{out}");
}

#[test]
fn json_rationals_round_trip() {
    let out = stdout(&["compare", "circuit:5", "--tmax", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let p2 = rows[1]["p_han_t"].as_str().unwrap();
    assert_eq!(p2, "5/2");
    assert_eq!(parse_q(p2).unwrap().to_string(), p2);
    assert_eq!(rows[0]["p_han_t"], "INF");
}

#[test]
fn compare_table_columns() {
    let out = stdout(&["compare", "circuit:5", "lt:2", "--tmax", "2", "--format", "tsv", "--jobs", "2"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "graph\tt\talpha\talpha_star\trho_t\tp_han_t\tsa_t\tls1\tzeta_t"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("circuit:5\t1\t"));
    assert!(rows[3].starts_with("lt:2\t2\t2\t3\t3\t3\t"));
}

#[test]
fn compare_reports_timeouts() {
    let out = stdout(&["compare", "co-circuit:7", "--tmax", "4", "--timeout", "0", "--format", "tsv"]);
    assert!(out.contains("TIMEOUT"), "{out}");
}

#[test]
fn approx_adds_decimal_values() {
    let out = stdout(&["fracstab", "circuit:5", "--approx"]);
    assert_eq!(out, "alpha_star = 5/2 (2.500000)\n");
}

#[test]
fn max_cut_commands() {
    let c4 = data("signed_c4.graph");
    assert_eq!(stdout(&["maxcut", c4.to_str().unwrap(), "--t", "2"]), "t = 2\nbound = 5\n");
    let out = stdout(&["maxcut-rank", "complete:4"]);
    assert!(out.starts_with("rank = 3\nmax_cut = 4\n"), "{out}");
}

#[test]
fn other_bounds() {
    assert_eq!(stdout(&["ls1", "lt:2"]), "ls1 = 7/3\n");
    assert_eq!(stdout(&["sa", "circuit:5", "--t", "3"]), "t = 3\nsa = 2\n");
    assert_eq!(stdout(&["zeta", "circuit:5", "--t", "2"]), "t = 2\nalpha = 2\nzeta = 3\n");
    assert_eq!(stdout(&["handelman", "circuit:5", "--t", "2"]), "t = 2\np_han = 5/2\n");
    let out = stdout(&["cover", "circuit:5", "--t", "2"]);
    assert!(out.starts_with("t = 2\nrho_t = 5/2\n"), "{out}");
    let out = stdout(&["bounds", "circuit:5"]);
    assert!(out.starts_with("lower = 3\nupper1 = 4\nupper2 = 3\n"), "{out}");
}

#[test]
fn weight_mode_override() {
    let g = data("weighted_c7.graph");
    let out = stdout(&["stab", g.to_str().unwrap(), "--mode", "UNIT"]);
    assert!(out.contains("alpha = 3"), "{out}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    bin().args(["rank"]).assert().code(2);
    bin().args(["handelman", "circuit:5", "--t", "0"]).assert().code(2);
    bin().args(["rank", "no-such-file.graph"]).assert().code(2);
    bin().args(["stab", "circuit:5", "--mode", "CUSTOM"]).assert().code(2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "nodes 3\nedge 1 4\n").unwrap();
    bin().args(["stab", bad.to_str().unwrap()]).assert().code(2);
}

#[test]
fn guard_failures_exit_one() {
    bin()
        .args(["handelman", "random:40:0.5:1", "--t", "9"])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("size guard"));
}

#[test]
fn reproduce_subset_is_deterministic() {
    let a = stdout(&["reproduce", "--only", "1,7", "--format", "tsv"]);
    let b = stdout(&["reproduce", "--only", "1,7", "--format", "tsv"]);
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let f: Vec<&str> = l.split('\t').collect();
                format!("{}\t{}\t{}", f[0], f[1], f[3])
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert!(a.contains("1\ttrue\t"));
}
