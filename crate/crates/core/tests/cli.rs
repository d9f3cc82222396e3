use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn binact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binact")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_trivial_action() {
    let o = binact(&["validate", "--action", path_str(&data("trivial_z2.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "group z2 of order 2, carrier of size 2\nbinary action axioms (identity, composition): OK\n"
    );
}

#[test]
fn orbits_of_coset_action() {
    let o = binact(&["orbits", "--action", path_str(&data("s3_a3_conj.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "distributive: yes, 2 orbits\n\
         class  size  members\n\
         0      3     [0, 3, 4]\n\
         1      3     [1, 2, 5]\n"
    );
}

#[test]
fn enumerate_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z2.jsonl");
    let o = binact(&["enumerate", "--group", path_str(&data("z2.json")), "--carrier", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "group z2 acting on 2 points\n\
         quantity            value\n\
         raw_count           4\n\
         canonical_count     3\n\
         distributive_count  2\n"
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    let summary: serde_json::Value = serde_json::from_str(lines[4]).unwrap();
    assert_eq!(summary["raw_count"], 4);
    assert_eq!(summary["distributive_count"], 2);
    for (i, line) in lines[..4].iter().enumerate() {
        let file = dir.path().join(format!("a{i}.json"));
        std::fs::write(&file, line).unwrap();
        assert_eq!(binact(&["validate", "--action", path_str(&file)]).status.code(), Some(0));
    }
}

#[test]
fn non_distributive_action_fails_with_witness() {
    let o = binact(&["distributive", "--action", path_str(&data("identity_swap.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "FAILED: distributive: no; g=1 h=1 x=1 x'=0 x''=0: g(h(x,x'),h(x,x'')) = 0 but h(x,g(x',x'')) = 1\n"
    );
}

#[test]
fn invalid_table_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("projection.json");
    std::fs::write(&file, r#"{"group":"z2","carrier":2,"table":[[[0,1],[0,1]],[[0,0],[1,1]]]}"#).unwrap();
    let o = binact(&["validate", "--action", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAILED: "));
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(binact(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(binact(&["enumerate", "--group", "z2"]).status.code(), Some(2));
    let missing = binact(&["validate", "--action", "/nonexistent/action.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/action.json"));
    assert_eq!(binact(&["enumerate", "--group", "nosuchgroup", "--carrier", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(binact(&["validate", "--action", path_str(&broken)]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(binact(&["--help"]).status.code(), Some(0));
}

#[test]
fn emitted_files_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);

    let conj = p("conj.json");
    assert_eq!(
        binact(&["conjugation", "--group", "s3", "--generators", "(12)", "--out", path_str(&conj)]).status.code(),
        Some(0)
    );
    let o = binact(&["orbits", "--action", path_str(&conj)]);
    assert!(stdout(&o).starts_with("distributive: yes, 3 orbits\n"));

    let induced = p("induced.json");
    assert_eq!(
        binact(&["induce", "--action", path_str(&conj), "--point", "1", "--out", path_str(&induced)]).status.code(),
        Some(0)
    );
    assert_eq!(binact(&["validate", "--ordinary", path_str(&induced)]).status.code(), Some(0));

    let embedded = p("embedded.json");
    assert_eq!(
        binact(&["embed", "--ordinary", path_str(&induced), "--out", path_str(&embedded)]).status.code(),
        Some(0)
    );
    assert_eq!(binact(&["validate", "--action", path_str(&embedded)]).status.code(), Some(0));
    assert_eq!(binact(&["distributive", "--action", path_str(&embedded)]).status.code(), Some(0));

    let op = p("op.json");
    std::fs::write(&op, r#"{"size":3,"table":[[1,2,0],[0,1,2],[2,1,0]]}"#).unwrap();
    let inverse = p("inverse.json");
    assert_eq!(binact(&["monoid", "--op", path_str(&op), "--out", path_str(&inverse)]).status.code(), Some(0));
    assert_eq!(binact(&["validate", "--op", path_str(&inverse)]).status.code(), Some(0));
    let product = binact(&["monoid", "--op", path_str(&op), "--with", path_str(&inverse)]);
    assert_eq!(stdout(&product), "op * with = [[0, 1, 2], [0, 1, 2], [0, 1, 2]]\n");

    let quotient = p("quotient.json");
    assert_eq!(binact(&["quotient", "--action", path_str(&conj), "--out", path_str(&quotient)]).status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&quotient).unwrap()).unwrap();
    let topology = p("quotient_topology.json");
    std::fs::write(&topology, report["topology"].to_string()).unwrap();
    assert_eq!(binact(&["validate", "--topology", path_str(&topology)]).status.code(), Some(0));
}

#[test]
fn singular_operation_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let op = dir.path().join("op.json");
    std::fs::write(&op, r#"{"size":2,"table":[[0,1],[0,0]]}"#).unwrap();
    let o = binact(&["monoid", "--op", path_str(&op)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invertible_count() {
    let o = binact(&["monoid", "--invertible-count", "3"]);
    assert_eq!(stdout(&o), "invertible binary operations on 3 points: 216\n");
}

#[test]
fn topology_probes_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("probes.jsonl");
    let action = data("trivial_z2.json");
    let args = [
        "topology-check",
        "--action",
        path_str(&action),
        "--all-topologies",
        "--probe-non-hausdorff",
        "--out",
        path_str(&out),
    ];
    let first = binact(&args);
    assert_eq!(first.status.code(), Some(0));
    let records = std::fs::read_to_string(&out).unwrap();
    assert!(records.lines().count() > 0);
    for line in records.lines() {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        if r["hypotheses_met"] == true {
            assert_eq!(r["outcome"], true, "{line}");
        }
    }
    assert_eq!(binact(&args).stdout, first.stdout);
}

#[test]
fn output_is_byte_stable_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_binact"))
            .env("BINACT_THREADS", threads)
            .args(["witnesses", "--group", "s3", "--carrier", "3"])
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(run("4"), one);
    assert_eq!(run("1"), one);
}
