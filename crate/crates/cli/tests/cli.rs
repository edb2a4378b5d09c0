use std::process::{Command, Output};

fn distcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distcolor")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(o: &Output) -> String {
    stdout(o).lines().skip(1).map(|l| format!("{l}\n")).collect()
}

#[test]
fn stats_on_c5_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    std::fs::write(&path, "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let o = distcolor(&["stats", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o), "n=5 m=5 delta=2 girth=5 mad=2 eq1=-10\nRESULT: OK\n");
}

#[test]
fn exact_petersen() {
    let o = distcolor(&["color2", "--exact", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "chi2=10"), "{out}");
    assert!(out.ends_with("RESULT: VALID\n"));
}

#[test]
fn corpus_summary() {
    let o = distcolor(&["corpus", "--count", "100", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "detect=100/100 conserved=100/100 colored=100/100"), "{out}");
}

#[test]
fn reports_are_reproducible() {
    for args in [
        &["gen", "random_sparse:80:10", "--seed", "9"][..],
        &["gadget", "fuzz", "e", "--trials", "300", "--seed", "4"][..],
        &["color2", "--gen", "random_sparse:90:10", "--random-lists", "--seed", "2"][..],
    ] {
        assert_eq!(distcolor(args).stdout, distcolor(args).stdout, "{args:?}");
    }
}

#[test]
fn header_records_config_and_seed() {
    let o = distcolor(&["gen", "petersen", "--seed", "17"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with("# distcolor Gen") && first.contains("petersen") && first.ends_with("seed=17"), "{first}");
}

#[test]
fn gen_output_is_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = distcolor(&["gen", "wegner_g3:8", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = distcolor(&["stats", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("n=14 m=") && stdout(&o).contains("delta=8 girth=3"));
    let o = distcolor(&["square", path.to_str().unwrap()]);
    let g = distcolor::graph::parse_edge_list(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 14);
}

#[test]
fn exit_codes() {
    assert_eq!(distcolor(&["bogus"]).status.code(), Some(2));
    assert_eq!(distcolor(&["stats", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(distcolor(&["stats", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(distcolor(&["color2", "--gen", "petersen"]).status.code(), Some(2));
    assert_eq!(distcolor(&["gen", "wegner_g3:7"]).status.code(), Some(2));
    let neg = distcolor(&["choosable", "--gen", "cycle:5", "--size", "2"]);
    assert_eq!(neg.status.code(), Some(1));
    assert!(stdout(&neg).ends_with("RESULT: NOT_CHOOSABLE\n"));
    let over = distcolor(&["choosable", "--gen", "cycle:5", "--size", "5"]);
    assert_eq!(over.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&over.stderr).contains("budget"));
    let ok = distcolor(&["choosable", "--gen", "cycle:5", "--size", "5", "--mode", "randomized", "--trials", "300"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).ends_with("RESULT: NO_FAILURE_FOUND\n"));
}

#[test]
fn bad_input_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 2\n0 1\n0 1\n").unwrap();
    let o = distcolor(&["stats", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate edge"));
}

#[test]
fn discharge_format() {
    let o = distcolor(&["discharge", "--gen", "random_sparse:60:10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let transfer = out.lines().find(|l| l.contains(" -> ")).unwrap();
    let parts: Vec<&str> = transfer.split(" : ").collect();
    assert_eq!(parts.len(), 3);
    assert!(["R0", "R1", "R2(i)", "R2(ii)", "R2(iii)", "R2(iv)", "R2(v)"].contains(&parts[2]));
    assert!(out.lines().any(|l| l.starts_with("0 : ") && l.split(" : ").count() == 4));
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("RESULT: CONSERVED=true NONNEG="), "{last}");
    assert_eq!(distcolor(&["discharge", "--gen", "cycle:5"]).status.code(), Some(2));
}

#[test]
fn detect_and_constructive() {
    let o = distcolor(&["detect", "--gen", "random_sparse:60:10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("RESULT: FOUND L"));
    let o = distcolor(&["color2", "--gen", "random_sparse:120:10", "--seed", "3", "--reverse-order", "--random-lists"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("RESULT: VALID\n"));
    let o = distcolor(&["detect", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("RESULT: NONE\n"));
}

#[test]
fn lists_file_and_exact_unsat() {
    let dir = tempfile::tempdir().unwrap();
    let lists = dir.path().join("l.txt");
    std::fs::write(&lists, "0: 0,1\n1: 0,1\n2: 0,1\n").unwrap();
    let o = distcolor(&["color2", "--exact", "--gen", "cycle:3", "--lists", lists.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("RESULT: UNSAT\n"));
    std::fs::write(&lists, "0: 0,1\n1: 1,2\n2: 2,0\n").unwrap();
    let o = distcolor(&["color2", "--exact", "--gen", "cycle:3", "--lists", lists.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gadget_commands() {
    let o = distcolor(&["gadget", "verify", "a", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(a) profile=2,2,3,2 checked=522 choosable"));
    let o = distcolor(&["gadget", "verify", "all", "--trials", "500"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("RESULT: ALL_CHOOSABLE\n"));
    let o = distcolor(&["gadget", "show", "(e)"]);
    assert!(stdout(&o).contains("# gadget e") || stdout(&o).contains("# gadget (e)"));
    assert_eq!(distcolor(&["gadget", "show", "z"]).status.code(), Some(2));
    let o = distcolor(&["gadget", "fuzz", "all", "--trials", "2000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
