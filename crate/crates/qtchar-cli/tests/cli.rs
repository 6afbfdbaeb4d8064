use std::path::PathBuf;
use std::process::{Command, Output};

fn qtchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtchar"))
        .args(args)
        .output()
        .expect("spawn qtchar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn folded_b2_fundamental_has_five_terms() {
    let o = qtchar(&[
        "char",
        "F",
        "--flavor",
        "folded-t",
        "--algebra",
        "B2",
        "--monomial",
        "Y[1;1]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("2\tY[2;t]*Y[2;t^3]^-1"));
    assert!(s.contains("# terms: 5 alpha-terms: 0 dimension: 6"));
}

#[test]
fn parse_error_exits_two() {
    let o = qtchar(&["char", "F", "--algebra", "B2", "--monomial", "Y[1;1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn unknown_subcommand_exits_two() {
    assert_eq!(qtchar(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qtchar(&["algebra", "--algebra", "Q7"]).status.code(), Some(2));
}

#[test]
fn json_carries_format_version() {
    let o = qtchar(&[
        "--json",
        "char",
        "F",
        "--flavor",
        "standard-q",
        "--algebra",
        "A3",
        "--monomial",
        "Y[2;1]",
    ]);
    let v = json(&o);
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["character"]["counts"]["distinct"], 6);
    let text = stdout(&qtchar(&["char", "F", "--algebra", "A3", "--monomial", "Y[2;1]"]));
    assert!(text.starts_with("# qtchar format 1"));
}

#[test]
fn output_is_repeatable() {
    let args = ["interp", "spec5", "--algebra", "C2", "--monomial", "Y[1;q^-1]*Y[1;q]"];
    assert_eq!(stdout(&qtchar(&args)), stdout(&qtchar(&args)));
}

#[test]
fn spec5_writes_five_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    let o = qtchar(&[
        "interp",
        "spec5",
        "--algebra",
        "C2",
        "--monomial",
        "a*Y[1;1]",
        "--out",
        &d,
    ]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["pi_q", "pi_t", "pibar_t", "pi_t_prime", "pibar_q"] {
        assert!(dir.path().join(format!("{name}.txt")).exists(), "{name}");
    }
    assert!(std::fs::read_to_string(dir.path().join("pi_t.txt")).unwrap().is_empty());
}

#[test]
fn char_check_reads_a_character_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.txt");
    std::fs::write(
        &file,
        "1\tY[2;1]\n1\tY[2;t^2]^-1*Y[1;t]\n1\tY[1;t^3]^-1*Y[2;t^2]\n1\tY[2;t^4]^-1\n",
    )
    .unwrap();
    let f = file.to_string_lossy().into_owned();
    let o = qtchar(&["char", "check", "--flavor", "folded-t", "--algebra", "B2", "--file", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::write(&file, "1\tY[2;1]\n").unwrap();
    let o = qtchar(&["char", "check", "--flavor", "folded-t", "--algebra", "B2", "--file", &f]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fold_subcommands() {
    let o = qtchar(&["fold", "invariants", "--algebra", "C2", "--monomial", "Y[2;1]"]);
    assert!(stdout(&o).contains("# terms: 4"));
    let o = qtchar(&["fold", "tchar", "--algebra", "C2", "--monomial", "Y[2;1]"]);
    assert!(stdout(&o).contains("2\tY[1;t]*Y[1;t^3]^-1"));
    assert_eq!(
        qtchar(&["fold", "check-identi", "--algebra", "B3"]).status.code(),
        Some(0)
    );
}

#[test]
fn part3_verdicts() {
    let o = qtchar(&[
        "interp",
        "check-part3",
        "--algebra",
        "C2",
        "--monomial",
        "Y[1;1]*Y[3;1]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pi_t: pass"));
}

#[test]
fn crystal_subcommands() {
    let o = qtchar(&[
        "--json",
        "crystal",
        "closure",
        "--algebra",
        "C2",
        "--monomial",
        "Y[2;1]",
    ]);
    assert_eq!(json(&o)["size"], 5);
    let set = ["Y[1;1]", "Y[1;t^2]^-1*Y[2;t]", "Y[2;t^3]^-1"];
    let mut args = vec!["crystal", "check", "--algebra", "A2", "--monomial"];
    args.extend(set);
    assert_eq!(qtchar(&args).status.code(), Some(0));
    let o = qtchar(&["crystal", "check", "--algebra", "A2", "--monomial", "Y[1;1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        qtchar(&["crystal", "conjcrys", "--algebra", "C2", "--node", "2"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn bae_fold_certifies() {
    for f in ["fold_a3_c2.json", "fold_gaudin_a3_c2.json"] {
        let o = qtchar(&["--json", "bae", "fold", "--input", &data(f)]);
        let v = json(&o);
        assert_eq!(v["symbolic_equal"], true, "{f}");
        assert_eq!(v["numeric_equal"], true, "{f}");
    }
    let o = qtchar(&["bae", "build", "--input", &data("fold_a3_c2.json")]);
    assert!(stdout(&o).contains("parameter: q"));
}

#[test]
fn bae_solve_reports_precision() {
    let o = qtchar(&["--json", "bae", "solve", "--input", &data("gaudin_b2.json")]);
    let v = json(&o);
    assert_eq!(v["precision"], 1e-10);
    assert!(v["solutions"].as_u64().unwrap() >= 1);
    for s in v["roots"].as_array().unwrap() {
        assert!(s["exact_residual"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn qq_solve_and_check() {
    for f in ["qq_a1.json", "qq_c2.json"] {
        let o = qtchar(&["--json", "bae", "qq-solve", "--input", &data(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert_eq!(json(&o)["qq_check"], true);
    }
    let o = qtchar(&["bae", "qq-solve", "--input", &data("qq_c2_bad.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible"));
}

#[test]
fn bethe_limit_pole_and_no_pole() {
    let o = qtchar(&["bae", "bethe-limit", "--input", &data("bethe_paired.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("25/9\tf1 f3"));
    let o = qtchar(&["bae", "bethe-limit", "--input", &data("bethe_control.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("# pole: true"));
}

#[test]
fn malformed_input_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{ \"algebra\": \"C2\" }").unwrap();
    let o = qtchar(&["bae", "build", "--input", &file.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_corpus_filters() {
    let o = qtchar(&["verify-corpus", "--filter", "c2.fun."]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 selected, 5 passed, 0 failed"));
    let o = qtchar(&["verify-corpus", "--filter", "no-such-fixture"]);
    assert!(stdout(&o).contains("0 selected"));
}

#[test]
fn identities_table_passes() {
    let o = qtchar(&["bae", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}
