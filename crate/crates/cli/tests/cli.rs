use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higgscalc")).args(args).output().expect("binary runs")
}

fn run_threads(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higgscalc"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decompose_examples() {
    let o = run(&["decompose", "S^2(Omega1) (x) Omega1", "--dim", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "Omega1 (x) L^3 (+) S^3(Omega1)");

    let o = run(&["decompose", "Wedge^2(Wedge^2(Omega1))", "--dim", "3"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "Omega1 (x) L^4");

    let o = run(&["decompose", "L^0"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "O");
    assert!(out.trim_end().ends_with("rank 1"));
}

#[test]
fn decompose_json_and_latex() {
    let o = run(&["decompose", "S^2(Omega1) (x) Omega1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 6);
    assert_eq!(v["summands"].as_array().unwrap().len(), 2);
    let o = run(&["decompose", "S^3(Omega1)", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "S^{3}\\Omega^1_{\\overline X}(\\log D)");
}

#[test]
fn reduce_e1_shows_display_and_bullets() {
    let o = run(&["reduce", "E1", "--dim", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("H0 (0,1): L^-1"));
    assert!(out.contains("H1 (1,0): S^2(Omega1) (x) L^-1"));
    assert!(out.contains("H2 (1,0): Omega1 (x) L^2"));
    assert!(out.contains("H^0(S^2(Omega1) (x) L^-1[no log poles]) = 0 implies IH^1(X, E1) = 0"));
    assert!(out.contains("IH^1(X, E1) = 0 implies H^0(S^2(Omega1) (x) L^-1(-D)) = 0"));
    assert!(out.contains("axioms: none"));
}

#[test]
fn reduce_s2e2_latex() {
    let o = run(&["reduce", "S^2(E2)", "--dim", "2", "--format", "latex"]);
    let want = "S^{2}\\Omega^1_{\\overline X}(\\log D) \\otimes L^{-4} \\xrightarrow{0} S^{3}\\Omega^1_{\\overline X}(\\log D) \\otimes L^{-4} \\xrightarrow{0} L^{5}";
    assert_eq!(stdout(&o).trim(), want);
}

#[test]
fn reduce_named_quotient_with_axioms() {
    let o = run(&["reduce", "named:Cprime", "--dim", "3", "--axioms", "saper,nefBig,paperTheorem9", "--format", "json", "--chains"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["axioms"], serde_json::json!(["nefBig", "saperRegular", "paperTheorem9"]));
    let degrees = v["reduced"]["degrees"].as_array().unwrap();
    assert!(degrees[2]["pieces"].as_array().unwrap().is_empty());
    let statements = v["statements"].as_array().unwrap();
    assert!(!statements.is_empty());
    assert!(statements.iter().all(|s| s.get("chain").is_some()));
}

#[test]
fn vanishing_report_table() {
    let o = run(&["vanishing-report", "--max-n", "6", "--max-m", "8", "--axioms", "saper", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let (n, m) = (row["n"].as_u64().unwrap(), row["m"].as_u64().unwrap());
        let derived = row["statement"]["status"] == "derived";
        assert_eq!(derived, m <= 2 * n - 3, "({n},{m})");
    }
    let o = run(&["vanishing-report", "--axioms", "saper,paperTheorem9"]);
    assert!(!stdout(&o).contains(" open "));
    let o = run(&["vanishing-report", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_passes_with_known_discrepancies() {
    let o = run(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let summary = out.lines().last().unwrap();
    assert!(summary.ends_with("0 unexpected diffs"), "{summary}");
    assert!(out.contains("known  (C) (n=3)"));
    assert!(out.contains("known  (B) (n=3)"));
    assert!(out.contains("match  S^2(E2) (n=2)"));
}

#[test]
fn exit_codes_and_one_line_diagnostics() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["decompose", "S^2("], 2, "error[parse]"),
        (&["reduce", "E1", "--axioms", "bogus"], 2, "error[parse]"),
        (&["reduce", "named:Z"], 3, "error[eval]"),
        (&["reduce", "pr(Wedge^3(E1))"], 3, "error[eval]"),
        (&["reduce", "Wedge^4(S^3(V))", "--dim", "3", "--limit", "100"], 4, "error[resources]"),
        (&["decompose", "O", "--dim", "0"], 2, "error[parse]"),
    ];
    for (args, code, prefix) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(prefix), "{err}");
    }
    // clap usage errors also exit 2
    assert_eq!(run(&["decompose", "O", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("higgscalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e1.json");
    let o = run(&["reduce", "E1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["reduced"]["expression"], "E1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["reduce", "named:A", "--dim", "2", "--format", "json", "--axioms", "all", "--chains"][..],
        &["reduce", "S^2(E1)", "--dim", "3", "--format", "json"][..],
        &["verify-paper", "--format", "json"][..],
    ] {
        let a = run_threads(args, 1);
        let b = run_threads(args, 4);
        let c = run_threads(args, 4);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(b.stdout, c.stdout, "{args:?}");
    }
}
