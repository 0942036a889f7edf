use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use torsionlab_cli::exec::{execute, Options, Status};
use torsionlab_cli::script::{parse, Stmt};
use torsionlab_core::registry::example;
use torsionlab_core::Error;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torsionlab"));
    c.env_remove("TORSIONLAB_SEED");
    c
}

fn scripts_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn shipped_scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(scripts_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "tl"))
        .collect();
    v.sort();
    v
}

fn temp_script(name: &str, body: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("TORSIONLAB_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "golden file {name} differs");
}

#[test]
fn nil40a_script_parses_to_registry_family() {
    let src = std::fs::read_to_string(scripts_dir().join("nil40A.tl")).unwrap();
    let s = parse(&src).unwrap();
    let Stmt::Family(d) = &s.statements[0] else {
        panic!("first statement is not a family")
    };
    assert_eq!(d.levels, Some((4, 10)));
    assert_eq!(d.window, Some(3));
    assert_eq!(d.body.as_ref().unwrap(), &example("nil40A").unwrap().family());
    assert_eq!(s.statements[1], Stmt::Example { tag: "nil40A".into() });
    assert_eq!(s.statements.len(), 2);
}

#[test]
fn shipped_scripts_round_trip() {
    let scripts = shipped_scripts();
    assert!(scripts.len() >= 4);
    for p in scripts {
        let s = parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let printed = s.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(s, again, "{}", p.display());
        assert_eq!(printed, again.to_string());
    }
}

#[test]
fn golden_reports() {
    let o = run(&["run", scripts_dir().join("torsion.tl").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    golden("torsion.txt", &stdout(&o));
    let o = run(&["--format", "json", "run", scripts_dir().join("nil40A.tl").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    golden("nil40A.json", &stdout(&o));
    let o = run(&["examples", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    golden("examples_list.txt", &stdout(&o));
}

#[test]
fn reports_are_deterministic() {
    for p in shipped_scripts() {
        for format in ["text", "json"] {
            let args = ["--format", format, "run", p.to_str().unwrap()];
            let (a, b) = (run(&args), run(&args));
            assert_eq!(a.stdout, b.stdout, "{}", p.display());
            assert_eq!(a.status.code(), Some(0), "{}", p.display());
        }
    }
}

#[test]
fn harness_subcommand_and_seed_variable() {
    let o = run(&["harness", "--instances", "30", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed: 5\n"));
    assert!(stdout(&o).contains("violation_count: 0\n"));
    let o = bin()
        .env("TORSIONLAB_SEED", "11")
        .args(["--format", "json", "harness", "--instances", "10"])
        .output()
        .unwrap();
    assert!(stdout(&o).contains("\"seed\": 11"));
    let o = run(&["harness", "--instances", "10"]);
    assert!(stdout(&o).contains("seed: 42\n"));
}

#[test]
fn examples_subcommand() {
    let o = run(&["examples", "--run", "nil40C", "--levels", "4..7", "--window", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("status: PASS"));
    assert!(!out.contains("FAIL"));
    assert_eq!(run(&["examples", "--run", "nil40E"]).status.code(), Some(2));
    assert_eq!(run(&["examples", "--run", "nil40A", "--window", "9"]).status.code(), Some(2));
    assert_eq!(run(&["examples"]).status.code(), Some(2));
    assert_eq!(run(&["examples", "--run", "nil40A", "--levels", "4-6"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let bad = temp_script("syntax.tl", "ring vars X[0..2]\nideal a = <");
    let o = run(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 12"), "{err}");

    let mismatch = temp_script(
        "mismatch.tl",
        "ring R = vars X[0..1]\nideal a = < X0 >\nring S = vars X[0..2]\nideal b = < X1 >\nquery gamma(a; b)\nquery radical(b)",
    );
    let o = run(&["run", mismatch.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("error: operands live in different rings"), "{out}");
    assert!(out.contains("status: error"));
    assert!(!out.contains("query radical"));

    let failing = temp_script(
        "failing.tl",
        "ring vars X[0..1]\ncheck membership(X0; <X0*X1>)\ncheck includes(<X0>; <X0*X1>)",
    );
    let o = run(&["run", failing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("status: FAIL") && out.contains("status: PASS"));
    assert!(out.contains("failed: 1"));

    assert_eq!(run(&["run", "/nonexistent/script.tl"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--max-degree", "x", "harness"]).status.code(), Some(2));
}

#[test]
fn unit_ideal_fairness_is_all_true() {
    let s = parse("ring vars X[0..2] rules { X[i]^2 -> 0 for i in 0..2 }\nideal b = < X0*X1 >\ncheck fairness(<1>; b)").unwrap();
    let o = execute(&s, &Options::default());
    assert_eq!(o.status, Status::Ok);
    let text = o.report.render_text();
    assert!(!text.contains("holds: false"));
    assert_eq!(text.matches("holds: true").count(), 6);
    assert!(text.contains("centred_witness_ok: true") && text.contains("half_centred_witness_ok: true"));
}

#[test]
fn semantic_errors() {
    for src in [
        "ideal a = < X0 >",
        "ring vars X[0..1]\nideal a = < X[2] >",
        "ring vars X[0..1]\nquery radical(c)",
        "ring vars X[0..1]\nideal a = < Y0 >",
        "ring vars X[0..N]",
        "family nil40Z",
        "family nil40A levels 4..5 window 3",
        "ring vars X[0..1] rules { X0*X1 -> X0; X1^2 -> 0 }",
        "ring vars X[0..1]\nquery membership(<X0>; <X1>)",
        "ring vars X[0..1]\nquery ass(<X0 + X1>)",
    ] {
        let s = parse(src).unwrap();
        let o = execute(&s, &Options::default());
        assert_eq!(o.status, Status::Error, "{src}");
    }
    assert!(matches!(parse("check radical(a)"), Err(Error::Pattern(_))));
}

#[test]
fn script_family_overrides_registry() {
    let src = "family nil40A levels 3..6 window 2 {\n\
               ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N }\n\
               ideal a = < X[i] for i in 0..N >\n\
               ideal b = < X[i]*a^(i + 1) for i in 0..N >\n\
               }\nrun example nil40A";
    let o = execute(&parse(src).unwrap(), &Options::default());
    assert_eq!(o.status, Status::Failed);
    let o = execute(&parse("family nil40B levels 3..6 window 2\nrun example nil40B").unwrap(), &Options::default());
    assert_eq!(o.status, Status::Ok);
    assert!(o.report.render_text().contains("evidence: 3:true 4:true 5:true 6:true"));
}
