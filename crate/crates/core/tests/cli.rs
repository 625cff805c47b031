use std::path::Path;
use std::process::{Command, Output};

use legendre::number_theory::{format_spectrum_table, spectrum_rows};
use legendre::oracle;

fn legendre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legendre"))
        .args(args)
        .env_remove("LP_EPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rec_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rec"))
        .map(|p| p.to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn spectrum_is_a_thin_binding() {
    let o = legendre(&["spectrum", "129"]);
    assert!(o.status.success());
    let table = format_spectrum_table(&spectrum_rows(129).unwrap());
    assert!(stdout(&o).starts_with(&table));
    assert!(stdout(&o).contains("spectrum (5 pairs)"));
}

#[test]
fn exit_codes() {
    // validation
    assert_eq!(legendre(&["spectrum", "118"]).status.code(), Some(2));
    assert_eq!(legendre(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        legendre(&[
            "decode",
            "--l",
            "117",
            "--subgroup",
            "1,16,22",
            "--polarity",
            "plus",
            "--indices",
            "1,2"
        ])
        .status
        .code(),
        Some(2)
    );
    // verification
    assert_eq!(
        legendre(&["verify", "-a", "+++--", "-b", "+++--"])
            .status
            .code(),
        Some(3)
    );
    // I/O
    assert_eq!(
        legendre(&["verify", "--pairs", "/nonexistent/pairs.json"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        legendre(&["verify", "-a", "++-", "-b", "++-"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn tolerance_from_environment() {
    let run = |eps: &str| {
        Command::new(env!("CARGO_BIN_EXE_legendre"))
            .args(["oracle", "7", "--psd-survivors"])
            .env("LP_EPS", eps)
            .output()
            .unwrap()
    };
    let count = |o: &Output| -> usize {
        let s = stdout(o);
        s.lines()
            .last()
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    let tight = run("1e-9");
    let loose = run("1000");
    assert!(tight.status.success() && loose.status.success());
    // a huge tolerance lets every normalized sequence through
    assert_eq!(count(&loose), 35);
    assert!(count(&tight) < 35);
}

#[test]
fn search_match_verify_hadamard() {
    let dir = tempfile::tempdir().unwrap();
    let recs = dir.path().join("recs");
    for (comp, pol) in [("7x1", "plus"), ("6x1", "minus")] {
        let o = legendre(&[
            "search",
            "--l",
            "13",
            "--subgroup",
            "1",
            "--composition",
            comp,
            "--polarity",
            pol,
            "--out",
            recs.to_str().unwrap(),
            "--workers",
            "3",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let files = rec_files(&recs);
    assert_eq!(files.len(), 6);
    let pairs = dir.path().join("pairs.json");
    let mut args = vec![
        "match",
        "--l",
        "13",
        "--emit-pairs",
        pairs.to_str().unwrap(),
        "--run-size",
        "7",
    ];
    args.extend(files.iter().map(String::as_str));
    let o = legendre(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("false candidates 0"));

    let report = dir.path().join("report.txt");
    let o = legendre(&[
        "verify",
        "--l",
        "13",
        "--pairs",
        pairs.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&report).unwrap(), stdout(&o));

    let matrices = dir.path().join("matrices");
    let o = legendre(&[
        "hadamard",
        "--pairs",
        pairs.to_str().unwrap(),
        "--out",
        matrices.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let grid = std::fs::read_dir(&matrices)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let text = std::fs::read_to_string(grid).unwrap();
    assert_eq!(text.lines().count(), 28);
    assert!(text
        .lines()
        .all(|l| l.len() == 28 && l.chars().all(|c| c == '+' || c == '-')));
}

#[test]
fn pipeline_and_manifest_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let o = legendre(&[
        "pipeline",
        "--l",
        "11",
        "--out",
        a.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let b = dir.path().join("b");
    let manifest = a.join("run.json");
    let o = legendre(&[
        "pipeline",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for f in ["pairs.json", "report.txt", "run.json"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let text = std::fs::read_to_string(a.join("report.txt")).unwrap();
    let found = text.lines().filter(|l| l.starts_with("pair ")).count();
    assert_eq!(found, oracle::legendre_pairs(11, None).unwrap().len());
}

#[test]
fn finished_search_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = |range: &str, every: &str| -> Vec<String> {
        [
            "search",
            "--l",
            "117",
            "--subgroup",
            "1,16,22",
            "--composition",
            "2x1+19x3",
            "--polarity",
            "plus",
            "--range",
            range,
            "--checkpoint-every",
            every,
            "--out",
        ]
        .iter()
        .map(|s| s.to_string())
        .chain([dir.path().to_string_lossy().into_owned()])
        .collect()
    };
    let run = |v: Vec<String>| {
        let v: Vec<&str> = v.iter().map(String::as_str).collect();
        legendre(&v)
    };
    assert!(run(args("0:20000", "5000")).status.success());
    let rec = rec_files(dir.path()).pop().unwrap();
    let full = std::fs::read(&rec).unwrap();
    // a second invocation sees the finished checkpoint and leaves the file alone
    let o = run(args("0:20000", "5000"));
    assert!(stdout(&o).contains("reused"));
    assert_eq!(std::fs::read(&rec).unwrap(), full);
}
