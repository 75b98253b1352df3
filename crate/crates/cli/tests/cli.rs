use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use relrep::files::{from_json, to_canonical, Algebra, AlgebraFile, RepresentationFile, VerdictFile, WinnerRecord};
use relrep_core::games::parse_formula;
use relrep_core::relational::verify_representation;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn relrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relrep")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixtures_are_canonical() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        let text = fs::read_to_string(&p).unwrap();
        let file: AlgebraFile = from_json(&text, "fixture").unwrap();
        assert_eq!(to_canonical(&file).unwrap(), text, "{}", p.display());
    }
}

#[test]
fn validate_exit_codes() {
    let two = fixture("two_chain_min_rs.json");
    let o = relrep(&["validate", path(&two)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ok: size 2"));

    let o = relrep(&["validate", path(&fixture("bad_join_jsl.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("join-commutative"));

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"kind\": \"rs\", \"elements\": [").unwrap();
    assert_eq!(code(&relrep(&["validate", path(&broken)])), 2);
    fs::write(&broken, "{\"kind\":\"rs\",\"elements\":[\"a\"],\"compose\":[[1]],\"order\":[[1]]}").unwrap();
    assert_eq!(code(&relrep(&["validate", path(&broken)])), 2);
    assert_eq!(code(&relrep(&["validate", path(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_relrep"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&fs::read(fixture("two_chain_max_jsl.json")).unwrap()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn represent_and_verify_two_chain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    let alg = fixture("two_chain_min_rs.json");
    assert_eq!(code(&relrep(&["represent", path(&alg), "-o", path(&out)])), 0);
    let rep: RepresentationFile = from_json(&fs::read_to_string(&out).unwrap(), "rep").unwrap();
    assert_eq!(rep.base.len(), 2);
    assert_eq!(rep.relations["bot"], [[0, 0], [0, 1]]);
    assert_eq!(rep.relations["top"], [[0, 0], [0, 1], [1, 1]]);
    // The left residual of bot by itself is not preserved.
    let o = relrep(&["verify", path(&alg), path(&out)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("left-residual fails at [0, 0]"));

    let one = fixture("one_element_rs.json");
    assert_eq!(code(&relrep(&["represent", path(&one), "-o", path(&out)])), 0);
    assert_eq!(code(&relrep(&["verify", path(&one), path(&out)])), 0);
    // A representation for the wrong algebra is a schema error.
    assert_eq!(code(&relrep(&["verify", path(&alg), path(&out)])), 2);
}

#[test]
fn file_pipeline_agrees_with_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let algs = dir.path().join("algs");
    assert_eq!(code(&relrep(&["enumerate", "--kind", "rs", "--size", "2", "-o", path(&algs)])), 0);
    let mut files: Vec<PathBuf> = fs::read_dir(&algs).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 6);
    for f in files {
        let rep = dir.path().join("rep.json");
        assert_eq!(code(&relrep(&["represent", path(&f), "-o", path(&rep)])), 0);
        let verified = code(&relrep(&["verify", path(&f), path(&rep)]));

        let file: AlgebraFile = from_json(&fs::read_to_string(&f).unwrap(), "alg").unwrap();
        let Algebra::Rs(rs) = file.to_algebra().unwrap() else { panic!("rs expected") };
        let lib = relrep_core::relational::represent(&rs).unwrap();
        let expected = if verify_representation(&rs, &lib).unwrap().ok() { 0 } else { 1 };
        assert_eq!(verified, expected, "{}", f.display());
    }
}

#[test]
fn round_zero_is_an_existential_win() {
    for name in ["two_chain_max_jsl.json", "three_chain_max_min_jsl.json"] {
        let o = relrep(&["game", path(&fixture(name)), "--rounds", "0"]);
        assert_eq!(code(&o), 0);
        let v: VerdictFile = from_json(&stdout(&o), "verdict").unwrap();
        assert!(!v.goals.is_empty());
        assert!(v.goals.iter().all(|g| g.winner == WinnerRecord::Exists && g.certificate.is_none()));
    }
}

#[test]
fn certificates_replay_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let alg = fixture("reversed_table_jsl.json");
    let verdict = dir.path().join("verdict.json");
    let certs = dir.path().join("certs.json");
    // The table is not associative, so it is refused unless checking is off.
    assert_eq!(code(&relrep(&["game", path(&alg), "--rounds", "2"])), 1);
    let o = relrep(&[
        "game",
        path(&alg),
        "--rounds",
        "2",
        "--goal",
        "hi,lo",
        "--no-check",
        "-o",
        path(&verdict),
        "--certificates",
        path(&certs),
    ]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = from_json(&fs::read_to_string(&verdict).unwrap(), "verdict").unwrap();
    assert_eq!(v.goals.len(), 1);
    assert_eq!(v.goals[0].winner, WinnerRecord::Forall);
    assert!(fs::read_to_string(&certs).unwrap().starts_with("{\"1,0\":{\"play\""));
    assert_eq!(code(&relrep(&["check-verdict", path(&alg), path(&verdict)])), 0);

    // The same tree does not win in one round.
    let mut short = v.clone();
    short.depth = 1;
    fs::write(&verdict, to_canonical(&short).unwrap()).unwrap();
    let o = relrep(&["check-verdict", path(&alg), path(&verdict)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("REJECTED"));

    // Against another algebra the hash does not match.
    fs::write(&verdict, to_canonical(&v).unwrap()).unwrap();
    assert_eq!(code(&relrep(&["check-verdict", path(&fixture("two_chain_max_jsl.json")), path(&verdict)])), 1);
}

#[test]
fn budgets_and_caps() {
    let alg = fixture("two_chain_max_jsl.json");
    assert_eq!(code(&relrep(&["game", path(&alg), "--rounds", "7"])), 3);
    assert_eq!(code(&relrep(&["game", path(&alg), "--rounds", "7", "--depth-cap", "8"])), 0);
    assert_eq!(code(&relrep(&["enumerate", "--kind", "jsl", "--size", "4"])), 3);
    assert_eq!(code(&relrep(&["extract-rep", path(&alg), "--nodes", "1", "--rounds", "4"])), 3);
    assert_eq!(code(&relrep(&["game", path(&alg), "--rounds", "1", "--goal", "id,top"])), 1);
}

#[test]
fn extract_rep_writes_a_representation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    let o = relrep(&[
        "extract-rep",
        path(&fixture("two_chain_max_jsl.json")),
        "--nodes",
        "6",
        "--rounds",
        "20",
        "-o",
        path(&out),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verified"));
    let rep: RepresentationFile = from_json(&fs::read_to_string(&out).unwrap(), "rep").unwrap();
    assert_eq!(rep.relations["id"], [[0, 0], [1, 1]]);
    assert_eq!(rep.relations["top"], [[0, 0], [0, 1], [1, 1]]);
}

#[test]
fn axioms_reparse_and_evaluate() {
    let o = relrep(&["axioms", "--rounds", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for (n, line) in lines.iter().enumerate() {
        let body = line.strip_prefix(&format!("rho_{n}: ")).unwrap();
        parse_formula(body).unwrap();
    }
    let o = relrep(&["eval-axiom", path(&fixture("three_chain_max_min_jsl.json")), "--rounds", "1"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn enumerate_lines_are_canonical() {
    let o = relrep(&["enumerate", "--kind", "jsl", "--size", "2", "--modulo-iso"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    for line in text.lines() {
        let f: AlgebraFile = from_json(line, "line").unwrap();
        assert_eq!(to_canonical(&f).unwrap(), format!("{line}\n"));
    }
}
