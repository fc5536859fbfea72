use std::io::Write;
use std::process::{Command, Output};

fn follres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_follres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const DEMO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/demo.lex");

#[test]
fn count_prints_sequence() {
    let o = follres(&["count", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,1,2,5,10,21\n");
    let o = follres(&["count", "--max", "6", "--well-nested"]);
    assert_eq!(stdout(&o), "0,1,2,4,6,9\n");
}

#[test]
fn prove_exit_codes() {
    let o = follres(&["prove", "forall y. (a * b(y)) |- a * forall x. b(x)", "--method", "both"]);
    assert_eq!(o.status.code(), Some(1));
    let o = follres(&["prove", "a, forall x. b(x) |- a * forall x. b(x)"]);
    assert_eq!(o.status.code(), Some(0));
    let o = follres(&["prove", "a * |- b"]);
    assert_eq!(o.status.code(), Some(3));
    let o = follres(&["prove"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_demo_sentence() {
    let o = follres(&["parse", "--lexicon", DEMO, "--goal", "s", "John left before Mary did"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("parses: 1"));
}

#[test]
fn unknown_word_and_bad_lexicon() {
    let mut lex = tempfile::NamedTempFile::new().unwrap();
    writeln!(lex, "John := np\nsleeps := np\\s").unwrap();
    let path = lex.path().to_str().unwrap();
    let o = follres(&["parse", "--lexicon", path, "--goal", "s", "John sleeps"]);
    assert_eq!(o.status.code(), Some(0));
    let o = follres(&["parse", "--lexicon", path, "--goal", "s", "Mary sleeps"]);
    assert_eq!(o.status.code(), Some(1));
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "John np").unwrap();
    let o = follres(&["parse", "--lexicon", bad.path().to_str().unwrap(), "--goal", "s", "John"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn deterministic_output_is_reproducible() {
    let args = ["parse", "--lexicon", DEMO, "--goal", "s", "--deterministic", "--json", "--stats", "John left before Mary did"];
    let first = follres(&args);
    let second = follres(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["elapsed"], serde_json::json!(0));
}

#[test]
fn dot_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("net.dot");
    let o = follres(&["prove", "a, a -o b |- b", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}
