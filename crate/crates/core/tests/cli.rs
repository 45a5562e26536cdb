use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn polyrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrat")).args(args).output().unwrap()
}

fn polyrat_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyrat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn fibonacci_series() {
    let o = polyrat(&["convert", "--from", "lrs", "--to", "series", &data("fib.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x/(1 - x - x^2)");
}

#[test]
fn deterministic_loop_classifies_with_its_series() {
    let o = polyrat(&["classify", "--from", "wa", &data("even_threes.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("polynomially ambiguous, degree 0; series 2/(1 - 3x^2)"), "{out}");
}

#[test]
fn constant_sequence_terms() {
    let o = polyrat(&["eval", "--from", "expr", "geo(1,1)", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1 1");
}

#[test]
fn exit_codes() {
    assert_eq!(polyrat(&["eval", "--from", "expr", "geo("]).status.code(), Some(1));
    assert_eq!(polyrat(&["frobnicate"]).status.code(), Some(1));
    let o = polyrat(&["convert", "--from", "lrs", "--to", "expr", &data("fib.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 - x - x^2"));
    let o = polyrat(&["classify", &data("fib.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("witness 1 - x - x^2"));
    assert_eq!(polyrat(&["eval", "/no/such/dir/x.json"]).status.code(), Some(1));
}

#[test]
fn standard_input() {
    let o = polyrat_stdin(&["eval", "-", "-n", "4"], r#"{"coeffs":["2"],"init":["1"]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 2 4 8");
    let o = polyrat_stdin(&["eval", "--from", "expr", "-", "-n", "4"], "arith(1,2)");
    assert_eq!(stdout(&o), "1 3 5 7");
}

#[test]
fn converted_output_is_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, &str, &str)] = &[
        ("expr", "shuffle(geo(1,2), arith(0,1)) + shift(3, fin[1,2] + geo(3,-1))", "wa"),
        ("expr", "arith(1,1) * geo(2,3)", "ccra"),
        ("expr", "arith(0,1) + geo(1,-2)", "lrs"),
        ("expr", "geo(1,1/2)", "series"),
        ("wa", "threes_then_fives.json", "expr"),
        ("wa", "fives.json", "lrs"),
        ("lrs", "fib.json", "series"),
    ];
    for (i, &(from, input, to)) in cases.iter().enumerate() {
        let input = if input.ends_with(".json") { data(input) } else { input.to_string() };
        let o = polyrat(&["convert", "--from", from, "--to", to, &input]);
        assert_eq!(o.status.code(), Some(0), "{from}->{to}: {}", String::from_utf8_lossy(&o.stderr));
        let path = dir.path().join(format!("out{i}"));
        std::fs::write(&path, &o.stdout).unwrap();
        let path = path.to_string_lossy().into_owned();
        let e = polyrat(&["equiv", "--from", from, "--from-b", to, &input, &path]);
        assert_eq!(e.status.code(), Some(0), "{from}->{to}: {}", String::from_utf8_lossy(&e.stderr));
        assert_eq!(stdout(&e), "true", "{from}->{to}");
        let a = stdout(&polyrat(&["eval", "--from", from, &input, "-n", "40"]));
        let b = stdout(&polyrat(&["eval", "--from", to, &path, "-n", "40"]));
        assert_eq!(a, b);
    }
}

#[test]
fn inequivalent_inputs() {
    let o = polyrat(&["equiv", "--from", "wa", &data("fives.json"), &data("even_threes.json")]);
    assert_eq!(stdout(&o), "false");
    let o = polyrat(&["--format", "json", "equiv", "--from", "expr", "geo(1,2)", "geo(1,3)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
}

#[test]
fn byte_deterministic() {
    let runs: &[&[&str]] = &[
        &["convert", "--to", "ccra", "shuffle(geo(1,2), arith(0,1))"],
        &["--format", "json", "decompose", "--from", "wa", &data("threes_then_fives.json")],
        &["classify", &data("fib.json"), &data("fives.json"), &data("fib_cra.json")],
        &["pfrac", "--from", "series", r#"{"num":["1"],"den":["1","-3","2"]}"#],
    ];
    for args in runs {
        let first = polyrat(args);
        for _ in 0..3 {
            let again = polyrat(args);
            assert_eq!(again.stdout, first.stdout, "{args:?}");
            assert_eq!(again.status.code(), first.status.code());
        }
    }
}

#[test]
fn batch_classify_keeps_input_order() {
    let files = [data("fives.json"), data("fib.json"), data("fib_cra.json"), data("even_threes.json")];
    let args: Vec<&str> = std::iter::once("classify").chain(files.iter().map(|s| s.as_str())).collect();
    let o = polyrat(&args);
    // one negative verdict among them
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    for (line, f) in lines.iter().zip(&files) {
        assert!(line.starts_with(&format!("{f}: ")), "{line}");
    }
    assert!(lines[2].contains("not copyless (register x1"));
}

#[test]
fn partial_fractions() {
    let o = polyrat(&["pfrac", "--from", "series", r#"{"num":["1"],"den":["1","-3","2"]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(-1)/(1 - x)\n(2)/(1 - 2x)");
}
