use std::process::Command;

use shdual::qsym::{QSymF, QSymG, SchurExpansion};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("shdual").chain(args.iter().copied());
    let code = shdual::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn deg_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("shdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn expand_p_in_f() {
    let (code, out, _) = run(&["expand", "P", "[3,1]", "--basis", "F"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 F{1}\n2 F{2}\n1 F{3}\n1 F{1,2}\n2 F{1,3}\n1 F{2,3}\n");
}

#[test]
fn expand_schur_of_p() {
    let (code, out, _) = run(&["expand", "--schur-of", "P", "[3,1]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 s[3,1]\n1 s[2,2]\n1 s[2,1,1]\n");
}

#[test]
fn expansions_round_trip() {
    for (shape, n) in [("[3,1]", 4), ("[4,2,1]", 7), ("[5]", 5)] {
        let (_, out, _) = run(&["expand", "Q", shape]);
        assert_eq!(QSymF::parse_lines(&out, n).unwrap().to_lines(), out);
    }
    let (_, out, _) = run(&["expand", "P", "[4,2,1]", "--basis", "G"]);
    assert_eq!(QSymG::parse_lines(&out, 7).unwrap().to_lines(), out);
    let (_, out, _) = run(&["expand", "--schur-of", "Q", "[4,2]"]);
    assert_eq!(SchurExpansion::parse_lines(&out, 6).unwrap().to_lines("s"), out);
    let (_, out, _) = run(&["expand", "schur", "[3,2,1]"]);
    assert_eq!(QSymF::parse_lines(&out, 6).unwrap().to_lines(), out);
}

#[test]
fn enumerate_counts() {
    let (code, out, _) = run(&["--porcelain", "enumerate", "syt", "[3,2]"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("count 5\n"));
    let (_, out, _) = run(&["--porcelain", "enumerate", "shsyt", "[3,1]"]);
    assert_eq!(out, "tableau 3,1,2,4\ntableau 4,1,2,3\ncount 2\n");
    let (_, out, _) = run(&["enumerate", "signed", "[2,1]"]);
    assert!(out.ends_with("count 2\n"));
    let (_, out, _) = run(&["enumerate", "signed", "[2,1]", "--diagonal-primes"]);
    assert!(out.ends_with("count 8\n"));
    let (code, _, err) = run(&["enumerate", "ssyt", "[2,1]"]);
    assert_eq!(code, 2);
    assert!(err.contains("--max"));
    let (_, out, _) = run(&["--porcelain", "enumerate", "ssyt", "[2,1]", "--max", "3"]);
    assert!(out.ends_with("count 8\n"));
}

#[test]
fn specialize_routes() {
    let (_, out, _) = run(&["specialize", "--kind", "s", "--shape", "[3,1]", "--vars", "2"]);
    assert_eq!(out, "x1^3 x2 + x1^2 x2^2 + x1 x2^3\n");
    let (_, f, _) = run(&["specialize", "--kind", "P", "--shape", "[3,1]", "--vars", "2", "--via", "F"]);
    assert_eq!(f, "x1^3 x2 + 2 x1^2 x2^2 + x1 x2^3\n");
    let (_, g, _) = run(&["specialize", "--kind", "P", "--shape", "[3,1]", "--vars", "3", "--via", "G"]);
    let (_, m, _) = run(&["specialize", "--kind", "P", "--shape", "[3,1]", "--vars", "3"]);
    assert_eq!(g, m);
    let (code, _, _) = run(&["specialize", "--kind", "s", "--shape", "[3,1]", "--vars", "2", "--via", "G"]);
    assert_eq!(code, 2);
}

#[test]
fn classes_of_perm_under_b() {
    let (code, out, _) = run(&["--porcelain", "classes", "--ground", "perm", "--n", "4", "--family", "b"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("class ")).count(), 16);
    assert!(out.contains("class 2 1243 2\ngenfn 2 G{2} + G{3}\nexpansion 2 1 P[3,1]\n"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--axioms", "weak", "--ground", "signedperm", "--n", "4"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["--porcelain", "verify", "--axioms", "strong", "--ground", "signedperm", "--n", "4"]);
    assert_eq!(code, 1);
    let fail = out
        .lines()
        .find(|l| l.starts_with("condition ") && l.contains(" fail gating "))
        .expect("a failing condition");
    let id = fail.split_whitespace().nth(1).unwrap();
    assert!(out.lines().any(|l| l.starts_with(&format!("witness {id} "))));
    assert!(out.ends_with("result fail\n"));
    let (code, out, _) = run(&["verify", "--axioms", "shifted", "--ground", "shsyt", "--shape", "[4,2,1]", "--lemma-vi"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = run(&["verify", "--axioms", "weak", "--ground", "shsyt", "--shape", "[3,1]"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn output_is_independent_of_threads() {
    let args = ["--porcelain", "verify", "--axioms", "strong", "--ground", "signedperm", "--n", "5"];
    let one = run(&[&["--threads", "1"][..], &args[..]].concat());
    let four = run(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one, four);
    assert_eq!(one.0, 1);
}

#[test]
fn deg_files() {
    let pair = deg_file("pair.deg", "deg 1\nn 4 stat peak\nvertex a { 3 }\nvertex b { 2 }\nedge 2 a b\n");
    let (code, out, _) = run(&["classify", "--file", &pair]);
    assert_eq!(code, 0);
    assert_eq!(out, "class 1 shape [3,1]\n  a -> 4123\n  b -> 3124\n");
    let (code, _, _) = run(&["verify", "--axioms", "shifted", "--file", &pair]);
    assert_eq!(code, 0);

    let bad = deg_file(
        "bad.deg",
        "deg 1\nn 4 stat peak\nvertex a { 3 }\nvertex b { 2 }\nvertex c { 2 }\nedge 2 a b\nedge 2 a c\n",
    );
    let (code, _, err) = run(&["classify", "--file", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 7"), "{err}");

    let empty = deg_file("empty.deg", "deg 1\nn 3 stat peak\n");
    let (code, out, _) = run(&["classify", "--file", &empty]);
    assert_eq!((code, out.as_str()), (0, ""));

    let (code, _, err) = run(&["classify", "--file", "/nonexistent/x.deg"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["expand", "P"]).0, 2);
    assert_eq!(run(&["expand", "P", "[3,3]"]).0, 2);
    assert_eq!(run(&["expand", "X", "[3,1]"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shdual");
    let status = Command::new(bin).args(["expand", "--schur-of", "P", "[3,1]"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout), "1 s[3,1]\n1 s[2,2]\n1 s[2,1,1]\n");
    let status = Command::new(bin).args(["expand", "P", "[2,2]"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
