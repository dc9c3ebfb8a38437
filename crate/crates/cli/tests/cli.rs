use std::process::Command;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fintop").chain(args.iter().copied());
    let code = fintop_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args, "");
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn canon_of_the_two_chain() {
    assert_eq!(ok(&["canon", "PRE n=2 rel=1101"]), "FS k=2 w=1,1 cov=(1,2)\n");
    // The other labeling gives the same space.
    assert_eq!(ok(&["canon", "PRE n=2 rel=1011"]), "FS k=2 w=1,1 cov=(1,2)\n");
}

#[test]
fn canon_reads_stdin_line_by_line() {
    let (code, out, _) = run(&["canon"], "PRE n=1 rel=1\n\nPRE n=2 rel=1111\n");
    assert_eq!(code, 0);
    assert_eq!(out, "FS k=1 w=1 cov=\nFS k=1 w=2 cov=\n");
}

#[test]
fn parse_errors_report_line_and_column_and_exit_2() {
    let (code, _, err) = run(&["canon"], "PRE n=1 rel=1\nPRE n=2 rel=11x1\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 15"), "{err}");
    let (code, _, _) = run(&["product", "FS k=1 w=1 cov=", "nonsense"], "");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"], "");
    assert_eq!(code, 2);
}

#[test]
fn products_and_duality() {
    let pt = "FS k=1 w=1 cov=";
    assert_eq!(ok(&["product", pt, pt]), "FS k=2 w=1,1 cov=\n");
    assert_eq!(ok(&["join", pt, pt]), "FS k=2 w=1,1 cov=(1,2)\n");
    assert_eq!(ok(&["dual", "FS k=2 w=1,2 cov=(1,2)"]), "FS k=2 w=1,2 cov=(2,1)\n");
    assert_eq!(
        ok(&["dual", "(2) * FS k=2 w=1,2 cov=(1,2) + (q) * FS k=1 w=1 cov="]),
        "(q) * FS k=1 w=1 cov= + (2) * FS k=2 w=1,2 cov=(2,1)\n"
    );
}

#[test]
fn coproduct_and_antipode_of_the_two_chain() {
    let out = ok(&["coproduct", "FS k=2 w=1,1 cov=(1,2)"]);
    let terms: Vec<&str> = out.trim().split(" + ").collect();
    assert_eq!(terms.len(), 3);
    assert!(terms.contains(&"(1) * FS k=1 w=1 cov= (x) FS k=1 w=1 cov="));
    assert_eq!(
        ok(&["antipode", "FS k=2 w=1,1 cov=(1,2)"]),
        "(1) * FS k=2 w=1,1 cov= + (-1) * FS k=2 w=1,1 cov=(1,2)\n"
    );
}

#[test]
fn phi_and_zeta() {
    assert_eq!(ok(&["phi", "FS k=2 w=1,1 cov=(1,2)"]), "(q)*M[2] + (1)*M[1,1]\n");
    assert_eq!(ok(&["phi", "--eval-q", "0", "FS k=2 w=1,1 cov=(1,2)"]), "(1)*M[1,1]\n");
    assert_eq!(ok(&["phi", "--eval-q", "-3/2", "FS k=2 w=1,1 cov=(1,2)"]), "(-3/2)*M[2] + (1)*M[1,1]\n");
    assert_eq!(ok(&["zeta", "FS k=2 w=2,3 cov=(1,2)"]), "q^6\n");
    assert_eq!(ok(&["zeta", "FS k=3 w=1,1,1 cov="]), "1\n");
    let (code, _, _) = run(&["phi", "--eval-q", "x", "FS k=1 w=1 cov="], "");
    assert_eq!(code, 2);
}

#[test]
fn homotopy_commands() {
    let circle = "FS k=4 w=1,1,1,1 cov=(1,3);(1,4);(2,3);(2,4)";
    assert_eq!(ok(&["core", circle]), format!("{circle}\n"));
    assert_eq!(ok(&["core", "FS k=3 w=1,1,1 cov=(1,2);(2,3)"]), "FS k=1 w=1 cov=\n");
    assert_eq!(ok(&["euler", circle]), "0\n");
    assert_eq!(ok(&["euler", "--reduced", circle]), "-1\n");
    assert_eq!(ok(&["complex", circle]), "1 3\n1 4\n2 3\n2 4\n");
}

#[test]
fn enumeration_commands() {
    assert_eq!(ok(&["enumerate", "--n", "4", "--count"]), "33\n");
    assert_eq!(ok(&["enumerate", "--n", "4", "--kind", "topologies", "--count"]), "355\n");
    assert_eq!(ok(&["enumerate", "--n", "4", "--kind", "connected", "--count"]), "21\n");
    assert_eq!(ok(&["enumerate", "--n", "4", "--kind", "join-indec", "--count"]), "14\n");
    assert_eq!(ok(&["enumerate", "--n", "4", "--kind", "irreducible", "--count"]), "2\n");
    let listed = ok(&["enumerate", "--n", "2", "--kind", "topologies"]);
    assert_eq!(listed.lines().count(), 4);
    assert!(listed.lines().all(|l| l.starts_with("PRE n=2 rel=")));
    let (code, _, err) = run(&["enumerate", "--n", "7", "--kind", "topologies", "--count"], "");
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
    let (code, _, _) = run(&["enumerate", "--n", "8", "--count"], "");
    assert_eq!(code, 2);
}

#[test]
fn counts_tables_end_with_the_expected_row_values() {
    let out = ok(&["counts", "--max-n", "4"]);
    let row = |label: &str| out.lines().find(|l| l.starts_with(label)).unwrap().split_whitespace().last().unwrap().to_string();
    assert_eq!(row("t_n"), "355");
    assert_eq!(row("f_n"), "33");
    assert_eq!((row("p_n"), row("q_n"), row("r_n")), ("21".into(), "14".into(), "2".into()));
}

#[test]
fn checks_exit_zero_when_they_pass() {
    let out = ok(&["check", "--suite", "hopf", "--max-n", "3"]);
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.starts_with("ok:")), "{out}");
    ok(&["check", "--suite", "infinitesimal", "--max-n", "3"]);
    ok(&["check", "--suite", "qsym", "--max-n", "3", "--seed", "9"]);
    ok(&["check", "--suite", "homotopy", "--max-n", "4"]);
    ok(&["check", "--suite", "tensor", "--max-n", "3"]);
}

#[test]
fn text_outputs_parse_back() {
    let v = ok(&["antipode", "FS k=3 w=1,1,1 cov=(1,2);(1,3)"]);
    let again = ok(&["dual", v.trim()]);
    let twice = ok(&["dual", again.trim()]);
    assert_eq!(twice, v);
}

#[test]
fn the_binary_uses_the_same_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fintop");
    let status = Command::new(bin).args(["canon", "PRE n=2 rel=1101"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout), "FS k=2 w=1,1 cov=(1,2)\n");
    let status = Command::new(bin).args(["canon", "PRE n=2 rel=1"]).env("FINTOP_THREADS", "2").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
