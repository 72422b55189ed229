//! Command-line reports against golden files, exit codes and determinism.
//! Run with `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::PathBuf;

use wkernel::cli::run;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn path(rel: &str) -> String {
    root().join(rel).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["wkernel".to_string()];
    argv.extend(args.iter().map(|a| a.to_string()));
    let mut out = Vec::new();
    let code = run(&argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

/// Compare a report with its golden file and check that a second run is
/// byte-identical.
fn golden(name: &str, args: &[&str], expected_code: i32) -> String {
    let (code, out) = invoke(args);
    assert_eq!(code, expected_code, "{name}: exit {code}\n{out}");
    let (code2, out2) = invoke(args);
    assert_eq!((code, &out), (code2, &out2), "{name}: runs differ");
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&file, &out).unwrap();
    } else {
        let expected = std::fs::read_to_string(&file)
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", file.display()));
        assert_eq!(out, expected, "{name} differs from its golden file");
    }
    out
}

/// Reports of commands other than `conv` contain a failure line exactly
/// when the exit status is non-zero.
fn failure_lines_match_exit(out: &str, code: i32) {
    let failing = out
        .lines()
        .any(|l| l.starts_with("FAIL") || l.starts_with("error"));
    assert_eq!(failing, code != 0, "{out}");
}

#[test]
fn check_definitional_dw_with_eta() {
    let out = golden(
        "check_p41ii_eta",
        &[
            "check",
            &path("corpus/p41ii.mltt"),
            "--eta-pi",
            "--eta-sigma",
        ],
        0,
    );
    failure_lines_match_exit(&out, 0);
    assert!(out.lines().all(|l| l.starts_with("ok ")));
}

#[test]
fn check_definitional_dw_without_eta_reports_the_first_error() {
    let out = golden(
        "check_p41ii_plain",
        &["check", &path("corpus/p41ii.mltt")],
        1,
    );
    failure_lines_match_exit(&out, 1);
    let last = out
        .lines()
        .filter(|l| l.starts_with("error"))
        .collect::<Vec<_>>();
    assert_eq!(last.len(), 1, "{out}");
    assert!(out.contains("expected:") && out.contains("found:"), "{out}");
}

#[test]
fn check_propositional_without_funext() {
    let (code, out) = invoke(&["check", &path("corpus/p41i.mltt")]);
    assert_eq!(code, 1);
    assert!(out.contains("error funext: flag-required"), "{out}");
}

#[test]
fn conv_eta_for_functions() {
    let out = golden(
        "conv_plain",
        &["conv", "f", "fun x => f x", "--type", "A -> A"],
        1,
    );
    assert!(out.ends_with("not convertible under {}\n"));
    let out = golden(
        "conv_eta_pi",
        &["conv", "f", "fun x => f x", "--type", "A -> A", "--eta-pi"],
        0,
    );
    assert!(out.ends_with("convertible under {eta_pi}\n"));
}

#[test]
fn conv_eta_for_pairs_and_unit() {
    let (code, _) = invoke(&["conv", "p", "(fst p, snd p)", "--type", "A * A"]);
    assert_eq!(code, 1);
    let (code, _) = invoke(&[
        "conv",
        "p",
        "(fst p, snd p)",
        "--type",
        "A * A",
        "--eta-sigma",
    ]);
    assert_eq!(code, 0);
    let (code, _) = invoke(&["conv", "u", "star", "--type", "N1"]);
    assert_eq!(code, 1);
    let (code, _) = invoke(&["conv", "u", "star", "--type", "N1", "--eta-unit"]);
    assert_eq!(code, 0);
}

#[test]
fn conv_rejects_ill_typed_sides() {
    let (code, out) = invoke(&["conv", "star", "refl star", "--type", "N1"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("error in rhs: "), "{out}");
}

#[test]
fn norm_in_file_context() {
    golden(
        "norm_trans",
        &[
            "norm",
            "--file",
            &path("corpus/prelude.mltt"),
            "--expr",
            "trans N1 star star star (refl star) (refl star)",
        ],
        0,
    );
}

#[test]
fn norm_with_assumptions() {
    golden(
        "norm_assume",
        &[
            "norm",
            "--assume",
            "A : U0",
            "--assume",
            "p : A * A",
            "--expr",
            "(fst p, snd p)",
            "--type",
            "A * A",
            "--eta-sigma",
        ],
        0,
    );
}

#[test]
fn corpus_reports() {
    let dir = path("corpus");
    for (name, flags) in [
        ("corpus_plain", &[][..]),
        ("corpus_eta", &["--eta-pi", "--eta-sigma", "--eta-unit"][..]),
        ("corpus_funext", &["--funext"][..]),
    ] {
        let mut args = vec!["corpus", "--dir", &dir];
        args.extend(flags);
        let out = golden(name, &args, 0);
        failure_lines_match_exit(&out, 0);
    }
}

#[test]
fn cover_queries() {
    let file = path("samples/two_atoms.cov");
    let out = golden("cover_two_atoms", &["cover", &file], 0);
    assert!(out.starts_with("a V covered\n"));
    golden(
        "cover_two_atoms_derivations",
        &["cover", &file, "--derivations"],
        0,
    );
}

#[test]
fn missing_files_are_errors() {
    for args in [
        &["check", "/nonexistent.mltt"][..],
        &["cover", "/nonexistent.cov"][..],
    ] {
        let (code, out) = invoke(args);
        assert_eq!(code, 1);
        failure_lines_match_exit(&out, code);
    }
}

#[test]
fn usage_errors() {
    let (code, _) = invoke(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, out) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("corpus"));
}
