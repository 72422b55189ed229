//! Bit-exact pretty-printer output for selected corpus files.
//! Run with `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::PathBuf;

use wkernel::parse::{parse_source, parse_term};
use wkernel::pretty::{pretty, pretty_file};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn pretty_printed_files_match_golden() {
    for name in ["prelude", "p41ii", "cover_as_wp"] {
        let text =
            std::fs::read_to_string(dir().join(format!("../../corpus/{name}.mltt"))).unwrap();
        let printed = pretty_file(&parse_source(&text).unwrap());
        let golden = dir().join(format!("tests/golden/{name}.pretty"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&golden, &printed).unwrap();
        } else {
            assert_eq!(printed, std::fs::read_to_string(&golden).unwrap(), "{name}");
        }
    }
}

#[test]
fn small_terms() {
    for (src, expected) in [
        ("star", "star"),
        ("fun x => x", "fun x0 => x0"),
        ("fun A => fun x => x", "fun x0 x1 => x1"),
        ("(A : U0) -> A -> A", "(x0 : U0) -> x0 -> x0"),
        ("(a : N1) * N1", "N1 * N1"),
        ("(x, y, z)", "(x, (y, z))"),
        ("f (g x) y", "f (g x) y"),
        ("Sum N1 (Sum N1 N1)", "Sum N1 (Sum N1 N1)"),
        (
            "elimW (fun w => N1) (fun a f h => star) t",
            "elimW (fun x0 => N1) (fun x0 x1 x2 => star) t",
        ),
        (
            "J (fun x y p => Id A y x) (fun x => refl x) a b q",
            "J (fun x0 x1 x2 => Id A x1 x0) (fun x0 => refl x0) a b q",
        ),
    ] {
        assert_eq!(pretty(&parse_term(src).unwrap()), expected, "{src}");
    }
}
