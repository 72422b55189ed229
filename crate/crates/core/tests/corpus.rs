//! The shipped corpus is exactly what the encoding builders generate.
//! Run with `UPDATE_CORPUS=1` to regenerate it.

use std::path::PathBuf;

use wkernel::encodings::corpus_files;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_corpus_matches_builders() {
    let dir = corpus_dir();
    let update = std::env::var_os("UPDATE_CORPUS").is_some();
    for (name, text) in corpus_files() {
        let path = dir.join(&name);
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else {
            let shipped = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("missing corpus file {}: {e}", path.display()));
            assert_eq!(
                shipped, text,
                "corpus file {name} is stale; regenerate with UPDATE_CORPUS=1"
            );
        }
    }
}

// --- flag requirements -------------------------------------------------------

use wkernel::check::{check_declaration, Context};
use wkernel::encodings::{check_corpus, manifest, parse_manifest, EntryStatus, Tag};
use wkernel::parse::{load_file, parse_source, Item};
use wkernel::pretty::pretty_file;
use wkernel::syntax::{structural_eq, Flags};

fn flags(names: &[&str]) -> Flags {
    Flags::from_names(names.iter().copied()).unwrap()
}

/// The flag sets each statement is checked under, as a fixture independent
/// of the manifest builder.
fn flag_matrix() -> Vec<(Tag, Flags)> {
    vec![
        (Tag::Prelude, flags(&[])),
        (Tag::RepProp, flags(&[])),
        (Tag::CoverAsWP, flags(&[])),
        (Tag::WPAsCover, flags(&[])),
        (Tag::P41i, flags(&["funext"])),
        (Tag::P41ii, flags(&["eta_pi", "eta_sigma"])),
        (Tag::P51i, flags(&["funext"])),
        (Tag::P51ii, flags(&["eta_pi", "eta_sigma"])),
        (Tag::P52i, flags(&["funext"])),
        (Tag::P52ii, flags(&["eta_pi", "eta_sigma"])),
        (Tag::P52iii, flags(&["funext"])),
        (Tag::P52iv, flags(&["eta_pi", "eta_unit"])),
    ]
}

#[test]
fn manifest_matches_flag_matrix() {
    let shipped = std::fs::read_to_string(corpus_dir().join("manifest")).unwrap();
    let parsed = parse_manifest(&shipped).unwrap();
    assert_eq!(parsed, manifest());
    let got: Vec<(Tag, Flags)> = parsed.iter().map(|e| (e.tag, e.flags)).collect();
    assert_eq!(got, flag_matrix());
}

#[test]
fn definitional_entries_need_only_eta_and_propositional_only_funext() {
    for e in manifest() {
        if e.tag.is_definitional() {
            assert!(!e.flags.funext, "{:?}", e.tag);
        }
        if e.tag.is_propositional() {
            assert_eq!(e.flags, Flags::FUNEXT, "{:?}", e.tag);
        }
    }
}

fn file_checks(file: &str, flags: Flags) -> Result<(), String> {
    let decls = load_file(&corpus_dir().join(file)).map_err(|e| e.to_string())?;
    let mut ctx = Context::new();
    for d in &decls {
        check_declaration(&mut ctx, d, flags).map_err(|e| format!("{}: {e}", d.name))?;
    }
    Ok(())
}

/// Each entry checks under exactly the flag settings that include its
/// required flags: all sixteen settings are tried.
#[test]
fn every_entry_checks_exactly_when_its_flags_are_enabled() {
    for e in manifest() {
        for f in Flags::all_combinations() {
            let result = file_checks(&e.file, f);
            if e.flags.subset_of(&f) {
                assert!(
                    result.is_ok(),
                    "{} under {f}: {}",
                    e.file,
                    result.unwrap_err()
                );
            } else {
                assert!(result.is_err(), "{} unexpectedly checks under {f}", e.file);
            }
        }
    }
}

/// The W-type encoding by a well-founded predicate over the unit index
/// needs eta for Pi: with eta for Sigma and the unit type only, the
/// eliminator itself is rejected, because the step function's argument
/// `fun j r => f r` must be identified with `f`'s two-argument expansion.
#[test]
fn w_via_wp_fails_with_sigma_and_unit_eta_only() {
    let err = file_checks("p52iv.mltt", flags(&["eta_sigma", "eta_unit"])).unwrap_err();
    assert!(err.starts_with("ElW'"), "{err}");
    assert!(file_checks("p52iv.mltt", flags(&["eta_pi", "eta_unit"])).is_ok());
    assert!(file_checks("p52iv.mltt", flags(&["eta_pi", "eta_sigma"])).is_err());
}

#[test]
fn corpus_report_all_eta() {
    let r = check_corpus(&corpus_dir(), Flags::ALL_ETA).unwrap();
    for e in &r.entries {
        let expected = if e.entry.tag.is_propositional() {
            EntryStatus::Skip
        } else {
            EntryStatus::Pass
        };
        assert_eq!(e.status, expected, "{:?}", e.entry.tag);
    }
    for tag in [Tag::P41ii, Tag::P51ii, Tag::P52ii, Tag::P52iv] {
        assert_eq!(r.status_of(tag), Some(&EntryStatus::Pass));
    }
}

#[test]
fn corpus_report_funext() {
    let r = check_corpus(&corpus_dir(), Flags::FUNEXT).unwrap();
    for e in &r.entries {
        let expected = if e.entry.tag.is_definitional() {
            EntryStatus::Skip
        } else {
            EntryStatus::Pass
        };
        assert_eq!(e.status, expected, "{:?}", e.entry.tag);
    }
}

#[test]
fn corpus_report_no_flags_logs_conversions() {
    let r = check_corpus(&corpus_dir(), Flags::NONE).unwrap();
    assert!(!r.has_failures());
    for e in &r.entries {
        let base = matches!(
            e.entry.tag,
            Tag::Prelude | Tag::RepProp | Tag::CoverAsWP | Tag::WPAsCover
        );
        let expected = if base {
            EntryStatus::Pass
        } else {
            EntryStatus::Skip
        };
        assert_eq!(e.status, expected, "{:?}", e.entry.tag);
        if e.entry.tag.is_definitional() {
            // the generic rule plus three instances per computation rule
            assert!(e.conversions.len() >= 4, "{:?}", e.entry.tag);
            assert!(e.conversions.iter().all(|c| c.decl.starts_with("C_")));
        } else {
            assert!(e.conversions.is_empty());
        }
    }
    let text = r.render();
    assert!(text.contains("  log C_DW: "), "{text}");
    assert!(
        text.ends_with("summary: 4 passed, 8 skipped, 0 failed\n"),
        "{text}"
    );
}

#[test]
fn definitional_entries_state_rules_at_three_instances() {
    for (file, rules) in [
        ("p41ii.mltt", &["DW"][..]),
        ("p51ii.mltt", &["rf", "tr", "WPcov"][..]),
        ("p52ii.mltt", &["WP"][..]),
        ("p52iv.mltt", &["W"][..]),
    ] {
        let decls = load_file(&corpus_dir().join(file)).unwrap();
        let names: Vec<&str> = decls.iter().map(|d| d.name.as_str()).collect();
        for rule in rules {
            for suffix in ["", "_empty", "_unit", "_two"] {
                let name = format!("C_{rule}{suffix}");
                assert!(names.contains(&name.as_str()), "{file} lacks {name}");
            }
        }
        if *rules == ["DW"] || *rules == ["WP"] || *rules == ["W"] {
            for kind in ["F", "I", "E"] {
                for suffix in ["", "_empty", "_unit", "_two"] {
                    let name = format!("{kind}_{}{suffix}", rules[0]);
                    assert!(names.contains(&name.as_str()), "{file} lacks {name}");
                }
            }
        }
    }
}

// --- parse / pretty round trip ----------------------------------------------

#[test]
fn every_corpus_file_survives_parse_pretty_parse() {
    for (name, _) in corpus_files() {
        if !name.ends_with(".mltt") {
            continue;
        }
        let text = std::fs::read_to_string(corpus_dir().join(&name)).unwrap();
        let first = parse_source(&text).unwrap();
        let printed = pretty_file(&first);
        let second = parse_source(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(first.items.len(), second.items.len(), "{name}");
        for (a, b) in first.items.iter().zip(&second.items) {
            match (a, b) {
                (Item::Import { path: p, .. }, Item::Import { path: q, .. }) => assert_eq!(p, q),
                (Item::Decl(d), Item::Decl(e)) => {
                    assert_eq!(d.name, e.name, "{name}");
                    assert!(structural_eq(&d.ty, &e.ty), "{name}: type of {}", d.name);
                    match (&d.body, &e.body) {
                        (Some(x), Some(y)) => assert!(structural_eq(x, y), "{name}: {}", d.name),
                        (None, None) => {}
                        _ => panic!("{name}: {} changed kind", d.name),
                    }
                }
                _ => panic!("{name}: item kinds differ"),
            }
        }
        // printing is a fixpoint after one round
        assert_eq!(pretty_file(&second), printed, "{name}");
    }
}
