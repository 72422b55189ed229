//! Acceptance criteria, one test per criterion.

mod common;

use std::path::PathBuf;

use common::rules::formers;
use wkernel::check::{check, check_declarations, Context, ErrorKind};
use wkernel::cover::{
    brute_force_min_cover, cover_type, derivation, encode_axiom_set, extract_proof_term,
    least_cover, FiniteAxiomSet, Subset,
};
use wkernel::encodings::{check_corpus, corpus_files, EntryStatus, Tag};
use wkernel::parse::{load_file, parse_file, parse_source, Item};
use wkernel::pretty::pretty_file;
use wkernel::syntax::{structural_eq, Flags};

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus_dir() -> PathBuf {
    repo_root().join("corpus")
}

const DEFINITIONAL: [Tag; 4] = [Tag::P41ii, Tag::P51ii, Tag::P52ii, Tag::P52iv];
const PROPOSITIONAL: [Tag; 4] = [Tag::P41i, Tag::P51i, Tag::P52i, Tag::P52iii];
const BASE: [Tag; 4] = [Tag::Prelude, Tag::RepProp, Tag::CoverAsWP, Tag::WPAsCover];

/// Names of the computation-rule declarations in a corpus file.
fn computation_rules(file: &str) -> Vec<String> {
    load_file(&corpus_dir().join(file))
        .unwrap()
        .into_iter()
        .map(|d| d.name)
        .filter(|n| n.starts_with("C_"))
        .collect()
}

#[test]
fn definitional_entries_pass_with_all_eta() {
    let report = check_corpus(&corpus_dir(), Flags::ALL_ETA).unwrap();
    for tag in DEFINITIONAL {
        assert_eq!(report.status_of(tag), Some(&EntryStatus::Pass), "{tag:?}");
        let entry = report.entries.iter().find(|e| e.entry.tag == tag).unwrap();
        let rules = computation_rules(&entry.entry.file);
        for suffix in ["_empty", "_unit", "_two"] {
            assert!(
                rules.iter().any(|r| r.ends_with(suffix)),
                "{tag:?} has no computation rule at the {suffix} instance"
            );
        }
    }
    assert!(!report.has_failures(), "{}", report.render());
}

#[test]
fn propositional_entries_pass_with_funext() {
    let report = check_corpus(&corpus_dir(), Flags::FUNEXT).unwrap();
    for tag in PROPOSITIONAL.iter().chain(&BASE) {
        assert_eq!(report.status_of(*tag), Some(&EntryStatus::Pass), "{tag:?}");
    }
    assert!(!report.has_failures(), "{}", report.render());
}

#[test]
fn without_flags_base_entries_pass_and_the_rest_skip_with_logged_conversions() {
    let report = check_corpus(&corpus_dir(), Flags::NONE).unwrap();
    for e in &report.entries {
        if BASE.contains(&e.entry.tag) {
            assert_eq!(e.status, EntryStatus::Pass, "{:?}", e.entry.tag);
        } else {
            assert_eq!(e.status, EntryStatus::Skip, "{:?}", e.entry.tag);
        }
    }
    let text = report.render();
    for tag in DEFINITIONAL {
        let e = report.entries.iter().find(|e| e.entry.tag == tag).unwrap();
        let rules = computation_rules(&e.entry.file);
        let logged: Vec<&str> = e.conversions.iter().map(|c| c.decl.as_str()).collect();
        assert_eq!(logged, rules, "{tag:?}");
        for c in &e.conversions {
            assert!(text.contains(&format!("  log {}: ", c.decl)), "{text}");
        }
    }
    assert!(!report.has_failures());
}

fn check_text(src: &str, flags: Flags) -> Result<Context, wkernel::check::TypeError> {
    let decls = parse_file(src).unwrap_or_else(|e| panic!("parse error: {e}\n{src}"));
    check_declarations(&Context::new(), &decls, flags)
}

#[test]
fn primitive_rules_hold_and_eliminators_reject_wrong_motives() {
    for former in formers() {
        for kind in ["F_", "I_", "E_", "C_"] {
            assert!(
                former.rules.contains(&format!("def {kind}")),
                "{} lacks {kind}",
                former.name
            );
        }
        for (suffix, params) in former.instances {
            let src = format!("{params}{}", former.rules);
            for flags in Flags::all_combinations() {
                if let Err(e) = check_text(&src, flags) {
                    panic!("{} rules at {suffix} under {flags}: {e}", former.name);
                }
            }
            let bad = format!("{params}{}", former.bad_motive);
            let e = check_text(&bad, Flags::NONE)
                .err()
                .unwrap_or_else(|| panic!("{} at {suffix}: wrong motive accepted", former.name));
            assert!(
                matches!(e.kind, ErrorKind::MotiveShape | ErrorKind::Mismatch),
                "{} at {suffix}: {e}",
                former.name
            );
        }
    }
}

fn closure_laws(ax: &FiniteAxiomSet, v: &Subset, w: &Subset) {
    let cv = least_cover(ax, v);
    assert!(v.is_subset(&cv), "extensive");
    assert_eq!(least_cover(ax, &cv), cv, "idempotent");
    if v.is_subset(w) {
        assert!(cv.is_subset(&least_cover(ax, w)), "monotone");
    }
}

#[test]
fn least_cover_agrees_with_the_oracle() {
    println!("seed {:#x}", common::SEED);
    for ax in common::all_two_atom_axiom_sets() {
        for v in 0u64..4 {
            let v = Subset::from_mask(2, v);
            assert_eq!(
                least_cover(&ax, &v),
                brute_force_min_cover(&ax, &v).unwrap()
            );
            for w in 0u64..4 {
                closure_laws(&ax, &v, &Subset::from_mask(2, w));
            }
        }
    }
    let mut rng = common::rng(100);
    for (ax, v) in common::random_instances(101, 200, 3..=4) {
        assert_eq!(
            least_cover(&ax, &v),
            brute_force_min_cover(&ax, &v).unwrap(),
            "{ax:?} {v:?}"
        );
        let extra = common::random_subset(&mut rng, ax.size(), 0.4);
        closure_laws(
            &ax,
            &v,
            &Subset::from_mask(ax.size(), v.mask() | extra.mask()),
        );
    }
}

#[test]
fn extracted_proofs_check_and_uncovered_atoms_have_none() {
    println!("seed {:#x}", common::SEED);
    for (ax, v) in common::random_instances(102, 100, 1..=4) {
        let ctx = check_declarations(&Context::new(), &encode_axiom_set(&ax, &v), Flags::NONE)
            .unwrap_or_else(|e| panic!("{ax:?} {v:?}: {e}"));
        let cv = least_cover(&ax, &v);
        for a in 0..ax.size() {
            match derivation(&ax, &v, a) {
                Some(d) => {
                    assert!(cv.contains(a));
                    let term = extract_proof_term(&ax, &v, &d);
                    if let Err(e) = check(&ctx, &term, &cover_type(&ax, a), Flags::NONE) {
                        panic!("atom {a} of {ax:?} {v:?}: {e}");
                    }
                }
                None => assert!(!cv.contains(a), "atom {a} of {ax:?} {v:?}"),
            }
        }
    }
}

#[test]
fn corpus_round_trips_and_cli_runs_are_deterministic() {
    for (name, _) in corpus_files() {
        if !name.ends_with(".mltt") {
            continue;
        }
        let text = std::fs::read_to_string(corpus_dir().join(&name)).unwrap();
        let first = parse_source(&text).unwrap();
        let second = parse_source(&pretty_file(&first)).unwrap();
        assert_eq!(first.items.len(), second.items.len(), "{name}");
        for (a, b) in first.items.iter().zip(&second.items) {
            match (a, b) {
                (Item::Import { path: p, .. }, Item::Import { path: q, .. }) => assert_eq!(p, q),
                (Item::Decl(d), Item::Decl(e)) => {
                    assert_eq!(d.name, e.name);
                    assert!(structural_eq(&d.ty, &e.ty), "{name}: {}", d.name);
                    match (&d.body, &e.body) {
                        (Some(x), Some(y)) => assert!(structural_eq(x, y), "{name}: {}", d.name),
                        (None, None) => {}
                        _ => panic!("{name}: {}", d.name),
                    }
                }
                _ => panic!("{name}: item kinds differ"),
            }
        }
    }

    let corpus = corpus_dir().display().to_string();
    let cover_file = repo_root()
        .join("samples/two_atoms.cov")
        .display()
        .to_string();
    let p41ii = corpus_dir().join("p41ii.mltt").display().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["corpus", "--dir", &corpus],
        vec![
            "corpus",
            "--dir",
            &corpus,
            "--eta-pi",
            "--eta-sigma",
            "--eta-unit",
        ],
        vec!["corpus", "--dir", &corpus, "--funext"],
        vec!["check", &p41ii],
        vec!["cover", &cover_file, "--derivations"],
        vec!["conv", "f", "fun x => f x", "--type", "A -> A"],
    ];
    for args in runs {
        let argv: Vec<String> = std::iter::once("wkernel")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let mut first = Vec::new();
        let mut second = Vec::new();
        let c1 = wkernel::cli::run(&argv, &mut first);
        let c2 = wkernel::cli::run(&argv, &mut second);
        assert_eq!(c1, c2, "{args:?}");
        assert_eq!(first, second, "{args:?}");
        assert!(!first.is_empty(), "{args:?}");
    }
}
