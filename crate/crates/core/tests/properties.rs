//! Property tests: conversion is monotone in the flags, the eta laws are
//! complete for eta-expanded variants, readback is idempotent, printing
//! round-trips, and the cover engine agrees with its oracle.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wkernel::check::{check, convertible, normalize_at, Context};
use wkernel::cover::{brute_force_min_cover, derivation, least_cover, FiniteAxiomSet, Subset};
use wkernel::parse::parse_term_in;
use wkernel::pretty::pretty_in;
use wkernel::syntax::{Flags, Term};

/// The local context all generated terms live in.
fn context() -> Context {
    let mut ctx = Context::new();
    for (x, t) in [
        ("A", "U0"),
        ("a", "A"),
        ("f", "A -> A"),
        ("g", "(A -> A) -> A"),
        ("p", "A * A"),
        ("q", "N1 * A"),
        ("u", "N1"),
        ("h", "N1 -> A"),
    ] {
        let ty = parse_term_in(ctx.names(), t).unwrap();
        ctx = ctx.assume(x, &ty, Flags::NONE).unwrap();
    }
    ctx
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ty {
    A,
    AtoA,
    AxA,
    Unit,
    UnitToA,
}

impl Ty {
    fn text(self) -> &'static str {
        match self {
            Ty::A => "A",
            Ty::AtoA => "A -> A",
            Ty::AxA => "A * A",
            Ty::Unit => "N1",
            Ty::UnitToA => "N1 -> A",
        }
    }
}

/// Generates a term of a type together with a variant that differs from it
/// only by eta-expansions (and beta-redexes through definitions of the
/// same terms), so the two are convertible under all eta laws.
struct Gen {
    rng: ChaCha8Rng,
    fresh: usize,
    /// Bound variables of type `A` and `N1` in scope.
    a_vars: Vec<String>,
    unit_vars: Vec<String>,
}

impl Gen {
    fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            fresh: 0,
            a_vars: vec![],
            unit_vars: vec![],
        }
    }

    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("y{}", self.fresh)
    }

    fn pair(&mut self, ty: Ty, depth: usize) -> (String, String) {
        let leaf = depth == 0;
        let (s, t) = match ty {
            Ty::A => {
                let choice = if leaf {
                    self.rng.gen_range(0..2)
                } else {
                    self.rng.gen_range(0..6)
                };
                match choice {
                    0 => {
                        let mut vars = vec!["a".to_string()];
                        vars.extend(self.a_vars.iter().cloned());
                        let v = vars[self.rng.gen_range(0..vars.len())].clone();
                        (v.clone(), v)
                    }
                    1 => ("fst p".into(), "fst p".into()),
                    2 => {
                        let (x, y) = self.pair(Ty::A, depth - 1);
                        (format!("f ({x})"), format!("f ({y})"))
                    }
                    3 => {
                        let (x, y) = self.pair(Ty::AtoA, depth - 1);
                        (format!("g ({x})"), format!("g ({y})"))
                    }
                    4 => {
                        // a projection's argument must infer, so it stays neutral
                        let (mut x, mut y) = self.pair(Ty::AxA, depth - 1);
                        if x.starts_with('(') || y.starts_with('(') {
                            (x, y) = ("p".into(), "p".into());
                        }
                        let proj = if self.rng.gen_bool(0.5) { "fst" } else { "snd" };
                        (format!("{proj} ({x})"), format!("{proj} ({y})"))
                    }
                    _ => {
                        let (x, y) = self.pair(Ty::Unit, depth - 1);
                        (format!("h ({x})"), format!("h ({y})"))
                    }
                }
            }
            Ty::AtoA => {
                if leaf || self.rng.gen_bool(0.3) {
                    ("f".into(), "f".into())
                } else {
                    let x = self.name();
                    self.a_vars.push(x.clone());
                    let (b1, b2) = self.pair(Ty::A, depth - 1);
                    self.a_vars.pop();
                    (format!("fun {x} => {b1}"), format!("fun {x} => {b2}"))
                }
            }
            Ty::AxA => {
                if leaf || self.rng.gen_bool(0.3) {
                    ("p".into(), "p".into())
                } else {
                    let (x1, x2) = self.pair(Ty::A, depth - 1);
                    let (y1, y2) = self.pair(Ty::A, depth - 1);
                    (format!("({x1}, {y1})"), format!("({x2}, {y2})"))
                }
            }
            Ty::Unit => {
                let mut vars = vec!["u".to_string(), "star".to_string(), "fst q".to_string()];
                vars.extend(self.unit_vars.iter().cloned());
                let v = vars[self.rng.gen_range(0..vars.len())].clone();
                (v.clone(), v)
            }
            Ty::UnitToA => {
                if leaf || self.rng.gen_bool(0.3) {
                    ("h".into(), "h".into())
                } else {
                    let x = self.name();
                    self.unit_vars.push(x.clone());
                    let (b1, b2) = self.pair(Ty::A, depth - 1);
                    self.unit_vars.pop();
                    (format!("fun {x} => {b1}"), format!("fun {x} => {b2}"))
                }
            }
        };
        // randomly eta-expand the variant
        // randomly eta-expand the variant; only neutral terms are expanded,
        // since a literal in head position would not infer
        let neutral = !t.starts_with("fun") && !t.starts_with('(');
        let t = if neutral && self.rng.gen_bool(0.3) {
            self.expand(ty, t)
        } else {
            t
        };
        (s, t)
    }

    fn expand(&mut self, ty: Ty, t: String) -> String {
        match ty {
            Ty::AtoA | Ty::UnitToA => {
                let x = self.name();
                format!("fun {x} => ({t}) {x}")
            }
            Ty::AxA => format!("(fst ({t}), snd ({t}))"),
            Ty::Unit => "star".into(),
            Ty::A => t,
        }
    }
}

const TYPES: [Ty; 5] = [Ty::A, Ty::AtoA, Ty::AxA, Ty::Unit, Ty::UnitToA];

fn arb_case() -> impl Strategy<Value = (Ty, String, String)> {
    (0usize..5, any::<u64>(), 0usize..4).prop_map(|(k, seed, depth)| {
        let ty = TYPES[k];
        let (s, t) = Gen::new(seed).pair(ty, depth);
        (ty, s, t)
    })
}

fn arb_flags() -> impl Strategy<Value = Flags> {
    (0usize..16).prop_map(|k| Flags::all_combinations()[k])
}

fn parse(ctx: &Context, s: &str) -> Term {
    parse_term_in(ctx.names(), s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_terms_are_well_typed((ty, s, t) in arb_case()) {
        let ctx = context();
        let ty = parse(&ctx, ty.text());
        for x in [&s, &t] {
            let r = check(&ctx, &parse(&ctx, x), &ty, Flags::NONE);
            prop_assert!(r.is_ok(), "{}: {:?}", x, r.err().map(|e| e.to_string()));
        }
    }

    #[test]
    fn eta_variants_are_convertible_under_all_eta((ty, s, t) in arb_case()) {
        let ctx = context();
        let ty = parse(&ctx, ty.text());
        prop_assert!(convertible(&ctx, &ty, &parse(&ctx, &s), &parse(&ctx, &t), Flags::ALL_ETA), "{} vs {}", s, t);
    }

    #[test]
    fn conversion_is_monotone_in_flags((ty, s, t) in arb_case(), f in arb_flags(), g in arb_flags()) {
        let ctx = context();
        let ty = parse(&ctx, ty.text());
        let (s, t) = (parse(&ctx, &s), parse(&ctx, &t));
        let big = f.union(&g);
        if convertible(&ctx, &ty, &s, &t, f) {
            prop_assert!(convertible(&ctx, &ty, &s, &t, big));
        }
    }

    #[test]
    fn conversion_is_symmetric_and_reflexive((ty, s, t) in arb_case(), f in arb_flags()) {
        let ctx = context();
        let ty = parse(&ctx, ty.text());
        let (s, t) = (parse(&ctx, &s), parse(&ctx, &t));
        prop_assert!(convertible(&ctx, &ty, &s, &s, f));
        prop_assert_eq!(convertible(&ctx, &ty, &s, &t, f), convertible(&ctx, &ty, &t, &s, f));
    }

    #[test]
    fn readback_is_idempotent((ty, s, _t) in arb_case(), f in arb_flags()) {
        let ctx = context();
        let ty = parse(&ctx, ty.text());
        let once = normalize_at(&ctx, &parse(&ctx, &s), &ty, f).unwrap();
        let twice = normalize_at(&ctx, &once, &ty, f).unwrap();
        prop_assert_eq!(&once, &twice);
        // and the normal form is convertible with the original term
        prop_assert!(convertible(&ctx, &ty, &once, &parse(&ctx, &s), f));
    }

    #[test]
    fn printing_round_trips((ty, s, t) in arb_case(), f in arb_flags()) {
        let ctx = context();
        let tyt = parse(&ctx, ty.text());
        for x in [&s, &t] {
            let term = parse(&ctx, x);
            prop_assert_eq!(&parse(&ctx, &pretty_in(ctx.names(), &term)), &term);
            let nf = normalize_at(&ctx, &term, &tyt, f).unwrap();
            prop_assert_eq!(&parse(&ctx, &pretty_in(ctx.names(), &nf)), &nf);
        }
    }
}

// --- cover engine ------------------------------------------------------------

fn arb_instance() -> impl Strategy<Value = (FiniteAxiomSet, Subset)> {
    (1usize..=5).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        (
            proptest::collection::vec(proptest::collection::vec(0..=full, 0..3), n),
            0..=full,
        )
            .prop_map(move |(axioms, v)| {
                let mut ax = FiniteAxiomSet::with_size(n);
                for (a, premises) in axioms.into_iter().enumerate() {
                    for m in premises {
                        ax.add_axiom(a, Subset::from_mask(n, m));
                    }
                }
                (ax, Subset::from_mask(n, v))
            })
    })
}

proptest! {
    #[test]
    fn least_cover_is_the_oracle((ax, v) in arb_instance()) {
        prop_assert_eq!(least_cover(&ax, &v), brute_force_min_cover(&ax, &v).unwrap());
    }

    #[test]
    fn derivations_are_valid_exactly_on_the_cover((ax, v) in arb_instance()) {
        let c = least_cover(&ax, &v);
        for a in 0..ax.size() {
            match derivation(&ax, &v, a) {
                Some(d) => prop_assert!(c.contains(a) && d.is_valid(&ax, &v)),
                None => prop_assert!(!c.contains(a)),
            }
        }
    }

    #[test]
    fn closure_laws((ax, v) in arb_instance(), extra in any::<u64>()) {
        let n = ax.size();
        let w = Subset::from_mask(n, v.mask() | (extra & ((1u64 << n) - 1)));
        let cv = least_cover(&ax, &v);
        prop_assert!(v.is_subset(&cv));
        prop_assert!(cv.is_subset(&least_cover(&ax, &w)));
        prop_assert_eq!(least_cover(&ax, &cv), cv);
    }
}

/// The generator exercises every eta law: a good share of the variants are
/// convertible only once the matching law is enabled.
#[test]
fn generator_produces_eta_dependent_pairs() {
    let ctx = context();
    let mut needs = [0usize; 3];
    for seed in 0..400u64 {
        let ty = TYPES[(seed % 5) as usize];
        let (s, t) = Gen::new(seed).pair(ty, 3);
        let tyt = parse(&ctx, ty.text());
        let (s, t) = (parse(&ctx, &s), parse(&ctx, &t));
        if convertible(&ctx, &tyt, &s, &t, Flags::NONE) {
            continue;
        }
        for (k, name) in ["eta_pi", "eta_sigma", "eta_unit"].iter().enumerate() {
            let without = Flags::from_names(
                ["eta_pi", "eta_sigma", "eta_unit"]
                    .into_iter()
                    .filter(|n| n != name),
            )
            .unwrap();
            if !convertible(&ctx, &tyt, &s, &t, without) {
                needs[k] += 1;
            }
        }
    }
    assert!(needs.iter().all(|&n| n >= 5), "{needs:?}");
}
