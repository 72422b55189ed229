//! Inductively generated covers over finite axiom sets: the least cover by
//! Kleene iteration, a brute-force minimality oracle, derivations, and
//! their translation into kernel proof terms.

use std::fmt;

use crate::parse::{parse_file, parse_term};
use crate::syntax::{Decl, Term};

/// A subset of the carrier, as a bit-vector in carrier order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: Vec<bool>,
}

impl Subset {
    pub fn empty(n: usize) -> Subset {
        Subset {
            bits: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Subset {
        Subset {
            bits: vec![true; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Subset {
        Subset { bits }
    }

    /// The subset of the first `n` atoms whose bits are set in `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Subset {
        Subset {
            bits: (0..n).map(|k| mask >> k & 1 == 1).collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .map(|(k, &b)| (b as u64) << k)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits[a]
    }

    pub fn insert(&mut self, a: usize) {
        self.bits[a] = true;
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&x, &y)| !x || y)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k)
    }

    pub fn count(&self) -> usize {
        self.members().count()
    }
}

/// A finite axiom set: for each atom an ordered list of labels, and for
/// each label the subset of premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAxiomSet {
    pub atoms: Vec<String>,
    /// `labels[a]` names the axioms at atom `a`.
    pub labels: Vec<Vec<String>>,
    /// `premises[a][i]` is the subset `C(a, i)`.
    pub premises: Vec<Vec<Subset>>,
}

impl FiniteAxiomSet {
    /// An axiom set with the given atoms and no axioms.
    pub fn new(atoms: Vec<String>) -> FiniteAxiomSet {
        let n = atoms.len();
        FiniteAxiomSet {
            atoms,
            labels: vec![Vec::new(); n],
            premises: vec![Vec::new(); n],
        }
    }

    /// Atoms named `a0`, `a1`, ... and no axioms.
    pub fn with_size(n: usize) -> FiniteAxiomSet {
        FiniteAxiomSet::new((0..n).map(|k| format!("a{k}")).collect())
    }

    pub fn size(&self) -> usize {
        self.atoms.len()
    }

    /// Add an axiom `a ◁ premises`, labelled `i<k>` by position.
    pub fn add_axiom(&mut self, a: usize, premises: Subset) {
        let k = self.labels[a].len();
        self.labels[a].push(format!("i{k}"));
        self.premises[a].push(premises);
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|x| x == name)
    }
}

/// A whole axiom-set file: the axioms, named subsets and queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFile {
    pub axioms: FiniteAxiomSet,
    pub subsets: Vec<(String, Subset)>,
    /// `(atom, subset index)`
    pub queries: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

/// Parse an axiom-set file (see the README for the format).
pub fn load_axiom_set(text: &str) -> Result<CoverFile, FormatError> {
    let mut axioms: Option<FiniteAxiomSet> = None;
    let mut subsets: Vec<(String, Subset)> = Vec::new();
    let mut queries = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| FormatError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if words[0] == "carrier" {
            if axioms.is_some() {
                return Err(err("`carrier` given twice".into()));
            }
            let atoms: Vec<String> = words[1..].iter().map(|w| w.to_string()).collect();
            if atoms.is_empty() {
                return Err(err("`carrier` needs at least one atom".into()));
            }
            for (j, a) in atoms.iter().enumerate() {
                if atoms[..j].contains(a) {
                    return Err(err(format!("duplicate atom `{a}`")));
                }
            }
            axioms = Some(FiniteAxiomSet::new(atoms));
            continue;
        }
        let ax = axioms
            .as_mut()
            .ok_or_else(|| err("the first item must be `carrier`".into()))?;
        let n = ax.size();
        let atom = |ax: &FiniteAxiomSet, w: &str| {
            ax.atom_index(w)
                .ok_or_else(|| err(format!("unknown atom `{w}`")))
        };
        let subset_after_colon =
            |ax: &FiniteAxiomSet, ws: &[&str]| -> Result<Subset, FormatError> {
                let mut s = Subset::empty(n);
                for w in ws {
                    s.insert(atom(ax, w)?);
                }
                Ok(s)
            };
        match words[0] {
            "axiom" => {
                if words.len() < 4 || words[3] != ":" {
                    return Err(err("expected `axiom <atom> <label> : <atom>*`".into()));
                }
                let a = atom(ax, words[1])?;
                let label = words[2].to_string();
                if ax.labels[a].contains(&label) {
                    return Err(err(format!("duplicate label `{label}` at `{}`", words[1])));
                }
                let s = subset_after_colon(ax, &words[4..])?;
                ax.labels[a].push(label);
                ax.premises[a].push(s);
            }
            "subset" => {
                if words.len() < 3 || words[2] != ":" {
                    return Err(err("expected `subset <name> : <atom>*`".into()));
                }
                let name = words[1].to_string();
                if subsets.iter().any(|(m, _)| *m == name) {
                    return Err(err(format!("duplicate subset `{name}`")));
                }
                let s = subset_after_colon(ax, &words[3..])?;
                subsets.push((name, s));
            }
            "query" => {
                if words.len() != 3 {
                    return Err(err("expected `query <atom> <subset>`".into()));
                }
                let a = atom(ax, words[1])?;
                let v = subsets
                    .iter()
                    .position(|(m, _)| m == words[2])
                    .ok_or_else(|| err(format!("unknown subset `{}`", words[2])))?;
                queries.push((a, v));
            }
            other => return Err(err(format!("unknown item `{other}`"))),
        }
    }
    let axioms = axioms.ok_or(FormatError {
        line: 1,
        message: "missing `carrier`".into(),
    })?;
    Ok(CoverFile {
        axioms,
        subsets,
        queries,
    })
}

/// One step of the generating rules:
/// `F(X) = V ∪ { a | some axiom C(a, i) ⊆ X }`.
pub fn step(ax: &FiniteAxiomSet, v: &Subset, x: &Subset) -> Subset {
    let mut out = v.clone();
    for a in 0..ax.size() {
        if ax.premises[a].iter().any(|c| c.is_subset(x)) {
            out.insert(a);
        }
    }
    out
}

/// The Kleene chain `F(∅) ⊆ F(F(∅)) ⊆ ...` up to and including its limit.
pub fn kleene_rounds(ax: &FiniteAxiomSet, v: &Subset) -> Vec<Subset> {
    let mut rounds = Vec::new();
    let mut x = Subset::empty(ax.size());
    loop {
        let next = step(ax, v, &x);
        if next == x {
            return rounds;
        }
        rounds.push(next.clone());
        x = next;
    }
}

/// The least cover of `v`: the least fixpoint of the generating rules.
pub fn least_cover(ax: &FiniteAxiomSet, v: &Subset) -> Subset {
    kleene_rounds(ax, v)
        .pop()
        .unwrap_or_else(|| Subset::empty(ax.size()))
}

/// Largest carrier the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TooLarge {
    pub size: usize,
}

impl fmt::Display for TooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "carrier of size {} exceeds the limit {BRUTE_FORCE_LIMIT}",
            self.size
        )
    }
}

impl std::error::Error for TooLarge {}

/// The intersection of all subsets that contain `v` and are closed under
/// the axioms, found by enumerating every subset of the carrier.
pub fn brute_force_min_cover(ax: &FiniteAxiomSet, v: &Subset) -> Result<Subset, TooLarge> {
    let n = ax.size();
    if n > BRUTE_FORCE_LIMIT {
        return Err(TooLarge { size: n });
    }
    let all = (1u64 << n) - 1;
    let vm = v.mask();
    let prem: Vec<Vec<u64>> = ax
        .premises
        .iter()
        .map(|cs| cs.iter().map(Subset::mask).collect())
        .collect();
    let mut meet = all;
    for x in 0..=all {
        if vm & !x != 0 {
            continue;
        }
        let closed = (0..n).all(|a| x >> a & 1 == 1 || prem[a].iter().all(|&c| c & !x != 0));
        if closed {
            meet &= x;
        }
    }
    Ok(Subset::from_mask(n, meet))
}

/// A derivation of `a ◁ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// `a` is in `V`.
    Rf { atom: usize },
    /// Axiom `label` at `atom`, with one derivation per premise, in
    /// carrier order.
    Tr {
        atom: usize,
        label: usize,
        children: Vec<Derivation>,
    },
}

impl Derivation {
    pub fn atom(&self) -> usize {
        match self {
            Derivation::Rf { atom } | Derivation::Tr { atom, .. } => *atom,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Derivation::Rf { .. } => 0,
            Derivation::Tr { children, .. } => {
                1 + children.iter().map(Derivation::depth).max().unwrap_or(0)
            }
        }
    }

    /// Whether the derivation is well-formed for the given axioms and `V`.
    pub fn is_valid(&self, ax: &FiniteAxiomSet, v: &Subset) -> bool {
        match self {
            Derivation::Rf { atom } => v.contains(*atom),
            Derivation::Tr {
                atom,
                label,
                children,
            } => {
                let Some(c) = ax.premises[*atom].get(*label) else {
                    return false;
                };
                let expected: Vec<usize> = c.members().collect();
                let got: Vec<usize> = children.iter().map(Derivation::atom).collect();
                expected == got && children.iter().all(|d| d.is_valid(ax, v))
            }
        }
    }

    /// Indented tree text, one node per line.
    pub fn render(&self, ax: &FiniteAxiomSet, indent: usize) -> String {
        let pad = "  ".repeat(indent);
        match self {
            Derivation::Rf { atom } => format!("{pad}rf {}\n", ax.atoms[*atom]),
            Derivation::Tr {
                atom,
                label,
                children,
            } => {
                let mut s = format!("{pad}tr {} {}\n", ax.atoms[*atom], ax.labels[*atom][*label]);
                for c in children {
                    s.push_str(&c.render(ax, indent + 1));
                }
                s
            }
        }
    }
}

/// A derivation of `a ◁ V`, if there is one. Atoms in `V` get a
/// reflexivity leaf; an atom entering the Kleene chain at round `k` uses
/// its first axiom whose premises all entered before round `k`.
pub fn derivation(ax: &FiniteAxiomSet, v: &Subset, a: usize) -> Option<Derivation> {
    let rounds = kleene_rounds(ax, v);
    let stage = |b: usize| rounds.iter().position(|x| x.contains(b));
    fn build(
        ax: &FiniteAxiomSet,
        v: &Subset,
        rounds: &[Subset],
        stage: &dyn Fn(usize) -> Option<usize>,
        a: usize,
    ) -> Derivation {
        if v.contains(a) {
            return Derivation::Rf { atom: a };
        }
        let k = stage(a).expect("atom is covered");
        let before = if k == 0 {
            Subset::empty(ax.size())
        } else {
            rounds[k - 1].clone()
        };
        let label = ax.premises[a]
            .iter()
            .position(|c| c.is_subset(&before))
            .expect("an axiom fired at the atom's round");
        let children = ax.premises[a][label]
            .members()
            .map(|b| build(ax, v, rounds, stage, b))
            .collect();
        Derivation::Tr {
            atom: a,
            label,
            children,
        }
    }
    stage(a)?;
    Some(build(ax, v, &rounds, &stage, a))
}

// ---------------------------------------------------------------------------
// Kernel encoding

/// Names of the constants introduced by [`encode_axiom_set`].
pub const CARRIER: &str = "CovA";
pub const AXIOMS: &str = "CovI";
pub const AXIOM_SETS: &str = "CovC";
pub const SUBSET: &str = "CovV";

/// The type with `n` canonical elements: `N0`, `N1`, `Sum N1 (Sum N1 ...)`.
pub fn fin_type(n: usize) -> String {
    match n {
        0 => "N0".into(),
        1 => "N1".into(),
        _ => format!("Sum N1 ({})", fin_type(n - 1)),
    }
}

/// The `k`-th element of [`fin_type`]`(n)`.
pub fn fin_elem(n: usize, k: usize) -> String {
    assert!(k < n);
    if n == 1 {
        "star".into()
    } else if k == 0 {
        "inl star".into()
    } else {
        format!("inr ({})", fin_elem(n - 1, k - 1))
    }
}

struct Fresh(usize);

impl Fresh {
    fn next(&mut self) -> String {
        self.0 += 1;
        format!("v{}", self.0)
    }
}

/// Case analysis on `scrut : fin_type(n)` (n ≥ 1) returning `cases[k]` on
/// the `k`-th element; `motive(x)` is the result type at `x`.
fn dispatch(
    fresh: &mut Fresh,
    n: usize,
    motive: &dyn Fn(&str) -> String,
    cases: &[String],
    scrut: &str,
) -> String {
    debug_assert_eq!(cases.len(), n);
    if n == 1 {
        let u = fresh.next();
        return format!(
            "unitElim (fun {u} => {}) ({}) ({scrut})",
            motive(&u),
            cases[0]
        );
    }
    let (x, u, u2, r) = (fresh.next(), fresh.next(), fresh.next(), fresh.next());
    let inl_motive = motive(&format!("(inl {u2})"));
    let rest = dispatch(
        fresh,
        n - 1,
        &|y: &str| motive(&format!("(inr {y})")),
        &cases[1..],
        &r,
    );
    format!(
        "case (fun {x} => {}) (fun {u} => unitElim (fun {u2} => {inl_motive}) ({}) {u}) (fun {r} => {rest}) ({scrut})",
        motive(&x),
        cases[0]
    )
}

/// A predicate `fin_type(n) -> U0` that is `N1` on the members of `s`.
fn membership(fresh: &mut Fresh, s: &Subset) -> String {
    let y = fresh.next();
    let cases: Vec<String> = (0..s.len())
        .map(|b| {
            if s.contains(b) {
                "N1".into()
            } else {
                "N0".into()
            }
        })
        .collect();
    format!(
        "fun {y} => {}",
        dispatch(fresh, s.len(), &|_| "U0".into(), &cases, &y)
    )
}

/// Declarations of the carrier, axioms, axiom sets and subset as kernel
/// terms, named [`CARRIER`], [`AXIOMS`], [`AXIOM_SETS`] and [`SUBSET`].
pub fn encode_axiom_set_text(ax: &FiniteAxiomSet, v: &Subset) -> String {
    let n = ax.size();
    let mut fresh = Fresh(0);
    let a_ty = fin_type(n);
    let x = fresh.next();
    let label_tys: Vec<String> = ax.labels.iter().map(|l| fin_type(l.len())).collect();
    let i_body = dispatch(&mut fresh, n, &|_| "U0".into(), &label_tys, &x);
    let c_cases: Vec<String> = (0..n)
        .map(|a| {
            let m = ax.labels[a].len();
            let i = fresh.next();
            if m == 0 {
                return format!("fun {i} => absurd (fun _ => {CARRIER} -> U0) {i}");
            }
            let preds: Vec<String> = ax.premises[a]
                .iter()
                .map(|c| membership(&mut fresh, c))
                .collect();
            let body = dispatch(&mut fresh, m, &|_| format!("{CARRIER} -> U0"), &preds, &i);
            format!("fun {i} => {body}")
        })
        .collect();
    let z = fresh.next();
    let c_body = dispatch(
        &mut fresh,
        n,
        &|x: &str| format!("{AXIOMS} {x} -> {CARRIER} -> U0"),
        &c_cases,
        &z,
    );
    let v_pred = membership(&mut fresh, v);
    format!(
        "def {CARRIER} : U0 := {a_ty}\n\
         def {AXIOMS} : {CARRIER} -> U0 := fun {x} => {i_body}\n\
         def {AXIOM_SETS} : (a : {CARRIER}) -> {AXIOMS} a -> {CARRIER} -> U0 := fun {z} => {c_body}\n\
         def {SUBSET} : {CARRIER} -> U0 := {v_pred}\n"
    )
}

pub fn encode_axiom_set(ax: &FiniteAxiomSet, v: &Subset) -> Vec<Decl> {
    parse_file(&encode_axiom_set_text(ax, v)).expect("generated encoding parses")
}

fn cover_of(atom: &str) -> String {
    format!("Cover {CARRIER} {AXIOMS} {AXIOM_SETS} {SUBSET} ({atom})")
}

/// The proposition `a ◁ V` over the encoded axiom set.
pub fn cover_type(ax: &FiniteAxiomSet, a: usize) -> Term {
    parse_term(&cover_of(&fin_elem(ax.size(), a))).expect("generated type parses")
}

fn proof_text(fresh: &mut Fresh, ax: &FiniteAxiomSet, d: &Derivation) -> String {
    let n = ax.size();
    match d {
        Derivation::Rf { atom } => format!("rf ({}) star", fin_elem(n, *atom)),
        Derivation::Tr {
            atom,
            label,
            children,
        } => {
            let a = fin_elem(n, *atom);
            let i = fin_elem(ax.labels[*atom].len(), *label);
            let premises = &ax.premises[*atom][*label];
            let mut kids = children.iter();
            let cases: Vec<String> = (0..n)
                .map(|b| {
                    let s = fresh.next();
                    if premises.contains(b) {
                        let child = kids.next().expect("one child per premise");
                        format!("fun {s} => {}", proof_text(fresh, ax, child))
                    } else {
                        format!(
                            "fun {s} => absurd (fun _ => {}) {s}",
                            cover_of(&fin_elem(n, b))
                        )
                    }
                })
                .collect();
            let y = fresh.next();
            let motive = |y: &str| format!("{AXIOM_SETS} ({a}) ({i}) {y} -> {}", cover_of(y));
            let body = dispatch(fresh, n, &motive, &cases, &y);
            format!("tr ({a}) ({i}) (fun {y} => {body})")
        }
    }
}

/// Surface text of the proof term for a derivation.
pub fn extract_proof_text(ax: &FiniteAxiomSet, d: &Derivation) -> String {
    proof_text(&mut Fresh(0), ax, d)
}

/// The kernel proof term of `a ◁ V` for a derivation, over the constants
/// of [`encode_axiom_set`].
pub fn extract_proof_term(ax: &FiniteAxiomSet, _v: &Subset, d: &Derivation) -> Term {
    parse_term(&extract_proof_text(ax, d)).expect("generated proof parses")
}

/// Answer every query of a file, one line each, optionally followed by
/// the derivation.
pub fn run_queries(file: &CoverFile, derivations: bool) -> String {
    let ax = &file.axioms;
    let mut out = String::new();
    for &(a, vi) in &file.queries {
        let (name, v) = &file.subsets[vi];
        match derivation(ax, v, a) {
            Some(d) => {
                out.push_str(&format!("{} {name} covered\n", ax.atoms[a]));
                if derivations {
                    out.push_str(&d.render(ax, 1));
                }
            }
            None => out.push_str(&format!("{} {name} uncovered\n", ax.atoms[a])),
        }
    }
    out
}
