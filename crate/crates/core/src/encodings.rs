//! Builders for the encodings between the inductive constructors, and the
//! shipped corpus they generate.
//!
//! Each construction is written once as a [`Section`]: a list of definitions
//! over named parameters. A section is emitted generically (every definition
//! abstracted over the parameters) and at concrete parameter instances
//! (every rule check restated at the instance).

use std::collections::BTreeMap;

use std::path::Path;

use crate::check::{check_declaration, Context};
use crate::parse::load_file;
use crate::syntax::Flags;

/// Replace identifiers in `text` according to `map` (whole identifiers only).
pub fn replace_idents(text: &str, map: &BTreeMap<&str, String>) -> String {
    let is_start = |c: char| c.is_ascii_alphabetic() || c == '_';
    let is_cont = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if is_start(c) {
            let start = i;
            while i < chars.len() && is_cont(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match map.get(word.as_str()) {
                Some(r) => out.push_str(r),
                None => out.push_str(&word),
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

/// A group of definitions over common parameters.
pub struct Section {
    pub params: Vec<(&'static str, &'static str)>,
    /// `(name, type, body)`; types and bodies may mention the parameters and
    /// earlier definitions of the section by their bare names.
    pub defs: Vec<(&'static str, &'static str, &'static str)>,
}

/// A concrete choice of section parameters.
pub struct Instance {
    pub suffix: &'static str,
    /// Parameter values, in parameter order.
    pub values: Vec<&'static str>,
}

impl Section {
    fn expansion(&self, args: &[String]) -> BTreeMap<&'static str, String> {
        let mut map = BTreeMap::new();
        let applied = args.join(" ");
        for (name, _, _) in &self.defs {
            map.insert(*name, format!("({name} {applied})"));
        }
        for ((p, _), a) in self.params.iter().zip(args) {
            if a != p {
                map.insert(*p, a.clone());
            }
        }
        map
    }

    /// All definitions, each abstracted over the parameters.
    pub fn generic(&self) -> String {
        let names: Vec<String> = self.params.iter().map(|(p, _)| p.to_string()).collect();
        let map = self.expansion(&names);
        let tele: String = self
            .params
            .iter()
            .map(|(p, t)| format!("({p} : {t}) -> "))
            .collect();
        let mut out = String::new();
        for (name, ty, body) in &self.defs {
            out.push_str(&format!(
                "def {name} : {tele}{}\n  := fun {} => {}\n\n",
                replace_idents(ty, &map),
                names.join(" "),
                replace_idents(body, &map)
            ));
        }
        out
    }

    /// All definitions with the parameters replaced by the given closed
    /// terms. The terms must not mention constants named like the binders
    /// of the section's templates.
    pub fn specialize(&self, values: &[&str]) -> String {
        let map: BTreeMap<&str, String> = self
            .params
            .iter()
            .zip(values)
            .map(|((p, _), v)| (*p, format!("({v})")))
            .collect();
        let mut out = String::new();
        for (name, ty, body) in &self.defs {
            out.push_str(&format!(
                "def {name} : {}\n  := {}\n\n",
                replace_idents(ty, &map),
                replace_idents(body, &map)
            ));
        }
        out
    }

    /// The parameter definitions of an instance.
    pub fn instance_params(&self, inst: &Instance) -> String {
        let args: Vec<String> = self
            .params
            .iter()
            .map(|(p, _)| format!("{}_{p}", inst.suffix))
            .collect();
        let map = self.expansion(&args);
        let mut out = String::new();
        for (((p, t), v), a) in self.params.iter().zip(&inst.values).zip(&args) {
            let _ = p;
            out.push_str(&format!("def {a} : {} := {v}\n", replace_idents(t, &map)));
        }
        out.push('\n');
        out
    }

    /// The named definitions restated at an instance, named `<def>_<suffix>`.
    pub fn instance(&self, inst: &Instance, which: &[&str]) -> String {
        let args: Vec<String> = self
            .params
            .iter()
            .map(|(p, _)| format!("{}_{p}", inst.suffix))
            .collect();
        let map = self.expansion(&args);
        let mut out = String::new();
        for (name, ty, body) in self.defs.iter().filter(|(n, _, _)| which.contains(n)) {
            out.push_str(&format!(
                "def {name}_{} : {}\n  := {}\n\n",
                inst.suffix,
                replace_idents(ty, &map),
                replace_idents(body, &map)
            ));
        }
        out
    }
}

/// The statement witnessed by a corpus entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Prelude,
    RepProp,
    CoverAsWP,
    WPAsCover,
    P41i,
    P41ii,
    P51i,
    P51ii,
    P52i,
    P52ii,
    P52iii,
    P52iv,
}

impl Tag {
    pub const ALL: [Tag; 12] = [
        Tag::Prelude,
        Tag::RepProp,
        Tag::CoverAsWP,
        Tag::WPAsCover,
        Tag::P41i,
        Tag::P41ii,
        Tag::P51i,
        Tag::P51ii,
        Tag::P52i,
        Tag::P52ii,
        Tag::P52iii,
        Tag::P52iv,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Tag::Prelude => "prelude",
            Tag::RepProp => "RepProp",
            Tag::CoverAsWP => "CoverAsWP",
            Tag::WPAsCover => "WPAsCover",
            Tag::P41i => "P4.1i",
            Tag::P41ii => "P4.1ii",
            Tag::P51i => "P5.1i",
            Tag::P51ii => "P5.1ii",
            Tag::P52i => "P5.2i",
            Tag::P52ii => "P5.2ii",
            Tag::P52iii => "P5.2iii",
            Tag::P52iv => "P5.2iv",
        }
    }

    pub fn from_name(s: &str) -> Option<Tag> {
        Tag::ALL.iter().copied().find(|t| t.name() == s)
    }

    /// Whether the entry is a definitional encoding (validated by conversion).
    pub fn is_definitional(&self) -> bool {
        matches!(self, Tag::P41ii | Tag::P51ii | Tag::P52ii | Tag::P52iv)
    }

    /// Whether the entry is a propositional encoding (an isomorphism proof).
    pub fn is_propositional(&self) -> bool {
        matches!(self, Tag::P41i | Tag::P51i | Tag::P52i | Tag::P52iii)
    }
}

// ---------------------------------------------------------------------------
// Prelude

pub const PRELUDE: &str = r#"-- Shared definitions: logical equivalence, isomorphism, and the basic
-- combinators for identity types. Checks without any flags.

def Iff : U0 -> U0 -> U0
  := fun A B => (A -> B) * (B -> A)

def Iso : U0 -> U0 -> U0
  := fun A B => (f : A -> B) * (g : B -> A)
       * ((x : A) -> Id A (g (f x)) x) * ((y : B) -> Id B (f (g y)) y)

def sym : (A : U0) -> (x y : A) -> Id A x y -> Id A y x
  := fun A x y p => J (fun a b _ => Id A b a) (fun a => refl a) x y p

def trans : (A : U0) -> (x y z : A) -> Id A x y -> Id A y z -> Id A x z
  := fun A x y z p => J (fun a b _ => Id A b z -> Id A a z) (fun a q => q) x y p

def ap : (A B : U0) -> (f : A -> B) -> (x y : A) -> Id A x y -> Id B (f x) (f y)
  := fun A B f x y p => J (fun a b _ => Id B (f a) (f b)) (fun a => refl (f a)) x y p

def transport : (A : U0) -> (P : A -> U0) -> (x y : A) -> Id A x y -> P x -> P y
  := fun A P x y p => J (fun a b _ => P a -> P b) (fun a u => u) x y p

-- Singletons at a fixed endpoint are contractible.
def Sing : (A : U0) -> A -> U0
  := fun A e => (x : A) * Id A x e

def singContr : (A : U0) -> (e x : A) -> (k : Id A x e) -> Id (Sing A e) (e, refl e) (x, k)
  := fun A e x k => J (fun a b p => Id (Sing A b) (b, refl b) (a, p)) (fun a => refl (a, refl a)) x e k

-- Path induction with one endpoint fixed, derived from contractibility.
def basedJ : (A : U0) -> (e : A) -> (P : (x : A) -> Id A x e -> U0) -> P e (refl e)
    -> (x : A) -> (k : Id A x e) -> P x k
  := fun A e P d x k => transport (Sing A e) (fun s => P (fst s) (snd s)) (e, refl e) (x, k) (singContr A e x k) d
"#;

/// Lemmas available once function extensionality is postulated.
pub const FUNEXT_LEMMAS: &str = r#"-- Function extensionality and consequences used by the isomorphism proofs.
-- Requires the funext flag.

import "prelude.mltt"

postulate funext : (A : U0) -> (B : A -> U0) -> (f g : (x : A) -> B x)
    -> ((x : A) -> Id (B x) (f x) (g x)) -> Id ((x : A) -> B x) f g

-- Eta for functions, propositionally.
def etaPi : (A : U0) -> (B : A -> U0) -> (f : (x : A) -> B x) -> Id ((x : A) -> B x) (fun x => f x) f
  := fun A B f => funext A B (fun x => f x) f (fun x => refl (f x))

-- Eta for a pair of a function and a pointwise proof about it.
def etaPair : (B : U0) -> (T : B -> U0) -> (L : (b : B) -> T b -> U0)
    -> (f : (b : B) -> T b) -> (l : (b : B) -> L b (f b))
    -> Id ((g : (b : B) -> T b) * ((b : B) -> L b (g b))) (fun b => f b, fun b => l b) (f, l)
  := fun B T L f l => transport ((b : B) -> T b)
       (fun v => (m : (b : B) -> L b (v b))
          -> Id ((g : (b : B) -> T b) * ((b : B) -> L b (g b))) (fun b => v b, fun b => m b) (v, m))
       (fun b => f b) f (etaPi B T f)
       (fun m => ap ((b : B) -> L b (f b)) ((g : (b : B) -> T b) * ((b : B) -> L b (g b)))
          (fun m2 => (fun b => f b, m2)) (fun b => m b) m (etaPi B (fun b => L b (f b)) m))
       l

-- Eta for functions of two arguments, propositionally.
def etaPi2 : (B : U0) -> (S : B -> U0) -> (T : (b : B) -> S b -> U0) -> (f : (b : B) -> (s : S b) -> T b s)
    -> Id ((b : B) -> (s : S b) -> T b s) (fun b s => f b s) f
  := fun B S T f => funext B (fun b => (s : S b) -> T b s) (fun b s => f b s) f (fun b => etaPi (S b) (T b) (f b))

-- Eta for a pair of a two-argument function and a pointwise proof about it.
def etaPair2 : (B : U0) -> (S : B -> U0) -> (T : (b : B) -> S b -> U0) -> (L : (b : B) -> (s : S b) -> T b s -> U0)
    -> (f : (b : B) -> (s : S b) -> T b s) -> (l : (b : B) -> (s : S b) -> L b s (f b s))
    -> Id ((g : (b : B) -> (s : S b) -> T b s) * ((b : B) -> (s : S b) -> L b s (g b s)))
          (fun b s => f b s, fun b s => l b s) (f, l)
  := fun B S T L f l => transport ((b : B) -> (s : S b) -> T b s)
       (fun v => (m : (b : B) -> (s : S b) -> L b s (v b s))
          -> Id ((g : (b : B) -> (s : S b) -> T b s) * ((b : B) -> (s : S b) -> L b s (g b s)))
                (fun b s => v b s, fun b s => m b s) (v, m))
       (fun b s => f b s) f (etaPi2 B S T f)
       (fun m => ap ((b : B) -> (s : S b) -> L b s (f b s))
          ((g : (b : B) -> (s : S b) -> T b s) * ((b : B) -> (s : S b) -> L b s (g b s)))
          (fun m2 => (fun b s => f b s, m2)) (fun b s => m b s) m (etaPi2 B S (fun b s => L b s (f b s)) m))
       l
"#;

// ---------------------------------------------------------------------------
// Dependent W-types from W-types

const DW_PARAMS: [(&str, &str); 4] = [
    ("I", "U0"),
    ("N", "I -> U0"),
    ("Br", "(i : I) -> N i -> U0"),
    ("ar", "(i : I) -> (n : N i) -> Br i n -> I"),
];

fn dw_instances() -> Vec<Instance> {
    vec![
        Instance {
            suffix: "empty",
            values: vec![
                "N1",
                "fun _ => N1",
                "fun _ _ => N0",
                "fun _ _ b => absurd (fun _ => N1) b",
            ],
        },
        Instance {
            suffix: "unit",
            values: vec!["N1", "fun _ => N1", "fun _ _ => N1", "fun _ _ _ => star"],
        },
        Instance {
            suffix: "two",
            values: vec![
                "Sum N1 N1",
                "fun _ => Sum N1 N1",
                "fun _ n => case (fun _ => U0) (fun _ => N0) (fun _ => N1) n",
                "fun i _ _ => case (fun _ => Sum N1 N1) (fun _ => inr star) (fun _ => inl star) i",
            ],
        },
    ]
}

/// The W-type of trees labelled by an index together with a rule at it.
///
/// Builders are syntactic: their arguments are spliced into the output, so
/// they should be names of parameters or other inferable terms (an applied
/// `fun` literal does not infer).
pub fn build_free(i: &str, n: &str, br: &str) -> String {
    format!("W ((i : {i}) * ({n}) i) (fun z => ({br}) (fst z) (snd z))")
}

/// The predicate selecting trees whose labels respect the indexing.
pub fn build_legal(i: &str, _n: &str, br: &str, ar: &str) -> String {
    format!(
        "fun j t => elimW (fun _ => ({i}) -> U0) (fun a f h k => ((b : ({br}) (fst a) (snd a)) -> h b (({ar}) (fst a) (snd a) b)) * Id ({i}) k (fst a)) t j",
    )
}

/// The labelled trees, the legality predicate, the encoded type and its
/// constructor; these check without any flags.
fn dw_core_defs() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
            ("Free", "U0", "W ((i : I) * N i) (fun z => Br (fst z) (snd z))"),
            (
                "Legal",
                "I -> Free -> U0",
                "fun j t => elimW (fun _ => I -> U0) (fun a f h k => ((b : Br (fst a) (snd a)) -> h b (ar (fst a) (snd a) b)) * Id I k (fst a)) t j",
            ),
            ("DW'", "I -> U0", "fun i => (w : Free) * Legal i w"),
            (
                "dsup'",
                "(i : I) -> (n : N i) -> ((b : Br i n) -> DW' (ar i n b)) -> DW' i",
                "fun i n f => (sup (i, n) (fun b => fst (f b)), (fun b => snd (f b), refl i))",
            ),
    ]
}

/// Definitional encoding of dependent W-types (needs eta for Pi and Sigma).
pub fn dw_encoding_section() -> Section {
    let mut defs = dw_core_defs();
    defs.extend([
            (
                "StepDW",
                "((i : I) -> DW' i -> U0) -> U0",
                "fun M => (i : I) -> (n : N i) -> (f : (b : Br i n) -> DW' (ar i n b)) -> ((b : Br i n) -> M (ar i n b) (f b)) -> M i (dsup' i n f)",
            ),
            (
                "El'",
                "(M : (i : I) -> DW' i -> U0) -> StepDW M -> (i : I) -> (w : DW' i) -> M i w",
                "fun M d i w => elimW (fun t => (j : I) -> (l : Legal j t) -> M j (t, l)) \
                 (fun a f h j l => J (fun x y e => (n : N y) -> (g : Br y n -> Free) \
                 -> (l1 : (b : Br y n) -> Legal (ar y n b) (g b)) \
                 -> ((b : Br y n) -> (k : I) -> (l2 : Legal k (g b)) -> M k (g b, l2)) \
                 -> M x (sup (y, n) g, (l1, e))) \
                 (fun x n g l1 h2 => d x n (fun b => (g b, l1 b)) (fun b => h2 b (ar x n b) (l1 b))) \
                 j (fst a) (snd l) (snd a) f (fst l) h) (fst w) i (snd w)",
            ),
            ("F_DW", "I -> U0", "DW'"),
            ("I_DW", "(i : I) -> (n : N i) -> ((b : Br i n) -> DW' (ar i n b)) -> DW' i", "dsup'"),
            (
                "E_DW",
                "(M : (i : I) -> DW' i -> U0) -> StepDW M -> (i : I) -> (w : DW' i) -> M i w",
                "El'",
            ),
            (
                "C_DW",
                "(M : (i : I) -> DW' i -> U0) -> (d : StepDW M) -> (i : I) -> (n : N i) \
                 -> (f : (b : Br i n) -> DW' (ar i n b)) \
                 -> Id (M i (dsup' i n f)) (El' M d i (dsup' i n f)) (d i n f (fun b => El' M d (ar i n b) (f b)))",
                "fun M d i n f => refl (El' M d i (dsup' i n f))",
            ),
    ]);
    Section {
        params: DW_PARAMS.to_vec(),
        defs,
    }
}

/// Propositional encoding of dependent W-types: the encoding is isomorphic
/// to the primitive type, using function extensionality but no eta.
pub fn dw_iso_section() -> Section {
    let mut defs = dw_core_defs();
    defs.extend([
        (
            "toEnc",
            "(i : I) -> DW I N Br ar i -> DW' i",
            "fun i w => elimDW (fun j _ => DW' j) (fun j n f h => dsup' j n h) i w",
        ),
        (
            "recEnc",
            "(t : Free) -> (j : I) -> Legal j t -> DW I N Br ar j",
            "fun t => elimW (fun t => (j : I) -> Legal j t -> DW I N Br ar j) \
             (fun a f h j l => split (fun a => (f : Br (fst a) (snd a) -> Free) \
             -> ((b : Br (fst a) (snd a)) -> (k : I) -> Legal k (f b) -> DW I N Br ar k) \
             -> ((b : Br (fst a) (snd a)) -> Legal (ar (fst a) (snd a) b) (f b)) * Id I j (fst a) \
             -> DW I N Br ar j) \
             (fun x n f h l => J (fun p q e => (n : N q) -> (f : Br q n -> Free) \
             -> ((b : Br q n) -> (k : I) -> Legal k (f b) -> DW I N Br ar k) \
             -> ((b : Br q n) -> Legal (ar q n b) (f b)) -> DW I N Br ar p) \
             (fun p n f h l1 => dsup p n (fun b => h b (ar p n b) (l1 b))) \
             j x (snd l) n f h (fst l)) a f h l) t",
        ),
        ("fromEnc", "(i : I) -> DW' i -> DW I N Br ar i", "fun i w => recEnc (fst w) i (snd w)"),
        (
            "fromTo",
            "(i : I) -> (w : DW I N Br ar i) -> Id (DW I N Br ar i) (fromEnc i (toEnc i w)) w",
            "fun i w => elimDW (fun j v => Id (DW I N Br ar j) (fromEnc j (toEnc j v)) v) \
             (fun j n f h => ap ((b : Br j n) -> DW I N Br ar (ar j n b)) (DW I N Br ar j) (fun g => dsup j n g) \
             (fun b => fromEnc (ar j n b) (toEnc (ar j n b) (f b))) f \
             (funext (Br j n) (fun b => DW I N Br ar (ar j n b)) \
             (fun b => fromEnc (ar j n b) (toEnc (ar j n b) (f b))) f h)) i w",
        ),
        (
            "toFromTree",
            "(t : Free) -> (j : I) -> (l : Legal j t) -> Id (DW' j) (toEnc j (fromEnc j (t, l))) (t, l)",
            "fun t => elimW (fun t => (j : I) -> (l : Legal j t) -> Id (DW' j) (toEnc j (fromEnc j (t, l))) (t, l)) \
             (fun a f h j l => split (fun a => (f : Br (fst a) (snd a) -> Free) \
             -> ((b : Br (fst a) (snd a)) -> (k : I) -> (l2 : Legal k (f b)) -> Id (DW' k) (toEnc k (fromEnc k (f b, l2))) (f b, l2)) \
             -> (l : ((b : Br (fst a) (snd a)) -> Legal (ar (fst a) (snd a) b) (f b)) * Id I j (fst a)) \
             -> Id (DW' j) (toEnc j (fromEnc j (sup a f, l))) (sup a f, l)) \
             (fun x n f h l => split (fun l => Id (DW' j) (toEnc j (fromEnc j (sup (x, n) f, l))) (sup (x, n) f, l)) \
             (fun l1 e => J (fun p q e => (n : N q) -> (f : Br q n -> Free) \
             -> ((b : Br q n) -> (k : I) -> (l2 : Legal k (f b)) -> Id (DW' k) (toEnc k (fromEnc k (f b, l2))) (f b, l2)) \
             -> (l1 : (b : Br q n) -> Legal (ar q n b) (f b)) \
             -> Id (DW' p) (toEnc p (fromEnc p (sup (q, n) f, (l1, e)))) (sup (q, n) f, (l1, e))) \
             (fun p n f h l1 => trans (DW' p) \
             (dsup' p n (fun b => toEnc (ar p n b) (fromEnc (ar p n b) (f b, l1 b)))) \
             (dsup' p n (fun b => (f b, l1 b))) \
             (sup (p, n) f, (l1, refl p)) \
             (ap ((b : Br p n) -> DW' (ar p n b)) (DW' p) (fun g => dsup' p n g) \
             (fun b => toEnc (ar p n b) (fromEnc (ar p n b) (f b, l1 b))) (fun b => (f b, l1 b)) \
             (funext (Br p n) (fun b => DW' (ar p n b)) \
             (fun b => toEnc (ar p n b) (fromEnc (ar p n b) (f b, l1 b))) (fun b => (f b, l1 b)) \
             (fun b => h b (ar p n b) (l1 b)))) \
             (ap ((g : Br p n -> Free) * ((b : Br p n) -> Legal (ar p n b) (g b))) (DW' p) \
             (fun s => (sup (p, n) (fst s), (snd s, refl p))) (fun b => f b, fun b => l1 b) (f, l1) \
             (etaPair (Br p n) (fun _ => Free) (fun b t => Legal (ar p n b) t) f l1))) \
             j x e n f h l1) l) a f h l) t",
        ),
        (
            "toFrom",
            "(i : I) -> (w : DW' i) -> Id (DW' i) (toEnc i (fromEnc i w)) w",
            "fun i w => split (fun w => Id (DW' i) (toEnc i (fromEnc i w)) w) (fun t l => toFromTree t i l) w",
        ),
        (
            "isoDW",
            "(i : I) -> Iso (DW I N Br ar i) (DW' i)",
            "fun i => (toEnc i, fromEnc i, fun w => fromTo i w, fun w => toFrom i w)",
        ),
    ]);
    Section {
        params: DW_PARAMS.to_vec(),
        defs,
    }
}

/// One construction inside a corpus file: a section, the instances it is
/// restated at, and which of its definitions are restated.
struct Part {
    section: Section,
    instances: Vec<Instance>,
    restate: Vec<&'static str>,
}

fn emit(header: &str, imports: &[&str], parts: &[Part]) -> String {
    let mut out = String::from(header);
    for imp in imports {
        out.push_str(&format!("import \"{imp}\"\n"));
    }
    out.push('\n');
    for part in parts {
        out.push_str("-- Generic construction over the parameters.\n\n");
        out.push_str(&part.section.generic());
        for inst in &part.instances {
            out.push_str(&format!(
                "-- Restated at the `{}` instance.\n\n",
                inst.suffix
            ));
            out.push_str(&part.section.instance_params(inst));
            out.push_str(&part.section.instance(inst, &part.restate));
        }
    }
    out
}

const PROP_IMPORTS: [&str; 2] = ["prelude.mltt", "funext.mltt"];
const DEF_IMPORTS: [&str; 1] = ["prelude.mltt"];

pub fn p41i() -> String {
    emit(
        "-- W-types propositionally encode dependent W-types: with function\n\
         -- extensionality, the encoding DW' is isomorphic to DW. No eta is used.\n\n",
        &PROP_IMPORTS,
        &[Part {
            section: dw_iso_section(),
            instances: dw_instances(),
            restate: vec!["isoDW"],
        }],
    )
}

pub fn p41ii() -> String {
    emit(
        "-- W-types definitionally encode dependent W-types: the formation,\n\
         -- introduction, elimination and computation rules of DW hold for the\n\
         -- encoding DW' built from a W-type of labelled trees and a legality\n\
         -- predicate. Requires eta for Pi and Sigma.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: dw_encoding_section(),
            instances: dw_instances(),
            restate: vec!["F_DW", "I_DW", "E_DW", "C_DW"],
        }],
    )
}

// ---------------------------------------------------------------------------
// Well-founded predicates

const WP_PARAMS: [(&str, &str); 3] = [
    ("I", "U0"),
    ("N", "I -> U0"),
    ("R", "(i : I) -> N i -> I -> U0"),
];

fn wp_instances() -> Vec<Instance> {
    vec![
        Instance {
            suffix: "empty",
            values: vec!["N1", "fun _ => N1", "fun _ _ _ => N0"],
        },
        Instance {
            suffix: "unit",
            values: vec!["N1", "fun _ => N1", "fun _ _ _ => N1"],
        },
        Instance {
            suffix: "two",
            values: vec![
                "Sum N1 N1",
                "fun _ => Sum N1 N1",
                "fun _ n _ => case (fun _ => U0) (fun _ => N0) (fun _ => N1) n",
            ],
        },
    ]
}

/// Dependent W-type parameters simulating a well-founded predicate: a
/// branch is a premise index paired with a proof that it is a premise.
fn wp_via_dw_core() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        (
            "Br'",
            "(i : I) -> N i -> U0",
            "fun i n => (j : I) * R i n j",
        ),
        (
            "ar'",
            "(i : I) -> (n : N i) -> Br' i n -> I",
            "fun i n b => fst b",
        ),
        ("WP'", "I -> U0", "fun i => DW I N Br' ar' i"),
        (
            "ind'",
            "(i : I) -> (n : N i) -> ((j : I) -> R i n j -> WP' j) -> WP' i",
            "fun i n f => dsup i n (fun b => f (fst b) (snd b))",
        ),
    ]
}

/// Definitional encoding of well-founded predicates by dependent W-types
/// (needs eta for Pi and Sigma).
pub fn wp_via_dw_section() -> Section {
    let mut defs = wp_via_dw_core();
    defs.extend([
        (
            "StepWP",
            "((i : I) -> WP' i -> U0) -> U0",
            "fun M => (i : I) -> (n : N i) -> (f : (j : I) -> R i n j -> WP' j)
       -> ((j : I) -> (r : R i n j) -> M j (f j r)) -> M i (ind' i n f)",
        ),
        (
            "ElWP'",
            "(M : (i : I) -> WP' i -> U0) -> StepWP M -> (i : I) -> (w : WP' i) -> M i w",
            "fun M c i w => elimDW (fun j v => M j v)
       (fun j n f h => c j n (fun k r => f (k, r)) (fun k r => h (k, r))) i w",
        ),
        ("F_WP", "I -> U0", "WP'"),
        (
            "I_WP",
            "(i : I) -> (n : N i) -> ((j : I) -> R i n j -> WP' j) -> WP' i",
            "ind'",
        ),
        (
            "E_WP",
            "(M : (i : I) -> WP' i -> U0) -> StepWP M -> (i : I) -> (w : WP' i) -> M i w",
            "ElWP'",
        ),
        (
            "C_WP",
            "(M : (i : I) -> WP' i -> U0) -> (c : StepWP M) -> (i : I) -> (n : N i)
    -> (f : (j : I) -> R i n j -> WP' j)
    -> Id (M i (ind' i n f)) (ElWP' M c i (ind' i n f)) (c i n f (fun j r => ElWP' M c j (f j r)))",
            "fun M c i n f => refl (ElWP' M c i (ind' i n f))",
        ),
    ]);
    Section {
        params: WP_PARAMS.to_vec(),
        defs,
    }
}

/// Propositional encoding of well-founded predicates by dependent W-types.
pub fn wp_via_dw_iso_section() -> Section {
    let mut defs = wp_via_dw_core();
    defs.extend([
        (
            "toWP'",
            "(i : I) -> WP I N R i -> WP' i",
            "fun i w => elimWP (fun j _ => WP' j) (fun j n f h => ind' j n h) i w",
        ),
        (
            "fromWP'",
            "(i : I) -> WP' i -> WP I N R i",
            "fun i w => elimDW (fun j _ => WP I N R j) (fun j n f h => ind j n (fun k r => h (k, r))) i w",
        ),
        (
            "fromToWP'",
            "(i : I) -> (w : WP I N R i) -> Id (WP I N R i) (fromWP' i (toWP' i w)) w",
            "fun i w => elimWP (fun j v => Id (WP I N R j) (fromWP' j (toWP' j v)) v)
       (fun j n f h => ap ((k : I) -> R j n k -> WP I N R k) (WP I N R j) (fun g => ind j n g)
          (fun k r => fromWP' k (toWP' k (f k r))) f
          (funext I (fun k => R j n k -> WP I N R k) (fun k r => fromWP' k (toWP' k (f k r))) f
             (fun k => funext (R j n k) (fun _ => WP I N R k) (fun r => fromWP' k (toWP' k (f k r))) (f k)
                (fun r => h k r))))
       i w",
        ),
        (
            "toFromWP'",
            "(i : I) -> (w : WP' i) -> Id (WP' i) (toWP' i (fromWP' i w)) w",
            "fun i w => elimDW (fun j v => Id (WP' j) (toWP' j (fromWP' j v)) v)
       (fun j n f h => ap ((b : Br' j n) -> WP' (fst b)) (WP' j) (fun g => dsup j n g)
          (fun b => toWP' (fst b) (fromWP' (fst b) (f (fst b, snd b)))) f
          (funext (Br' j n) (fun b => WP' (fst b)) (fun b => toWP' (fst b) (fromWP' (fst b) (f (fst b, snd b)))) f
             (fun b => split (fun b => Id (WP' (fst b)) (toWP' (fst b) (fromWP' (fst b) (f (fst b, snd b)))) (f b))
                (fun k r => h (k, r)) b)))
       i w",
        ),
        (
            "isoWP'",
            "(i : I) -> Iso (WP I N R i) (WP' i)",
            "fun i => (toWP' i, fromWP' i, fun w => fromToWP' i w, fun w => toFromWP' i w)",
        ),
    ]);
    Section {
        params: WP_PARAMS.to_vec(),
        defs,
    }
}

pub fn p52i() -> String {
    emit(
        "-- Dependent W-types propositionally encode well-founded predicates:\n\
         -- with function extensionality, WP is isomorphic to the dependent\n\
         -- W-type whose branches are premises paired with their proofs.\n\n",
        &PROP_IMPORTS,
        &[Part {
            section: wp_via_dw_iso_section(),
            instances: wp_instances(),
            restate: vec!["isoWP'"],
        }],
    )
}

pub fn p52ii() -> String {
    emit(
        "-- Dependent W-types definitionally encode well-founded predicates:\n\
         -- the rules of WP hold for the encoding WP'. Requires eta for Pi and\n\
         -- Sigma.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: wp_via_dw_section(),
            instances: wp_instances(),
            restate: vec!["F_WP", "I_WP", "E_WP", "C_WP"],
        }],
    )
}

// ---------------------------------------------------------------------------
// W-types from well-founded predicates

const W_PARAMS: [(&str, &str); 2] = [("A", "U0"), ("B", "A -> U0")];

fn w_instances() -> Vec<Instance> {
    vec![
        Instance {
            suffix: "empty",
            values: vec!["N1", "fun _ => N0"],
        },
        Instance {
            suffix: "unit",
            values: vec!["N1", "fun _ => N1"],
        },
        Instance {
            suffix: "two",
            values: vec![
                "Sum N1 N1",
                "fun a => case (fun _ => U0) (fun _ => N0) (fun _ => N1) a",
            ],
        },
    ]
}

/// The well-founded predicate over the unit type whose rules are the labels
/// and whose premises are the branches.
fn w_via_wp_core() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        (
            "WPfam",
            "N1 -> U0",
            "fun j => WP N1 (fun _ => A) (fun _ a _ => B a) j",
        ),
        ("W'", "U0", "WPfam star"),
    ]
}

/// Definitional encoding of W-types by well-founded predicates (needs eta
/// for the unit type and for Pi).
pub fn w_via_wp_section() -> Section {
    let mut defs = w_via_wp_core();
    defs.extend([
        ("sup'", "(a : A) -> (B a -> W') -> W'", "fun a f => ind star a (fun j r => f r)"),
        (
            "StepW",
            "(W' -> U0) -> U0",
            "fun M => (a : A) -> (f : B a -> W') -> ((b : B a) -> M (f b)) -> M (sup' a f)",
        ),
        (
            "ElW'",
            "(M : W' -> U0) -> StepW M -> (w : W') -> M w",
            "fun M d w => elimWP (fun j v => M v) (fun j a f h => d a (fun b => f star b) (fun b => h star b)) star w",
        ),
        ("F_W", "U0", "W'"),
        ("I_W", "(a : A) -> (B a -> W') -> W'", "sup'"),
        ("E_W", "(M : W' -> U0) -> StepW M -> (w : W') -> M w", "ElW'"),
        (
            "C_W",
            "(M : W' -> U0) -> (d : StepW M) -> (a : A) -> (f : B a -> W')
    -> Id (M (sup' a f)) (ElW' M d (sup' a f)) (d a f (fun b => ElW' M d (f b)))",
            "fun M d a f => refl (ElW' M d (sup' a f))",
        ),
    ]);
    Section {
        params: W_PARAMS.to_vec(),
        defs,
    }
}

/// Propositional encoding of W-types by well-founded predicates.
pub fn w_via_wp_iso_section() -> Section {
    let mut defs = w_via_wp_core();
    defs.extend([
        (
            "supU",
            "(a : A) -> (B a -> W') -> W'",
            "fun a f => ind star a (fun j r => unitElim (fun j => WPfam j) (f r) j)",
        ),
        ("toW'", "W A B -> W'", "fun w => elimW (fun _ => W') (fun a f h => supU a h) w"),
        (
            "fromWPfam",
            "(j : N1) -> WPfam j -> W A B",
            "fun j v => elimWP (fun _ _ => W A B) (fun j a f h => sup a (fun b => h star b)) j v",
        ),
        ("fromW'", "W' -> W A B", "fun v => fromWPfam star v"),
        (
            "fromToW'",
            "(w : W A B) -> Id (W A B) (fromW' (toW' w)) w",
            "fun w => elimW (fun w => Id (W A B) (fromW' (toW' w)) w)
       (fun a f h => ap (B a -> W A B) (W A B) (fun g => sup a g) (fun b => fromW' (toW' (f b))) f
          (funext (B a) (fun _ => W A B) (fun b => fromW' (toW' (f b))) f h))
       w",
        ),
        (
            "Back",
            "(j : N1) -> WPfam j -> U0",
            "fun j v => Id (WPfam j) (unitElim (fun j => WPfam j) (toW' (fromWPfam j v)) j) v",
        ),
        (
            "toFromWPfam",
            "(j : N1) -> (v : WPfam j) -> Back j v",
            "fun j v => elimWP (fun j v => Back j v)
       (fun j a f h => unitElim
          (fun j => (f : (k : N1) -> B a -> WPfam k) -> ((k : N1) -> (r : B a) -> Back k (f k r))
             -> Back j (ind j a f))
          (fun f h => ap ((k : N1) -> B a -> WPfam k) W' (fun g => ind star a g)
             (fun k r => unitElim (fun j => WPfam j) (toW' (fromWPfam star (f star r))) k) f
             (funext N1 (fun k => B a -> WPfam k)
                (fun k r => unitElim (fun j => WPfam j) (toW' (fromWPfam star (f star r))) k) f
                (fun k => unitElim
                   (fun k => Id (B a -> WPfam k) (fun r => unitElim (fun j => WPfam j) (toW' (fromWPfam star (f star r))) k) (f k))
                   (funext (B a) (fun _ => W') (fun r => toW' (fromWPfam star (f star r))) (f star) (fun r => h star r))
                   k)))
          j f h)
       j v",
        ),
        ("toFromW'", "(v : W') -> Id W' (toW' (fromW' v)) v", "fun v => toFromWPfam star v"),
        ("isoW'", "Iso (W A B) W'", "(toW', fromW', fromToW', toFromW')"),
    ]);
    Section {
        params: W_PARAMS.to_vec(),
        defs,
    }
}

pub fn p52iii() -> String {
    emit(
        "-- Well-founded predicates propositionally encode W-types (and, through\n\
         -- the encoding of dependent W-types by W-types, dependent W-types):\n\
         -- with function extensionality, W A B is isomorphic to the\n\
         -- well-founded predicate over N1 with rules A and premises B.\n\n",
        &PROP_IMPORTS,
        &[Part {
            section: w_via_wp_iso_section(),
            instances: w_instances(),
            restate: vec!["isoW'"],
        }],
    )
}

pub fn p52iv() -> String {
    emit(
        "-- Well-founded predicates definitionally encode W-types (and, through\n\
         -- the encoding of dependent W-types by W-types, dependent W-types):\n\
         -- the rules of W hold for W' := WP over N1 at star. Requires eta for\n\
         -- the unit type and for Pi.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: w_via_wp_section(),
            instances: w_instances(),
            restate: vec!["F_W", "I_W", "E_W", "C_W"],
        }],
    )
}

// ---------------------------------------------------------------------------
// Covers and well-founded predicates

const COVER_PARAMS: [(&str, &str); 4] = [
    ("A", "U0"),
    ("Ax", "A -> U0"),
    ("C", "(a : A) -> Ax a -> A -> U0"),
    ("V", "A -> U0"),
];

fn cover_instances() -> Vec<Instance> {
    vec![
        Instance {
            suffix: "empty",
            values: vec!["N1", "fun _ => N1", "fun _ _ _ => N0", "fun _ => N0"],
        },
        Instance {
            suffix: "unit",
            values: vec!["N1", "fun _ => N1", "fun _ _ _ => N1", "fun _ => N1"],
        },
        Instance {
            suffix: "two",
            values: vec![
                "Sum N1 N1",
                "fun _ => N1",
                "fun _ _ b => case (fun _ => U0) (fun _ => N0) (fun _ => N1) b",
                "fun a => case (fun _ => U0) (fun _ => N1) (fun _ => N0) a",
            ],
        },
    ]
}

/// The well-founded predicate whose rules at `a` are the proofs of `V a`
/// (no premises) and the axioms at `a` (premises given by `C`).
fn cover_wp_defs() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("Nc", "A -> U0", "fun a => Sum (V a) (Ax a)"),
        (
            "Rc",
            "(a : A) -> Nc a -> A -> U0",
            "fun a n b => case (fun _ => U0) (fun _ => N0) (fun i => C a i b) n",
        ),
        ("WPc", "A -> U0", "fun a => WP A Nc Rc a"),
    ]
}

/// The refinement of `WPc` by canonical proof trees, whose reflexivity
/// nodes carry the canonical empty premise function.
fn cover_canonical_defs() -> Vec<(&'static str, &'static str, &'static str)> {
    let mut defs = cover_wp_defs();
    defs.extend([
        (
            "noPremises",
            "(b : A) -> N0 -> WPc b",
            "fun b z => absurd (fun _ => WPc b) z",
        ),
        (
            "Canonical",
            "(a : A) -> WPc a -> U0",
            "fun a w => elimWP (fun _ _ => U0)
       (fun a n f h => case
          (fun n => ((b : A) -> Rc a n b -> WPc b) -> ((b : A) -> Rc a n b -> U0) -> U0)
          (fun r f h => Id ((b : A) -> N0 -> WPc b) f noPremises)
          (fun i f h => (b : A) -> (s : C a i b) -> h b s)
          n f h)
       a w",
        ),
        ("Cov'", "A -> U0", "fun a => (w : WPc a) * Canonical a w"),
        (
            "rf'",
            "(a : A) -> V a -> Cov' a",
            "fun a r => (ind a (inl r) noPremises, refl noPremises)",
        ),
        (
            "tr'",
            "(a : A) -> (i : Ax a) -> ((b : A) -> C a i b -> Cov' b) -> Cov' a",
            "fun a i r => (ind a (inr i) (fun b s => fst (r b s)), fun b s => snd (r b s))",
        ),
    ]);
    defs
}

/// Definitional encoding of covers by well-founded predicates (needs eta
/// for Pi and Sigma).
pub fn cover_via_wp_section() -> Section {
    let mut defs = cover_canonical_defs();
    defs.extend([
        (
            "RfCase",
            "((a : A) -> Cov' a -> U0) -> U0",
            "fun M => (a : A) -> (r : V a) -> M a (rf' a r)",
        ),
        (
            "TrCase",
            "((a : A) -> Cov' a -> U0) -> U0",
            "fun M => (a : A) -> (i : Ax a) -> (r : (b : A) -> C a i b -> Cov' b)
       -> ((b : A) -> (s : C a i b) -> M b (r b s)) -> M a (tr' a i r)",
        ),
        (
            "ElCov'",
            "(M : (a : A) -> Cov' a -> U0) -> RfCase M -> TrCase M -> (a : A) -> (p : Cov' a) -> M a p",
            "fun M q1 q2 a p => elimWP (fun a w => (c : Canonical a w) -> M a (w, c))
       (fun a n f h => case
          (fun n => (f : (b : A) -> Rc a n b -> WPc b)
             -> ((b : A) -> (s : Rc a n b) -> (c : Canonical b (f b s)) -> M b (f b s, c))
             -> (c : Canonical a (ind a n f)) -> M a (ind a n f, c))
          (fun r f h c => basedJ ((b : A) -> N0 -> WPc b) noPremises
             (fun x k => M a (ind a (inl r) x, k)) (q1 a r) f c)
          (fun i f h c => q2 a i (fun b s => (f b s, c b s)) (fun b s => h b s (c b s)))
          n f h)
       a (fst p) (snd p)",
        ),
        ("F_Cov", "A -> U0", "Cov'"),
        ("I_rf", "(a : A) -> V a -> Cov' a", "rf'"),
        ("I_tr", "(a : A) -> (i : Ax a) -> ((b : A) -> C a i b -> Cov' b) -> Cov' a", "tr'"),
        (
            "E_Cov",
            "(M : (a : A) -> Cov' a -> U0) -> RfCase M -> TrCase M -> (a : A) -> (p : Cov' a) -> M a p",
            "ElCov'",
        ),
        (
            "C_rf",
            "(M : (a : A) -> Cov' a -> U0) -> (q1 : RfCase M) -> (q2 : TrCase M) -> (a : A) -> (r : V a)
    -> Id (M a (rf' a r)) (ElCov' M q1 q2 a (rf' a r)) (q1 a r)",
            "fun M q1 q2 a r => refl (q1 a r)",
        ),
        (
            "C_tr",
            "(M : (a : A) -> Cov' a -> U0) -> (q1 : RfCase M) -> (q2 : TrCase M) -> (a : A) -> (i : Ax a)
    -> (r : (b : A) -> C a i b -> Cov' b)
    -> Id (M a (tr' a i r)) (ElCov' M q1 q2 a (tr' a i r)) (q2 a i r (fun b s => ElCov' M q1 q2 b (r b s)))",
            "fun M q1 q2 a i r => refl (ElCov' M q1 q2 a (tr' a i r))",
        ),
    ]);
    Section {
        params: COVER_PARAMS.to_vec(),
        defs,
    }
}

/// Propositional encoding of covers by well-founded predicates.
pub fn cover_via_wp_iso_section() -> Section {
    let mut defs = cover_canonical_defs();
    defs.extend([
        (
            "toCov'",
            "(a : A) -> Cover A Ax C V a -> Cov' a",
            "fun a p => elimCover (fun a _ => Cov' a) (fun a r => rf' a r) (fun a i r h => tr' a i h) a p",
        ),
        (
            "fromCov'",
            "(a : A) -> Cov' a -> Cover A Ax C V a",
            "fun a p => elimWP (fun a w => Canonical a w -> Cover A Ax C V a)
       (fun a n f h => case
          (fun n => (f : (b : A) -> Rc a n b -> WPc b)
             -> ((b : A) -> (s : Rc a n b) -> Canonical b (f b s) -> Cover A Ax C V b)
             -> Canonical a (ind a n f) -> Cover A Ax C V a)
          (fun r f h c => rf a r)
          (fun i f h c => tr a i (fun b s => h b s (c b s)))
          n f h)
       a (fst p) (snd p)",
        ),
        (
            "fromToCov'",
            "(a : A) -> (p : Cover A Ax C V a) -> Id (Cover A Ax C V a) (fromCov' a (toCov' a p)) p",
            "fun a p => elimCover (fun a p => Id (Cover A Ax C V a) (fromCov' a (toCov' a p)) p)
       (fun a r => refl (rf a r))
       (fun a i r h => ap ((b : A) -> C a i b -> Cover A Ax C V b) (Cover A Ax C V a) (fun g => tr a i g)
          (fun b s => fromCov' b (toCov' b (r b s))) r
          (funext A (fun b => C a i b -> Cover A Ax C V b) (fun b s => fromCov' b (toCov' b (r b s))) r
             (fun b => funext (C a i b) (fun _ => Cover A Ax C V b) (fun s => fromCov' b (toCov' b (r b s))) (r b)
                (fun s => h b s))))
       a p",
        ),
        (
            "toFromTree",
            "(a : A) -> (w : WPc a) -> (c : Canonical a w) -> Id (Cov' a) (toCov' a (fromCov' a (w, c))) (w, c)",
            "fun a w => elimWP (fun a w => (c : Canonical a w) -> Id (Cov' a) (toCov' a (fromCov' a (w, c))) (w, c))
       (fun a n f h => case
          (fun n => (f : (b : A) -> Rc a n b -> WPc b)
             -> ((b : A) -> (s : Rc a n b) -> (c : Canonical b (f b s))
                   -> Id (Cov' b) (toCov' b (fromCov' b (f b s, c))) (f b s, c))
             -> (c : Canonical a (ind a n f)) -> Id (Cov' a) (toCov' a (fromCov' a (ind a n f, c))) (ind a n f, c))
          (fun r f h c => basedJ ((b : A) -> N0 -> WPc b) noPremises
             (fun x k => Id (Cov' a) (toCov' a (fromCov' a (ind a (inl r) x, k))) (ind a (inl r) x, k))
             (refl (rf' a r)) f c)
          (fun i f h c => trans (Cov' a)
             (tr' a i (fun b s => toCov' b (fromCov' b (f b s, c b s))))
             (tr' a i (fun b s => (f b s, c b s)))
             (ind a (inr i) f, c)
             (ap ((b : A) -> C a i b -> Cov' b) (Cov' a) (fun g => tr' a i g)
                (fun b s => toCov' b (fromCov' b (f b s, c b s))) (fun b s => (f b s, c b s))
                (funext A (fun b => C a i b -> Cov' b)
                   (fun b s => toCov' b (fromCov' b (f b s, c b s))) (fun b s => (f b s, c b s))
                   (fun b => funext (C a i b) (fun _ => Cov' b)
                      (fun s => toCov' b (fromCov' b (f b s, c b s))) (fun s => (f b s, c b s))
                      (fun s => h b s (c b s)))))
             (ap ((g : (b : A) -> C a i b -> WPc b) * ((b : A) -> (s : C a i b) -> Canonical b (g b s))) (Cov' a)
                (fun q => (ind a (inr i) (fst q), snd q))
                (fun b s => f b s, fun b s => c b s) (f, c)
                (etaPair2 A (C a i) (fun b s => WPc b) (fun b s t => Canonical b t) f c)))
          n f h)
       a w",
        ),
        (
            "toFromCov'",
            "(a : A) -> (p : Cov' a) -> Id (Cov' a) (toCov' a (fromCov' a p)) p",
            "fun a p => split (fun p => Id (Cov' a) (toCov' a (fromCov' a p)) p) (fun w c => toFromTree a w c) p",
        ),
        (
            "isoCov'",
            "(a : A) -> Iso (Cover A Ax C V a) (Cov' a)",
            "fun a => (toCov' a, fromCov' a, fun p => fromToCov' a p, fun p => toFromCov' a p)",
        ),
    ]);
    Section {
        params: COVER_PARAMS.to_vec(),
        defs,
    }
}

/// Definitional encoding of well-founded predicates by covers with an
/// empty subset; checks without any flags.
pub fn wp_via_cover_section() -> Section {
    Section {
        params: WP_PARAMS.to_vec(),
        defs: vec![
            ("WPcov", "I -> U0", "fun i => Cover I N R (fun _ => N0) i"),
            ("indCov", "(i : I) -> (n : N i) -> ((j : I) -> R i n j -> WPcov j) -> WPcov i", "fun i n f => tr i n f"),
            (
                "StepWPcov",
                "((i : I) -> WPcov i -> U0) -> U0",
                "fun M => (i : I) -> (n : N i) -> (f : (j : I) -> R i n j -> WPcov j)
       -> ((j : I) -> (r : R i n j) -> M j (f j r)) -> M i (indCov i n f)",
            ),
            (
                "ElWPcov",
                "(M : (i : I) -> WPcov i -> U0) -> StepWPcov M -> (i : I) -> (w : WPcov i) -> M i w",
                "fun M c i w => elimCover M (fun a z => absurd (fun _ => M a (rf a z)) z) (fun a n f h => c a n f h) i w",
            ),
            ("F_WPcov", "I -> U0", "WPcov"),
            ("I_WPcov", "(i : I) -> (n : N i) -> ((j : I) -> R i n j -> WPcov j) -> WPcov i", "indCov"),
            (
                "E_WPcov",
                "(M : (i : I) -> WPcov i -> U0) -> StepWPcov M -> (i : I) -> (w : WPcov i) -> M i w",
                "ElWPcov",
            ),
            (
                "C_WPcov",
                "(M : (i : I) -> WPcov i -> U0) -> (c : StepWPcov M) -> (i : I) -> (n : N i)
    -> (f : (j : I) -> R i n j -> WPcov j)
    -> Id (M i (indCov i n f)) (ElWPcov M c i (indCov i n f)) (c i n f (fun j r => ElWPcov M c j (f j r)))",
                "fun M c i n f => refl (ElWPcov M c i (indCov i n f))",
            ),
        ],
    }
}

/// Propositional encoding of well-founded predicates by covers with an
/// empty subset.
pub fn wp_via_cover_iso_section() -> Section {
    Section {
        params: WP_PARAMS.to_vec(),
        defs: vec![
            ("WPcov", "I -> U0", "fun i => Cover I N R (fun _ => N0) i"),
            (
                "toWPcov",
                "(i : I) -> WP I N R i -> WPcov i",
                "fun i w => elimWP (fun j _ => WPcov j) (fun j n f h => tr j n h) i w",
            ),
            (
                "fromWPcov",
                "(i : I) -> WPcov i -> WP I N R i",
                "fun i p => elimCover (fun j _ => WP I N R j) (fun j z => absurd (fun _ => WP I N R j) z)
       (fun j n f h => ind j n h) i p",
            ),
            (
                "fromToWPcov",
                "(i : I) -> (w : WP I N R i) -> Id (WP I N R i) (fromWPcov i (toWPcov i w)) w",
                "fun i w => elimWP (fun j v => Id (WP I N R j) (fromWPcov j (toWPcov j v)) v)
       (fun j n f h => ap ((k : I) -> R j n k -> WP I N R k) (WP I N R j) (fun g => ind j n g)
          (fun k r => fromWPcov k (toWPcov k (f k r))) f
          (funext I (fun k => R j n k -> WP I N R k) (fun k r => fromWPcov k (toWPcov k (f k r))) f
             (fun k => funext (R j n k) (fun _ => WP I N R k) (fun r => fromWPcov k (toWPcov k (f k r))) (f k)
                (fun r => h k r))))
       i w",
            ),
            (
                "toFromWPcov",
                "(i : I) -> (p : WPcov i) -> Id (WPcov i) (toWPcov i (fromWPcov i p)) p",
                "fun i p => elimCover (fun j q => Id (WPcov j) (toWPcov j (fromWPcov j q)) q)
       (fun j z => absurd (fun z => Id (WPcov j) (toWPcov j (fromWPcov j (rf j z))) (rf j z)) z)
       (fun j n f h => ap ((k : I) -> R j n k -> WPcov k) (WPcov j) (fun g => tr j n g)
          (fun k r => toWPcov k (fromWPcov k (f k r))) f
          (funext I (fun k => R j n k -> WPcov k) (fun k r => toWPcov k (fromWPcov k (f k r))) f
             (fun k => funext (R j n k) (fun _ => WPcov k) (fun r => toWPcov k (fromWPcov k (f k r))) (f k)
                (fun r => h k r))))
       i p",
            ),
            (
                "isoWPcov",
                "(i : I) -> Iso (WP I N R i) (WPcov i)",
                "fun i => (toWPcov i, fromWPcov i, fun w => fromToWPcov i w, fun p => toFromWPcov i p)",
            ),
        ],
    }
}

pub fn p51i() -> String {
    emit(
        "-- Well-founded predicates and covers propositionally encode each other:\n\
         -- with function extensionality, a cover is isomorphic to the type of\n\
         -- canonical proof trees of a well-founded predicate, and a\n\
         -- well-founded predicate is isomorphic to a cover with empty subset.\n\n",
        &PROP_IMPORTS,
        &[
            Part {
                section: cover_via_wp_iso_section(),
                instances: cover_instances(),
                restate: vec!["isoCov'"],
            },
            Part {
                section: wp_via_cover_iso_section(),
                instances: wp_instances(),
                restate: vec!["isoWPcov"],
            },
        ],
    )
}

pub fn p51ii() -> String {
    emit(
        "-- Well-founded predicates and covers definitionally encode each other:\n\
         -- the rules of covers hold for canonical proof trees of a well-founded\n\
         -- predicate (requires eta for Pi and Sigma), and the rules of\n\
         -- well-founded predicates hold for covers with empty subset.\n\n",
        &DEF_IMPORTS,
        &[
            Part {
                section: cover_via_wp_section(),
                instances: cover_instances(),
                restate: vec!["F_Cov", "I_rf", "I_tr", "E_Cov", "C_rf", "C_tr"],
            },
            Part {
                section: wp_via_cover_section(),
                instances: wp_instances(),
                restate: vec!["F_WPcov", "I_WPcov", "E_WPcov", "C_WPcov"],
            },
        ],
    )
}

// ---------------------------------------------------------------------------
// Logical equivalences that need no flags

pub fn rep_prop_section() -> Section {
    Section {
        params: WP_PARAMS.to_vec(),
        defs: vec![
            (
                "Unfolded",
                "I -> U0",
                "fun i => (n : N i) * ((j : I) -> R i n j -> WP I N R j)",
            ),
            (
                "unfold",
                "(i : I) -> WP I N R i -> Unfolded i",
                "fun i w => elimWP (fun j _ => Unfolded j) (fun j n f h => (n, f)) i w",
            ),
            (
                "fold",
                "(i : I) -> Unfolded i -> WP I N R i",
                "fun i p => ind i (fst p) (snd p)",
            ),
            (
                "repProp",
                "(i : I) -> Iff (WP I N R i) (Unfolded i)",
                "fun i => (fun w => unfold i w, fun p => fold i p)",
            ),
        ],
    }
}

pub fn rep_prop() -> String {
    emit(
        "-- Representation property: a well-founded predicate holds at i exactly\n\
         -- when some rule at i has all its premises satisfied.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: rep_prop_section(),
            instances: wp_instances(),
            restate: vec!["repProp"],
        }],
    )
}

pub fn cover_as_wp_section() -> Section {
    let mut defs = cover_wp_defs();
    defs.extend([
        (
            "coverToWP",
            "(a : A) -> Cover A Ax C V a -> WPc a",
            "fun a p => elimCover (fun a _ => WPc a)
       (fun a r => ind a (inl r) (fun b z => absurd (fun _ => WPc b) z))
       (fun a i r h => ind a (inr i) h) a p",
        ),
        (
            "wpToCover",
            "(a : A) -> WPc a -> Cover A Ax C V a",
            "fun a w => elimWP (fun a _ => Cover A Ax C V a)
       (fun a n f h => case (fun n => ((b : A) -> Rc a n b -> Cover A Ax C V b) -> Cover A Ax C V a)
          (fun r h => rf a r) (fun i h => tr a i h) n h)
       a w",
        ),
        (
            "coverAsWP",
            "(a : A) -> Iff (Cover A Ax C V a) (WPc a)",
            "fun a => (fun p => coverToWP a p, fun w => wpToCover a w)",
        ),
    ]);
    Section {
        params: COVER_PARAMS.to_vec(),
        defs,
    }
}

pub fn cover_as_wp() -> String {
    emit(
        "-- A cover is logically equivalent to the well-founded predicate whose\n\
         -- rules at a are the proofs of V a (no premises) and the axioms at a.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: cover_as_wp_section(),
            instances: cover_instances(),
            restate: vec!["coverAsWP"],
        }],
    )
}

pub fn wp_as_cover_section() -> Section {
    Section {
        params: WP_PARAMS.to_vec(),
        defs: vec![
            (
                "wpToEmptyCover",
                "(i : I) -> WP I N R i -> Cover I N R (fun _ => N0) i",
                "fun i w => elimWP (fun j _ => Cover I N R (fun _ => N0) j) (fun j n f h => tr j n h) i w",
            ),
            (
                "emptyCoverToWP",
                "(i : I) -> Cover I N R (fun _ => N0) i -> WP I N R i",
                "fun i p => elimCover (fun j _ => WP I N R j) (fun j z => absurd (fun _ => WP I N R j) z)
       (fun j n f h => ind j n h) i p",
            ),
            (
                "wpAsCover",
                "(i : I) -> Iff (WP I N R i) (Cover I N R (fun _ => N0) i)",
                "fun i => (fun w => wpToEmptyCover i w, fun p => emptyCoverToWP i p)",
            ),
        ],
    }
}

pub fn wp_as_cover() -> String {
    emit(
        "-- A well-founded predicate is logically equivalent to the cover with\n\
         -- its rules as axioms, its premises as axiom sets and empty subset.\n\n",
        &DEF_IMPORTS,
        &[Part {
            section: wp_as_cover_section(),
            instances: wp_instances(),
            restate: vec!["wpAsCover"],
        }],
    )
}

// ---------------------------------------------------------------------------
// Corpus

/// One line of the corpus manifest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub tag: Tag,
    pub file: String,
    pub flags: Flags,
}

pub fn manifest() -> Vec<CorpusEntry> {
    let e = |tag, file: &str, names: &[&str]| CorpusEntry {
        tag,
        file: file.to_string(),
        flags: Flags::from_names(names.iter().copied()).expect("valid flag names"),
    };
    vec![
        e(Tag::Prelude, "prelude.mltt", &[]),
        e(Tag::RepProp, "rep_prop.mltt", &[]),
        e(Tag::CoverAsWP, "cover_as_wp.mltt", &[]),
        e(Tag::WPAsCover, "wp_as_cover.mltt", &[]),
        e(Tag::P41i, "p41i.mltt", &["funext"]),
        e(Tag::P41ii, "p41ii.mltt", &["eta_pi", "eta_sigma"]),
        e(Tag::P51i, "p51i.mltt", &["funext"]),
        e(Tag::P51ii, "p51ii.mltt", &["eta_pi", "eta_sigma"]),
        e(Tag::P52i, "p52i.mltt", &["funext"]),
        e(Tag::P52ii, "p52ii.mltt", &["eta_pi", "eta_sigma"]),
        e(Tag::P52iii, "p52iii.mltt", &["funext"]),
        e(Tag::P52iv, "p52iv.mltt", &["eta_pi", "eta_unit"]),
    ]
}

pub fn manifest_text() -> String {
    let mut out = String::from("# <tag> <file> <required flags>\n");
    for e in manifest() {
        let mut line = format!("{} {}", e.tag.name(), e.file);
        for n in e.flags.names() {
            line.push(' ');
            line.push_str(n);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Every shipped corpus file with its generated contents.
pub fn corpus_files() -> Vec<(String, String)> {
    vec![
        ("prelude.mltt".into(), PRELUDE.into()),
        ("funext.mltt".into(), FUNEXT_LEMMAS.into()),
        ("rep_prop.mltt".into(), rep_prop()),
        ("cover_as_wp.mltt".into(), cover_as_wp()),
        ("wp_as_cover.mltt".into(), wp_as_cover()),
        ("p41i.mltt".into(), p41i()),
        ("p41ii.mltt".into(), p41ii()),
        ("p51i.mltt".into(), p51i()),
        ("p51ii.mltt".into(), p51ii()),
        ("p52i.mltt".into(), p52i()),
        ("p52ii.mltt".into(), p52ii()),
        ("p52iii.mltt".into(), p52iii()),
        ("p52iv.mltt".into(), p52iv()),
        ("manifest".into(), manifest_text()),
    ]
}

// ---------------------------------------------------------------------------
// Builders at given parameters

/// Which half of an encoding to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Rule validation by conversion (needs eta flags).
    Definitional,
    /// Isomorphism proofs (needs function extensionality).
    Propositional,
}

/// `Free`, `Legal`, `DW'`, `dsup'`, `El'` and the rule checks.
pub fn build_dw_encoding(i: &str, n: &str, br: &str, ar: &str) -> String {
    dw_encoding_section().specialize(&[i, n, br, ar])
}

/// The maps between DW and DW' and both round-trip proofs.
pub fn build_dw_iso(i: &str, n: &str, br: &str, ar: &str) -> String {
    dw_iso_section().specialize(&[i, n, br, ar])
}

pub fn build_cover_as_wp(a: &str, ax: &str, c: &str, v: &str) -> String {
    cover_as_wp_section().specialize(&[a, ax, c, v])
}

pub fn build_wp_as_cover(i: &str, n: &str, r: &str) -> String {
    wp_as_cover_section().specialize(&[i, n, r])
}

/// Canonical proof trees and either the cover rules or the isomorphism.
pub fn build_canonical(a: &str, ax: &str, c: &str, v: &str, variant: Variant) -> String {
    match variant {
        Variant::Definitional => cover_via_wp_section().specialize(&[a, ax, c, v]),
        Variant::Propositional => cover_via_wp_iso_section().specialize(&[a, ax, c, v]),
    }
}

pub fn build_wp_via_dw(i: &str, n: &str, r: &str, variant: Variant) -> String {
    match variant {
        Variant::Definitional => wp_via_dw_section().specialize(&[i, n, r]),
        Variant::Propositional => wp_via_dw_iso_section().specialize(&[i, n, r]),
    }
}

pub fn build_w_via_wp(a: &str, b: &str, variant: Variant) -> String {
    match variant {
        Variant::Definitional => w_via_wp_section().specialize(&[a, b]),
        Variant::Propositional => w_via_wp_iso_section().specialize(&[a, b]),
    }
}

pub fn build_representation_lemma(i: &str, n: &str, r: &str) -> String {
    rep_prop_section().specialize(&[i, n, r])
}

// ---------------------------------------------------------------------------
// Checking the corpus

/// Parse a manifest: `<tag> <file> <flag>*` per line, `#` comments.
pub fn parse_manifest(text: &str) -> Result<Vec<CorpusEntry>, String> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let tag_name = words.next().unwrap_or_default();
        let tag = Tag::from_name(tag_name)
            .ok_or_else(|| format!("manifest line {}: unknown tag `{tag_name}`", k + 1))?;
        let file = words
            .next()
            .ok_or_else(|| format!("manifest line {}: missing file", k + 1))?
            .to_string();
        let flags =
            Flags::from_names(words).map_err(|e| format!("manifest line {}: {e}", k + 1))?;
        out.push(CorpusEntry { tag, file, flags });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    /// The entry needs flags that are not enabled.
    Skip,
    Fail(String),
}

/// The outcome of a rule-conversion check under the enabled flags, for a
/// skipped definitional entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoggedConversion {
    pub decl: String,
    /// `None` when convertible, otherwise the error kind.
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub entry: CorpusEntry,
    pub status: EntryStatus,
    pub conversions: Vec<LoggedConversion>,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub flags: Flags,
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn count(&self, f: impl Fn(&EntryStatus) -> bool) -> usize {
        self.entries.iter().filter(|e| f(&e.status)).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(|s| matches!(s, EntryStatus::Fail(_))) > 0
    }

    pub fn status_of(&self, tag: Tag) -> Option<&EntryStatus> {
        self.entries
            .iter()
            .find(|e| e.entry.tag == tag)
            .map(|e| &e.status)
    }

    pub fn render(&self) -> String {
        let mut out = format!("corpus under {}\n", self.flags);
        for e in &self.entries {
            let word = match &e.status {
                EntryStatus::Pass => "PASS",
                EntryStatus::Skip => "SKIP",
                EntryStatus::Fail(_) => "FAIL",
            };
            out.push_str(&format!(
                "{word} {} {} requires {}\n",
                e.entry.tag.name(),
                e.entry.file,
                e.entry.flags
            ));
            if let EntryStatus::Fail(msg) = &e.status {
                for line in msg.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            for c in &e.conversions {
                match &c.error {
                    None => out.push_str(&format!("  log {}: convertible\n", c.decl)),
                    Some(k) => out.push_str(&format!("  log {}: not convertible ({k})\n", c.decl)),
                }
            }
        }
        out.push_str(&format!(
            "summary: {} passed, {} skipped, {} failed\n",
            self.count(|s| *s == EntryStatus::Pass),
            self.count(|s| *s == EntryStatus::Skip),
            self.count(|s| matches!(s, EntryStatus::Fail(_)))
        ));
        out
    }
}

fn check_entry(dir: &Path, entry: &CorpusEntry, flags: Flags) -> EntryReport {
    let report = |status, conversions| EntryReport {
        entry: entry.clone(),
        status,
        conversions,
    };
    let decls = match load_file(&dir.join(&entry.file)) {
        Ok(d) => d,
        Err(e) => return report(EntryStatus::Fail(e.to_string()), vec![]),
    };
    if entry.flags.subset_of(&flags) {
        let mut ctx = Context::new();
        for d in &decls {
            if let Err(e) = check_declaration(&mut ctx, d, flags) {
                return report(EntryStatus::Fail(format!("{}: {e}", d.name)), vec![]);
            }
        }
        return report(EntryStatus::Pass, vec![]);
    }
    // Skipped. For definitional entries, record how each rule-conversion
    // check fares under the enabled flags, in a context built with the
    // required ones.
    let mut conversions = Vec::new();
    if entry.tag.is_definitional() {
        let strong = flags.union(&entry.flags);
        let mut ctx = Context::new();
        for d in &decls {
            if d.name.starts_with("C_") {
                let mut weak = ctx.clone();
                let error = check_declaration(&mut weak, d, flags)
                    .err()
                    .map(|e| e.kind.as_str().to_string());
                conversions.push(LoggedConversion {
                    decl: d.name.clone(),
                    error,
                });
            }
            if let Err(e) = check_declaration(&mut ctx, d, strong) {
                return report(EntryStatus::Fail(format!("{}: {e}", d.name)), conversions);
            }
        }
    }
    report(EntryStatus::Skip, conversions)
}

/// Check every manifest entry whose required flags are enabled; report the
/// others as skipped.
pub fn check_corpus(dir: &Path, flags: Flags) -> Result<CorpusReport, String> {
    let manifest_path = dir.join("manifest");
    let text = std::fs::read_to_string(&manifest_path)
        .map_err(|e| format!("{}: {e}", manifest_path.display()))?;
    let entries = parse_manifest(&text)?;
    let entries = entries.iter().map(|e| check_entry(dir, e, flags)).collect();
    Ok(CorpusReport { flags, entries })
}
