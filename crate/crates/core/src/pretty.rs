//! Pretty-printer producing text that parses back to the same term.
//!
//! Bound variables are named `x<level>` where the level counts enclosing
//! binders (including any context), primed if that would capture a constant.

use std::collections::BTreeSet;

use crate::parse::{Item, SourceFile};
use crate::syntax::{subst, Decl, Term};

/// Precedence of a printed form; a form is parenthesized when it appears
/// in a position demanding a higher precedence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    /// `fun`, binder groups, arrows
    Term,
    /// non-dependent `A * B`
    Sigma,
    /// application and keyword forms
    App,
    Atom,
}

struct Printer {
    consts: BTreeSet<String>,
    /// Names of the context variables, by level; used where unambiguous.
    locals: Vec<String>,
}

/// Whether `n` has the shape of a generated binder name.
fn is_generated(n: &str) -> bool {
    let core = n.trim_end_matches('\'');
    core.len() > 1 && core.starts_with('x') && core[1..].chars().all(|c| c.is_ascii_digit())
}

impl Printer {
    fn new(t: &[&Term]) -> Printer {
        let mut consts = BTreeSet::new();
        for t in t {
            t.constants(&mut consts);
        }
        Printer {
            consts,
            locals: Vec::new(),
        }
    }

    fn with_locals(t: &[&Term], names: &[String]) -> Printer {
        let mut p = Printer::new(t);
        p.locals = names
            .iter()
            .map(|n| {
                let unique = names.iter().filter(|m| *m == n).count() == 1;
                if unique && !is_generated(n) && !p.consts.contains(n) {
                    n.clone()
                } else {
                    String::new()
                }
            })
            .collect();
        p
    }

    fn name(&self, level: usize) -> String {
        if let Some(n) = self.locals.get(level).filter(|n| !n.is_empty()) {
            return n.clone();
        }
        let mut n = format!("x{level}");
        while self.consts.contains(&n) {
            n.push('\'');
        }
        n
    }

    fn paren(s: String, have: Prec, want: Prec) -> String {
        if have < want {
            format!("({s})")
        } else {
            s
        }
    }

    fn strengthen(t: &Term) -> Term {
        subst(t, 0, &Term::Star)
    }

    fn kw(&self, depth: usize, want: Prec, kw: &str, args: &[String]) -> String {
        let mut s = kw.to_string();
        for a in args {
            s.push(' ');
            s.push_str(a);
        }
        let _ = depth;
        Printer::paren(s, Prec::App, want)
    }

    fn arg(&self, t: &Term, depth: usize) -> String {
        self.pp(t, depth, Prec::Atom)
    }

    fn motive(&self, body: &Term, depth: usize, n: usize) -> String {
        let names: Vec<String> = (0..n).map(|k| self.name(depth + k)).collect();
        format!(
            "(fun {} => {})",
            names.join(" "),
            self.pp(body, depth + n, Prec::Term)
        )
    }

    fn pp(&self, t: &Term, depth: usize, want: Prec) -> String {
        use Term::*;
        match t {
            Var(i) => match depth.checked_sub(i + 1) {
                Some(l) => self.name(l),
                None => format!("#{i}"),
            },
            Const(n) => n.clone(),
            Univ => "U0".into(),
            Empty => "N0".into(),
            Unit => "N1".into(),
            Star => "star".into(),
            Lam(_) => {
                let mut names = Vec::new();
                let mut cur = t;
                while let Lam(b) = cur {
                    names.push(self.name(depth + names.len()));
                    cur = b;
                }
                let s = format!(
                    "fun {} => {}",
                    names.join(" "),
                    self.pp(cur, depth + names.len(), Prec::Term)
                );
                Printer::paren(s, Prec::Term, want)
            }
            Pi(a, b) | Sigma(a, b) => {
                let sym = if matches!(t, Pi(..)) { "->" } else { "*" };
                let s = if b.mentions(0) {
                    format!(
                        "({} : {}) {sym} {}",
                        self.name(depth),
                        self.pp(a, depth, Prec::Term),
                        self.pp(b, depth + 1, Prec::Term)
                    )
                } else if matches!(t, Pi(..)) {
                    format!(
                        "{} -> {}",
                        self.pp(a, depth, Prec::Sigma),
                        self.pp(&Printer::strengthen(b), depth, Prec::Term)
                    )
                } else {
                    let s = format!(
                        "{} * {}",
                        self.pp(a, depth, Prec::App),
                        self.pp(&Printer::strengthen(b), depth, Prec::Sigma)
                    );
                    return Printer::paren(s, Prec::Sigma, want);
                };
                Printer::paren(s, Prec::Term, want)
            }
            App(f, a) => {
                let s = format!("{} {}", self.pp(f, depth, Prec::App), self.arg(a, depth));
                Printer::paren(s, Prec::App, want)
            }
            Pair(a, b) => {
                format!(
                    "({}, {})",
                    self.pp(a, depth, Prec::Term),
                    self.pp(b, depth, Prec::Term)
                )
            }
            Proj1(p) => self.kw(depth, want, "fst", &[self.arg(p, depth)]),
            Proj2(p) => self.kw(depth, want, "snd", &[self.arg(p, depth)]),
            Inl(a) => self.kw(depth, want, "inl", &[self.arg(a, depth)]),
            Inr(a) => self.kw(depth, want, "inr", &[self.arg(a, depth)]),
            Refl(a) => self.kw(depth, want, "refl", &[self.arg(a, depth)]),
            Sum(a, b) => self.kw(
                depth,
                want,
                "Sum",
                &[self.arg(a, depth), self.arg(b, depth)],
            ),
            Id(a, x, y) => self.kw(
                depth,
                want,
                "Id",
                &[self.arg(a, depth), self.arg(x, depth), self.arg(y, depth)],
            ),
            EmptyElim { motive, scrut } => self.kw(
                depth,
                want,
                "absurd",
                &[self.motive(motive, depth, 1), self.arg(scrut, depth)],
            ),
            UnitElim {
                motive,
                case,
                scrut,
            } => self.kw(
                depth,
                want,
                "unitElim",
                &[
                    self.motive(motive, depth, 1),
                    self.arg(case, depth),
                    self.arg(scrut, depth),
                ],
            ),
            Split {
                motive,
                step,
                scrut,
            } => self.kw(
                depth,
                want,
                "split",
                &[
                    self.motive(motive, depth, 1),
                    self.arg(step, depth),
                    self.arg(scrut, depth),
                ],
            ),
            SumElim {
                motive,
                left,
                right,
                scrut,
            } => self.kw(
                depth,
                want,
                "case",
                &[
                    self.motive(motive, depth, 1),
                    self.arg(left, depth),
                    self.arg(right, depth),
                    self.arg(scrut, depth),
                ],
            ),
            J {
                motive,
                refl_case,
                lhs,
                rhs,
                proof,
            } => self.kw(
                depth,
                want,
                "J",
                &[
                    self.motive(motive, depth, 3),
                    self.arg(refl_case, depth),
                    self.arg(lhs, depth),
                    self.arg(rhs, depth),
                    self.arg(proof, depth),
                ],
            ),
            W { labels, branching } => self.kw(
                depth,
                want,
                "W",
                &[self.arg(labels, depth), self.arg(branching, depth)],
            ),
            Sup { label, branches } => self.kw(
                depth,
                want,
                "sup",
                &[self.arg(label, depth), self.arg(branches, depth)],
            ),
            WElim {
                motive,
                step,
                scrut,
            } => self.kw(
                depth,
                want,
                "elimW",
                &[
                    self.motive(motive, depth, 1),
                    self.arg(step, depth),
                    self.arg(scrut, depth),
                ],
            ),
            DW {
                index_ty,
                labels,
                branching,
                arity,
                index,
            } => self.kw(
                depth,
                want,
                "DW",
                &[
                    self.arg(index_ty, depth),
                    self.arg(labels, depth),
                    self.arg(branching, depth),
                    self.arg(arity, depth),
                    self.arg(index, depth),
                ],
            ),
            DSup {
                index,
                label,
                branches,
            } => self.kw(
                depth,
                want,
                "dsup",
                &[
                    self.arg(index, depth),
                    self.arg(label, depth),
                    self.arg(branches, depth),
                ],
            ),
            DWElim {
                motive,
                step,
                index,
                scrut,
            } => self.kw(
                depth,
                want,
                "elimDW",
                &[
                    self.motive(motive, depth, 2),
                    self.arg(step, depth),
                    self.arg(index, depth),
                    self.arg(scrut, depth),
                ],
            ),
            WP {
                index_ty,
                rules,
                premises,
                index,
            } => self.kw(
                depth,
                want,
                "WP",
                &[
                    self.arg(index_ty, depth),
                    self.arg(rules, depth),
                    self.arg(premises, depth),
                    self.arg(index, depth),
                ],
            ),
            Ind {
                index,
                rule,
                premises,
            } => self.kw(
                depth,
                want,
                "ind",
                &[
                    self.arg(index, depth),
                    self.arg(rule, depth),
                    self.arg(premises, depth),
                ],
            ),
            WPElim {
                motive,
                step,
                index,
                scrut,
            } => self.kw(
                depth,
                want,
                "elimWP",
                &[
                    self.motive(motive, depth, 2),
                    self.arg(step, depth),
                    self.arg(index, depth),
                    self.arg(scrut, depth),
                ],
            ),
            Cover {
                carrier,
                axioms,
                axiom_sets,
                subset,
                elem,
            } => self.kw(
                depth,
                want,
                "Cover",
                &[
                    self.arg(carrier, depth),
                    self.arg(axioms, depth),
                    self.arg(axiom_sets, depth),
                    self.arg(subset, depth),
                    self.arg(elem, depth),
                ],
            ),
            Rf { elem, member } => self.kw(
                depth,
                want,
                "rf",
                &[self.arg(elem, depth), self.arg(member, depth)],
            ),
            Tr {
                elem,
                axiom,
                premises,
            } => self.kw(
                depth,
                want,
                "tr",
                &[
                    self.arg(elem, depth),
                    self.arg(axiom, depth),
                    self.arg(premises, depth),
                ],
            ),
            CoverElim {
                motive,
                rf_case,
                tr_case,
                elem,
                scrut,
            } => self.kw(
                depth,
                want,
                "elimCover",
                &[
                    self.motive(motive, depth, 2),
                    self.arg(rf_case, depth),
                    self.arg(tr_case, depth),
                    self.arg(elem, depth),
                    self.arg(scrut, depth),
                ],
            ),
        }
    }
}

/// Print a closed term.
pub fn pretty(t: &Term) -> String {
    Printer::new(&[t]).pp(t, 0, Prec::Term)
}

/// Print a term under local variables named `names` (outermost first).
/// A local keeps its name when that is unambiguous; otherwise, and for
/// binders inside the term, names are generated from the level.
pub fn pretty_in(names: &[String], t: &Term) -> String {
    Printer::with_locals(&[t], names).pp(t, names.len(), Prec::Term)
}

pub fn pretty_decl(d: &Decl) -> String {
    match &d.body {
        Some(b) => {
            let p = Printer::new(&[&d.ty, b]);
            format!(
                "def {} : {}\n  := {}\n",
                d.name,
                p.pp(&d.ty, 0, Prec::Term),
                p.pp(b, 0, Prec::Term)
            )
        }
        None => format!("postulate {} : {}\n", d.name, pretty(&d.ty)),
    }
}

/// Print a whole file; source positions are not preserved.
pub fn pretty_file(f: &SourceFile) -> String {
    let mut out = String::new();
    for item in &f.items {
        match item {
            Item::Import { path, .. } => out.push_str(&format!("import \"{path}\"\n")),
            Item::Decl(d) => out.push_str(&pretty_decl(d)),
        }
    }
    out
}
