//! Core term language.
//!
//! Terms use nameless binding: `Var(0)` refers to the innermost enclosing
//! binder. Every binder introduces exactly one variable; constructs that bind
//! several variables (eliminator motives) nest single binders.

use std::fmt;
use std::rc::Rc;

pub type RcTerm = Rc<Term>;

/// Abstract syntax of the kernel.
///
/// Type parameters of the inductive formers (`W`, `DW`, `WP`, `Cover`) are
/// ordinary function-typed terms, e.g. the branching family of `W` is a term
/// of type `A -> U0`. Eliminator motives are raw binder bodies since they may
/// be large (classified by the `Type` judgment rather than by `U0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(String),
    Univ,

    Empty,
    /// motive binds `x : N0`
    EmptyElim {
        motive: RcTerm,
        scrut: RcTerm,
    },
    Unit,
    Star,
    /// motive binds `x : N1`
    UnitElim {
        motive: RcTerm,
        case: RcTerm,
        scrut: RcTerm,
    },

    Pi(RcTerm, RcTerm),
    Lam(RcTerm),
    App(RcTerm, RcTerm),

    Sigma(RcTerm, RcTerm),
    Pair(RcTerm, RcTerm),
    Proj1(RcTerm),
    Proj2(RcTerm),
    /// motive binds `z : (x : A) * B`
    Split {
        motive: RcTerm,
        step: RcTerm,
        scrut: RcTerm,
    },

    Sum(RcTerm, RcTerm),
    Inl(RcTerm),
    Inr(RcTerm),
    /// motive binds `s : A + B`
    SumElim {
        motive: RcTerm,
        left: RcTerm,
        right: RcTerm,
        scrut: RcTerm,
    },

    Id(RcTerm, RcTerm, RcTerm),
    Refl(RcTerm),
    /// motive binds `x`, `y`, `p : Id A x y`
    J {
        motive: RcTerm,
        refl_case: RcTerm,
        lhs: RcTerm,
        rhs: RcTerm,
        proof: RcTerm,
    },

    W {
        labels: RcTerm,
        branching: RcTerm,
    },
    Sup {
        label: RcTerm,
        branches: RcTerm,
    },
    /// motive binds `w : W A B`
    WElim {
        motive: RcTerm,
        step: RcTerm,
        scrut: RcTerm,
    },

    DW {
        index_ty: RcTerm,
        labels: RcTerm,
        branching: RcTerm,
        arity: RcTerm,
        index: RcTerm,
    },
    DSup {
        index: RcTerm,
        label: RcTerm,
        branches: RcTerm,
    },
    /// motive binds `i : I`, `w : DW .. i`
    DWElim {
        motive: RcTerm,
        step: RcTerm,
        index: RcTerm,
        scrut: RcTerm,
    },

    WP {
        index_ty: RcTerm,
        rules: RcTerm,
        premises: RcTerm,
        index: RcTerm,
    },
    Ind {
        index: RcTerm,
        rule: RcTerm,
        premises: RcTerm,
    },
    /// motive binds `i : I`, `w : WP .. i`
    WPElim {
        motive: RcTerm,
        step: RcTerm,
        index: RcTerm,
        scrut: RcTerm,
    },

    Cover {
        carrier: RcTerm,
        axioms: RcTerm,
        axiom_sets: RcTerm,
        subset: RcTerm,
        elem: RcTerm,
    },
    Rf {
        elem: RcTerm,
        member: RcTerm,
    },
    Tr {
        elem: RcTerm,
        axiom: RcTerm,
        premises: RcTerm,
    },
    /// motive binds `a : A`, `p : Cover .. a`
    CoverElim {
        motive: RcTerm,
        rf_case: RcTerm,
        tr_case: RcTerm,
        elem: RcTerm,
        scrut: RcTerm,
    },
}

/// Convertibility extensions. All default to off.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub eta_pi: bool,
    pub eta_sigma: bool,
    pub eta_unit: bool,
    pub funext: bool,
}

impl Flags {
    pub const NONE: Flags = Flags {
        eta_pi: false,
        eta_sigma: false,
        eta_unit: false,
        funext: false,
    };
    pub const ALL_ETA: Flags = Flags {
        eta_pi: true,
        eta_sigma: true,
        eta_unit: true,
        funext: false,
    };
    pub const FUNEXT: Flags = Flags {
        eta_pi: false,
        eta_sigma: false,
        eta_unit: false,
        funext: true,
    };

    /// True when every flag set in `self` is also set in `other`.
    pub fn subset_of(&self, other: &Flags) -> bool {
        (!self.eta_pi || other.eta_pi)
            && (!self.eta_sigma || other.eta_sigma)
            && (!self.eta_unit || other.eta_unit)
            && (!self.funext || other.funext)
    }

    pub fn union(&self, other: &Flags) -> Flags {
        Flags {
            eta_pi: self.eta_pi || other.eta_pi,
            eta_sigma: self.eta_sigma || other.eta_sigma,
            eta_unit: self.eta_unit || other.eta_unit,
            funext: self.funext || other.funext,
        }
    }

    /// All 16 flag combinations, in a fixed order.
    pub fn all_combinations() -> Vec<Flags> {
        (0..16u8)
            .map(|m| Flags {
                eta_pi: m & 1 != 0,
                eta_sigma: m & 2 != 0,
                eta_unit: m & 4 != 0,
                funext: m & 8 != 0,
            })
            .collect()
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.eta_pi {
            out.push("eta_pi");
        }
        if self.eta_sigma {
            out.push("eta_sigma");
        }
        if self.eta_unit {
            out.push("eta_unit");
        }
        if self.funext {
            out.push("funext");
        }
        out
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Flags, String> {
        let mut f = Flags::NONE;
        for n in names {
            match n {
                "eta_pi" => f.eta_pi = true,
                "eta_sigma" => f.eta_sigma = true,
                "eta_unit" => f.eta_unit = true,
                "funext" => f.funext = true,
                other => return Err(format!("unknown flag `{other}`")),
            }
        }
        Ok(f)
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        if names.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", names.join(","))
        }
    }
}

impl Term {
    /// Children paired with the number of binders each one sits under.
    pub fn children(&self) -> Vec<(usize, &RcTerm)> {
        use Term::*;
        match self {
            Var(_) | Const(_) | Univ | Empty | Unit | Star => vec![],
            EmptyElim { motive, scrut } => vec![(1, motive), (0, scrut)],
            UnitElim {
                motive,
                case,
                scrut,
            } => vec![(1, motive), (0, case), (0, scrut)],
            Pi(a, b) | Sigma(a, b) => vec![(0, a), (1, b)],
            Lam(b) => vec![(1, b)],
            App(f, a) | Pair(f, a) | Sum(f, a) => vec![(0, f), (0, a)],
            Proj1(t) | Proj2(t) | Inl(t) | Inr(t) | Refl(t) => vec![(0, t)],
            Split {
                motive,
                step,
                scrut,
            } => vec![(1, motive), (0, step), (0, scrut)],
            SumElim {
                motive,
                left,
                right,
                scrut,
            } => {
                vec![(1, motive), (0, left), (0, right), (0, scrut)]
            }
            Id(a, x, y) => vec![(0, a), (0, x), (0, y)],
            J {
                motive,
                refl_case,
                lhs,
                rhs,
                proof,
            } => {
                vec![(3, motive), (0, refl_case), (0, lhs), (0, rhs), (0, proof)]
            }
            W { labels, branching } => vec![(0, labels), (0, branching)],
            Sup { label, branches } => vec![(0, label), (0, branches)],
            WElim {
                motive,
                step,
                scrut,
            } => vec![(1, motive), (0, step), (0, scrut)],
            DW {
                index_ty,
                labels,
                branching,
                arity,
                index,
            } => {
                vec![
                    (0, index_ty),
                    (0, labels),
                    (0, branching),
                    (0, arity),
                    (0, index),
                ]
            }
            DSup {
                index,
                label,
                branches,
            } => vec![(0, index), (0, label), (0, branches)],
            DWElim {
                motive,
                step,
                index,
                scrut,
            }
            | WPElim {
                motive,
                step,
                index,
                scrut,
            } => {
                vec![(2, motive), (0, step), (0, index), (0, scrut)]
            }
            WP {
                index_ty,
                rules,
                premises,
                index,
            } => {
                vec![(0, index_ty), (0, rules), (0, premises), (0, index)]
            }
            Ind {
                index,
                rule,
                premises,
            } => vec![(0, index), (0, rule), (0, premises)],
            Cover {
                carrier,
                axioms,
                axiom_sets,
                subset,
                elem,
            } => {
                vec![
                    (0, carrier),
                    (0, axioms),
                    (0, axiom_sets),
                    (0, subset),
                    (0, elem),
                ]
            }
            Rf { elem, member } => vec![(0, elem), (0, member)],
            Tr {
                elem,
                axiom,
                premises,
            } => vec![(0, elem), (0, axiom), (0, premises)],
            CoverElim {
                motive,
                rf_case,
                tr_case,
                elem,
                scrut,
            } => {
                vec![
                    (2, motive),
                    (0, rf_case),
                    (0, tr_case),
                    (0, elem),
                    (0, scrut),
                ]
            }
        }
    }

    /// Rebuild a node of the same shape from new children, in `children()` order.
    pub fn with_children(&self, mut new: Vec<RcTerm>) -> Term {
        use Term::*;
        let mut it = new.drain(..);
        let mut next = || it.next().expect("arity mismatch in with_children");
        match self {
            Var(_) | Const(_) | Univ | Empty | Unit | Star => self.clone(),
            EmptyElim { .. } => EmptyElim {
                motive: next(),
                scrut: next(),
            },
            UnitElim { .. } => UnitElim {
                motive: next(),
                case: next(),
                scrut: next(),
            },
            Pi(..) => Pi(next(), next()),
            Sigma(..) => Sigma(next(), next()),
            Lam(_) => Lam(next()),
            App(..) => App(next(), next()),
            Pair(..) => Pair(next(), next()),
            Sum(..) => Sum(next(), next()),
            Proj1(_) => Proj1(next()),
            Proj2(_) => Proj2(next()),
            Inl(_) => Inl(next()),
            Inr(_) => Inr(next()),
            Refl(_) => Refl(next()),
            Split { .. } => Split {
                motive: next(),
                step: next(),
                scrut: next(),
            },
            SumElim { .. } => SumElim {
                motive: next(),
                left: next(),
                right: next(),
                scrut: next(),
            },
            Id(..) => Id(next(), next(), next()),
            J { .. } => J {
                motive: next(),
                refl_case: next(),
                lhs: next(),
                rhs: next(),
                proof: next(),
            },
            W { .. } => W {
                labels: next(),
                branching: next(),
            },
            Sup { .. } => Sup {
                label: next(),
                branches: next(),
            },
            WElim { .. } => WElim {
                motive: next(),
                step: next(),
                scrut: next(),
            },
            DW { .. } => DW {
                index_ty: next(),
                labels: next(),
                branching: next(),
                arity: next(),
                index: next(),
            },
            DSup { .. } => DSup {
                index: next(),
                label: next(),
                branches: next(),
            },
            DWElim { .. } => DWElim {
                motive: next(),
                step: next(),
                index: next(),
                scrut: next(),
            },
            WP { .. } => WP {
                index_ty: next(),
                rules: next(),
                premises: next(),
                index: next(),
            },
            Ind { .. } => Ind {
                index: next(),
                rule: next(),
                premises: next(),
            },
            WPElim { .. } => WPElim {
                motive: next(),
                step: next(),
                index: next(),
                scrut: next(),
            },
            Cover { .. } => Cover {
                carrier: next(),
                axioms: next(),
                axiom_sets: next(),
                subset: next(),
                elem: next(),
            },
            Rf { .. } => Rf {
                elem: next(),
                member: next(),
            },
            Tr { .. } => Tr {
                elem: next(),
                axiom: next(),
                premises: next(),
            },
            CoverElim { .. } => CoverElim {
                motive: next(),
                rf_case: next(),
                tr_case: next(),
                elem: next(),
                scrut: next(),
            },
        }
    }

    /// Rewrite free variables. `f(index, cutoff)` is called for every `Var`
    /// whose index is at least `cutoff` (the number of binders crossed).
    fn map_free(&self, cutoff: usize, f: &impl Fn(usize, usize) -> Term) -> Term {
        match self {
            Term::Var(i) if *i >= cutoff => f(*i, cutoff),
            Term::Var(_) => self.clone(),
            _ => {
                let kids = self.children();
                if kids.is_empty() {
                    return self.clone();
                }
                let new = kids
                    .into_iter()
                    .map(|(b, c)| Rc::new(c.map_free(cutoff + b, f)))
                    .collect();
                self.with_children(new)
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(|(_, c)| c.size())
            .sum::<usize>()
    }

    /// Is every variable bound within `depth` enclosing binders?
    pub fn is_scoped(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            _ => self
                .children()
                .into_iter()
                .all(|(b, c)| c.is_scoped(depth + b)),
        }
    }

    /// Does the free variable with index `k` occur in the term?
    pub fn mentions(&self, k: usize) -> bool {
        match self {
            Term::Var(i) => *i == k,
            _ => self.children().into_iter().any(|(b, c)| c.mentions(k + b)),
        }
    }

    /// Names of all constants occurring in the term.
    pub fn constants(&self, out: &mut std::collections::BTreeSet<String>) {
        if let Term::Const(n) = self {
            out.insert(n.clone());
        }
        for (_, c) in self.children() {
            c.constants(out);
        }
    }
}

/// A top-level declaration: a definition when `body` is present, otherwise
/// a postulate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub ty: Term,
    pub body: Option<Term>,
    /// 1-based source position of the declaration keyword (0 when synthetic).
    pub line: usize,
    pub col: usize,
}

/// Shift free indices `>= cutoff` up by `amount`.
pub fn weaken(t: &Term, cutoff: usize, amount: usize) -> Term {
    if amount == 0 {
        return t.clone();
    }
    t.map_free(cutoff, &|i, _| Term::Var(i + amount))
}

/// Replace index `j` by `s` and close the gap left by it.
pub fn subst(t: &Term, j: usize, s: &Term) -> Term {
    t.map_free(j, &|i, c| {
        // `c - j` binders have been crossed; the target index moved up with them.
        match i.cmp(&c) {
            std::cmp::Ordering::Equal => weaken(s, 0, c - j),
            std::cmp::Ordering::Greater => Term::Var(i - 1),
            std::cmp::Ordering::Less => Term::Var(i),
        }
    })
}

/// Syntactic equality; under nameless binding this is alpha-equivalence.
pub fn structural_eq(t: &Term, u: &Term) -> bool {
    t == u
}

/// Small constructors used by builders and tests.
pub mod build {
    use super::*;

    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }
    pub fn cnst(name: &str) -> Term {
        Term::Const(name.to_string())
    }
    pub fn lam(body: Term) -> Term {
        Term::Lam(Rc::new(body))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, app)
    }
    pub fn pi(a: Term, b: Term) -> Term {
        Term::Pi(Rc::new(a), Rc::new(b))
    }
    /// Non-dependent function space.
    pub fn arrow(a: Term, b: Term) -> Term {
        pi(a, weaken(&b, 0, 1))
    }
    pub fn sigma(a: Term, b: Term) -> Term {
        Term::Sigma(Rc::new(a), Rc::new(b))
    }
    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Rc::new(a), Rc::new(b))
    }
    pub fn sum(a: Term, b: Term) -> Term {
        Term::Sum(Rc::new(a), Rc::new(b))
    }
    pub fn inl(a: Term) -> Term {
        Term::Inl(Rc::new(a))
    }
    pub fn inr(a: Term) -> Term {
        Term::Inr(Rc::new(a))
    }
    pub fn id(a: Term, x: Term, y: Term) -> Term {
        Term::Id(Rc::new(a), Rc::new(x), Rc::new(y))
    }
    pub fn refl(a: Term) -> Term {
        Term::Refl(Rc::new(a))
    }
    pub fn w(labels: Term, branching: Term) -> Term {
        Term::W {
            labels: Rc::new(labels),
            branching: Rc::new(branching),
        }
    }
    pub fn sup(label: Term, branches: Term) -> Term {
        Term::Sup {
            label: Rc::new(label),
            branches: Rc::new(branches),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weaken_examples() {
        assert_eq!(weaken(&var(0), 0, 1), var(1));
        assert_eq!(weaken(&lam(var(0)), 0, 5), lam(var(0)));
        assert_eq!(weaken(&lam(var(1)), 0, 2), lam(var(3)));
    }

    #[test]
    fn subst_examples() {
        assert_eq!(subst(&var(0), 0, &Term::Star), Term::Star);
        assert_eq!(subst(&lam(var(1)), 0, &Term::Star), lam(Term::Star));
        assert_eq!(subst(&var(1), 0, &Term::Star), var(0));
    }

    #[test]
    fn subst_under_binder_weakens_replacement() {
        // (\. #1) [0 := #5]  ==>  \. #6
        assert_eq!(subst(&lam(var(1)), 0, &var(5)), lam(var(6)));
    }

    #[test]
    fn structural_eq_examples() {
        assert!(structural_eq(&lam(var(0)), &lam(var(0))));
        assert!(!structural_eq(&Term::Star, &var(0)));
        let s = sup(var(0), var(1));
        assert!(structural_eq(&s, &s.clone()));
    }

    #[test]
    fn flags_subset_and_union() {
        let f = Flags {
            eta_pi: true,
            ..Flags::NONE
        };
        assert!(Flags::NONE.subset_of(&f));
        assert!(f.subset_of(&Flags::ALL_ETA));
        assert!(!Flags::FUNEXT.subset_of(&Flags::ALL_ETA));
        assert_eq!(f.union(&Flags::FUNEXT).names(), vec!["eta_pi", "funext"]);
        assert_eq!(Flags::all_combinations().len(), 16);
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            (0usize..4).prop_map(Term::Var),
            Just(Term::Star),
            Just(Term::Unit),
            Just(Term::Univ),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(lam),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| app(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| pi(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| pair(a, b)),
                (inner.clone(), inner.clone(), inner.clone()).prop_map(|(m, s, w)| Term::WElim {
                    motive: Rc::new(m),
                    step: Rc::new(s),
                    scrut: Rc::new(w)
                }),
                (inner.clone(), inner.clone(), inner.clone(), inner.clone()).prop_map(
                    |(m, s, i, w)| Term::DWElim {
                        motive: Rc::new(m),
                        step: Rc::new(s),
                        index: Rc::new(i),
                        scrut: Rc::new(w)
                    }
                ),
            ]
        })
    }

    proptest! {
        #[test]
        fn subst_after_weaken_is_identity(t in arb_term(), s in arb_term()) {
            prop_assert_eq!(subst(&weaken(&t, 0, 1), 0, &s), t);
        }

        #[test]
        fn weaken_composes(t in arb_term(), c in 0usize..3, m in 0usize..3, n in 0usize..3) {
            prop_assert_eq!(weaken(&weaken(&t, c, m), c, n), weaken(&t, c, m + n));
        }

        #[test]
        fn structural_eq_is_reflexive_and_symmetric(t in arb_term(), u in arb_term()) {
            prop_assert!(structural_eq(&t, &t));
            prop_assert_eq!(structural_eq(&t, &u), structural_eq(&u, &t));
        }
    }
}
