//! Normalization by evaluation.
//!
//! Terms evaluate into a semantic domain of [`Value`]s in which every
//! computation rule has already fired; stuck eliminations accumulate on
//! neutral spines. Readback is type-directed and is where the optional
//! eta laws for Pi, Sigma and N1 are applied.

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::syntax::{Flags, RcTerm, Term};

pub type Val = Rc<Value>;

/// A top-level declaration as seen by the evaluator.
#[derive(Clone)]
pub struct GlobalDef {
    pub ty: Val,
    /// `None` for postulates, which evaluate to neutral constants.
    pub value: Option<Val>,
}

#[derive(Clone, Default)]
pub struct Globals {
    defs: HashMap<String, GlobalDef>,
    order: Vec<String>,
}

impl Globals {
    pub fn get(&self, name: &str) -> Option<&GlobalDef> {
        self.defs.get(name)
    }
    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }
    pub fn insert(&mut self, name: &str, def: GlobalDef) {
        if self.defs.insert(name.to_string(), def).is_none() {
            self.order.push(name.to_string());
        }
    }
    /// Names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.order
    }
}

/// Persistent list of local values; index 0 is the innermost binder.
#[derive(Clone, Default)]
pub struct Locals(Option<Rc<(Val, Locals)>>);

impl Locals {
    pub fn push(&self, v: Val) -> Locals {
        Locals(Some(Rc::new((v, self.clone()))))
    }
    pub fn get(&self, mut i: usize) -> Option<&Val> {
        let mut cur = self;
        loop {
            let node = cur.0.as_ref()?;
            if i == 0 {
                return Some(&node.0);
            }
            i -= 1;
            cur = &node.1;
        }
    }
    pub fn len(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Some(node) = &cur.0 {
            n += 1;
            cur = &node.1;
        }
        n
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }
}

#[derive(Clone)]
pub struct Env {
    pub locals: Locals,
    pub globals: Rc<Globals>,
}

impl Env {
    pub fn new(globals: Rc<Globals>) -> Env {
        Env {
            locals: Locals::default(),
            globals,
        }
    }
    pub fn push(&self, v: Val) -> Env {
        Env {
            locals: self.locals.push(v),
            globals: self.globals.clone(),
        }
    }
}

#[derive(Clone)]
pub enum Closure {
    /// A term body under `n` binders, closed over its defining environment.
    Term {
        env: Env,
        body: RcTerm,
    },
    Native(Rc<dyn Fn(&[Val]) -> Val>),
}

impl Closure {
    pub fn apply(&self, args: &[Val]) -> Val {
        match self {
            Closure::Term { env, body } => {
                let mut env = env.clone();
                for a in args {
                    env = env.push(a.clone());
                }
                eval(&env, body)
            }
            Closure::Native(f) => f(args),
        }
    }
    pub fn apply1(&self, a: &Val) -> Val {
        self.apply(std::slice::from_ref(a))
    }
    pub fn native(f: impl Fn(&[Val]) -> Val + 'static) -> Closure {
        Closure::Native(Rc::new(f))
    }
}

#[derive(Clone)]
pub struct DwParams {
    pub index_ty: Val,
    pub labels: Val,
    pub branching: Val,
    pub arity: Val,
}

#[derive(Clone)]
pub struct WpParams {
    pub index_ty: Val,
    pub rules: Val,
    pub premises: Val,
}

#[derive(Clone)]
pub struct CoverParams {
    pub carrier: Val,
    pub axioms: Val,
    pub axiom_sets: Val,
    pub subset: Val,
}

#[derive(Clone)]
pub enum Head {
    /// de Bruijn level
    Var(usize),
    Const(String),
}

/// A stuck elimination frame.
#[derive(Clone)]
pub enum Elim {
    App(Val),
    Proj1,
    Proj2,
    Split {
        motive: Closure,
        step: Val,
    },
    EmptyElim {
        motive: Closure,
    },
    UnitElim {
        motive: Closure,
        case: Val,
    },
    SumElim {
        motive: Closure,
        left: Val,
        right: Val,
    },
    J {
        motive: Closure,
        refl_case: Val,
        lhs: Val,
        rhs: Val,
    },
    WElim {
        motive: Closure,
        step: Val,
    },
    DWElim {
        motive: Closure,
        step: Val,
        index: Option<Val>,
    },
    WPElim {
        motive: Closure,
        step: Val,
        index: Val,
    },
    CoverElim {
        motive: Closure,
        rf_case: Val,
        tr_case: Val,
        elem: Val,
    },
}

#[derive(Clone)]
pub enum Value {
    Univ,
    Empty,
    Unit,
    Star,
    Pi(Val, Closure),
    Lam(Closure),
    Sigma(Val, Closure),
    Pair(Val, Val),
    Sum(Val, Val),
    Inl(Val),
    Inr(Val),
    Id(Val, Val, Val),
    Refl(Val),
    W(Val, Val),
    Sup(Val, Val),
    DW(DwParams, Val),
    DSup(Val, Val, Val),
    WP(WpParams, Val),
    Ind(Val, Val, Val),
    Cover(CoverParams, Val),
    Rf(Val, Val),
    Tr(Val, Val, Val),
    Neutral(Head, Vec<Elim>),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Value::Univ => "Univ",
            Value::Empty => "Empty",
            Value::Unit => "Unit",
            Value::Star => "Star",
            Value::Pi(..) => "Pi",
            Value::Lam(..) => "Lam",
            Value::Sigma(..) => "Sigma",
            Value::Pair(..) => "Pair",
            Value::Sum(..) => "Sum",
            Value::Inl(..) => "Inl",
            Value::Inr(..) => "Inr",
            Value::Id(..) => "Id",
            Value::Refl(..) => "Refl",
            Value::W(..) => "W",
            Value::Sup(..) => "Sup",
            Value::DW(..) => "DW",
            Value::DSup(..) => "DSup",
            Value::WP(..) => "WP",
            Value::Ind(..) => "Ind",
            Value::Cover(..) => "Cover",
            Value::Rf(..) => "Rf",
            Value::Tr(..) => "Tr",
            Value::Neutral(..) => "Neutral",
        };
        write!(f, "<{name}>")
    }
}

impl Value {
    pub fn var(level: usize) -> Val {
        Rc::new(Value::Neutral(Head::Var(level), Vec::new()))
    }
    pub fn is_neutral(&self) -> bool {
        matches!(self, Value::Neutral(..))
    }
}

// ---------------------------------------------------------------------------
// Evaluation guard

thread_local! {
    static DEPTH: Cell<usize> = const { Cell::new(0) };
    static LIMIT: Cell<usize> = const { Cell::new(DEFAULT_EVAL_DEPTH) };
}

pub const DEFAULT_EVAL_DEPTH: usize = 20_000;

/// Set the nesting limit for evaluation on the current thread.
pub fn set_eval_depth_limit(limit: usize) {
    LIMIT.with(|l| l.set(limit));
}

struct DepthGuard;

impl DepthGuard {
    fn enter() -> DepthGuard {
        let d = DEPTH.with(|d| {
            let n = d.get() + 1;
            d.set(n);
            n
        });
        let limit = LIMIT.with(|l| l.get());
        if d > limit {
            DEPTH.with(|d| d.set(0));
            panic!("evaluation depth limit of {limit} exceeded; input is likely ill-typed");
        }
        DepthGuard
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|d| d.set(d.get().saturating_sub(1)));
    }
}

// ---------------------------------------------------------------------------
// Evaluation

fn clo(env: &Env, body: &RcTerm) -> Closure {
    Closure::Term {
        env: env.clone(),
        body: body.clone(),
    }
}

pub fn eval(env: &Env, t: &Term) -> Val {
    let _guard = DepthGuard::enter();
    let ev = |t: &RcTerm| eval(env, t);
    match t {
        Term::Var(i) => match env.locals.get(*i) {
            Some(v) => v.clone(),
            None => panic!("eval: unbound variable #{i}"),
        },
        Term::Const(name) => match env.globals.get(name) {
            Some(GlobalDef { value: Some(v), .. }) => v.clone(),
            Some(GlobalDef { value: None, .. }) => {
                Rc::new(Value::Neutral(Head::Const(name.clone()), Vec::new()))
            }
            None => panic!("eval: unknown constant `{name}`"),
        },
        Term::Univ => Rc::new(Value::Univ),
        Term::Empty => Rc::new(Value::Empty),
        Term::Unit => Rc::new(Value::Unit),
        Term::Star => Rc::new(Value::Star),
        Term::EmptyElim { motive, scrut } => empty_elim(clo(env, motive), ev(scrut)),
        Term::UnitElim {
            motive,
            case,
            scrut,
        } => unit_elim(clo(env, motive), ev(case), ev(scrut)),
        Term::Pi(a, b) => Rc::new(Value::Pi(ev(a), clo(env, b))),
        Term::Lam(b) => Rc::new(Value::Lam(clo(env, b))),
        Term::App(f, a) => apply(&ev(f), &ev(a)),
        Term::Sigma(a, b) => Rc::new(Value::Sigma(ev(a), clo(env, b))),
        Term::Pair(a, b) => Rc::new(Value::Pair(ev(a), ev(b))),
        Term::Proj1(p) => proj1(&ev(p)),
        Term::Proj2(p) => proj2(&ev(p)),
        Term::Split {
            motive,
            step,
            scrut,
        } => split(clo(env, motive), ev(step), ev(scrut)),
        Term::Sum(a, b) => Rc::new(Value::Sum(ev(a), ev(b))),
        Term::Inl(a) => Rc::new(Value::Inl(ev(a))),
        Term::Inr(a) => Rc::new(Value::Inr(ev(a))),
        Term::SumElim {
            motive,
            left,
            right,
            scrut,
        } => sum_elim(clo(env, motive), ev(left), ev(right), ev(scrut)),
        Term::Id(a, x, y) => Rc::new(Value::Id(ev(a), ev(x), ev(y))),
        Term::Refl(a) => Rc::new(Value::Refl(ev(a))),
        Term::J {
            motive,
            refl_case,
            lhs,
            rhs,
            proof,
        } => j_elim(clo(env, motive), ev(refl_case), ev(lhs), ev(rhs), ev(proof)),
        Term::W { labels, branching } => Rc::new(Value::W(ev(labels), ev(branching))),
        Term::Sup { label, branches } => Rc::new(Value::Sup(ev(label), ev(branches))),
        Term::WElim {
            motive,
            step,
            scrut,
        } => w_elim(clo(env, motive), ev(step), ev(scrut)),
        Term::DW {
            index_ty,
            labels,
            branching,
            arity,
            index,
        } => Rc::new(Value::DW(
            DwParams {
                index_ty: ev(index_ty),
                labels: ev(labels),
                branching: ev(branching),
                arity: ev(arity),
            },
            ev(index),
        )),
        Term::DSup {
            index,
            label,
            branches,
        } => Rc::new(Value::DSup(ev(index), ev(label), ev(branches))),
        Term::DWElim {
            motive,
            step,
            index,
            scrut,
        } => dw_elim(clo(env, motive), ev(step), Some(ev(index)), ev(scrut)),
        Term::WP {
            index_ty,
            rules,
            premises,
            index,
        } => Rc::new(Value::WP(
            WpParams {
                index_ty: ev(index_ty),
                rules: ev(rules),
                premises: ev(premises),
            },
            ev(index),
        )),
        Term::Ind {
            index,
            rule,
            premises,
        } => Rc::new(Value::Ind(ev(index), ev(rule), ev(premises))),
        Term::WPElim {
            motive,
            step,
            index,
            scrut,
        } => wp_elim(clo(env, motive), ev(step), ev(index), ev(scrut)),
        Term::Cover {
            carrier,
            axioms,
            axiom_sets,
            subset,
            elem,
        } => Rc::new(Value::Cover(
            CoverParams {
                carrier: ev(carrier),
                axioms: ev(axioms),
                axiom_sets: ev(axiom_sets),
                subset: ev(subset),
            },
            ev(elem),
        )),
        Term::Rf { elem, member } => Rc::new(Value::Rf(ev(elem), ev(member))),
        Term::Tr {
            elem,
            axiom,
            premises,
        } => Rc::new(Value::Tr(ev(elem), ev(axiom), ev(premises))),
        Term::CoverElim {
            motive,
            rf_case,
            tr_case,
            elem,
            scrut,
        } => cover_elim(
            clo(env, motive),
            ev(rf_case),
            ev(tr_case),
            ev(elem),
            ev(scrut),
        ),
    }
}

fn stuck(v: &Val, e: Elim, what: &str) -> Val {
    match v.as_ref() {
        Value::Neutral(h, sp) => {
            let mut sp = sp.clone();
            sp.push(e);
            Rc::new(Value::Neutral(h.clone(), sp))
        }
        other => panic!("{what}: eliminating non-canonical value {other:?}"),
    }
}

pub fn apply(f: &Val, a: &Val) -> Val {
    match f.as_ref() {
        Value::Lam(c) => c.apply1(a),
        _ => stuck(f, Elim::App(a.clone()), "apply"),
    }
}

pub fn apply_all(f: &Val, args: &[Val]) -> Val {
    args.iter().fold(f.clone(), |acc, a| apply(&acc, a))
}

pub fn proj1(p: &Val) -> Val {
    match p.as_ref() {
        Value::Pair(a, _) => a.clone(),
        _ => stuck(p, Elim::Proj1, "fst"),
    }
}

pub fn proj2(p: &Val) -> Val {
    match p.as_ref() {
        Value::Pair(_, b) => b.clone(),
        _ => stuck(p, Elim::Proj2, "snd"),
    }
}

pub fn split(motive: Closure, step: Val, z: Val) -> Val {
    match z.as_ref() {
        Value::Pair(a, b) => apply_all(&step, &[a.clone(), b.clone()]),
        _ => stuck(&z, Elim::Split { motive, step }, "split"),
    }
}

pub fn empty_elim(motive: Closure, z: Val) -> Val {
    stuck(&z, Elim::EmptyElim { motive }, "absurd")
}

pub fn unit_elim(motive: Closure, case: Val, z: Val) -> Val {
    match z.as_ref() {
        Value::Star => case,
        _ => stuck(&z, Elim::UnitElim { motive, case }, "unitElim"),
    }
}

pub fn sum_elim(motive: Closure, left: Val, right: Val, z: Val) -> Val {
    match z.as_ref() {
        Value::Inl(a) => apply(&left, a),
        Value::Inr(b) => apply(&right, b),
        _ => stuck(
            &z,
            Elim::SumElim {
                motive,
                left,
                right,
            },
            "case",
        ),
    }
}

pub fn j_elim(motive: Closure, refl_case: Val, lhs: Val, rhs: Val, p: Val) -> Val {
    match p.as_ref() {
        Value::Refl(x) => apply(&refl_case, x),
        _ => stuck(
            &p,
            Elim::J {
                motive,
                refl_case,
                lhs,
                rhs,
            },
            "J",
        ),
    }
}

/// `elimW M d (sup a f) = d a f (\b. elimW M d (f b))`
pub fn w_elim(motive: Closure, step: Val, w: Val) -> Val {
    match w.as_ref() {
        Value::Sup(a, f) => {
            let (m, s, f2) = (motive.clone(), step.clone(), f.clone());
            let rec = vlam(move |b| w_elim(m.clone(), s.clone(), apply(&f2, &b)));
            apply_all(&step, &[a.clone(), f.clone(), rec])
        }
        _ => stuck(&w, Elim::WElim { motive, step }, "elimW"),
    }
}

/// `elimDW M d i (dsup i n f) = d i n f (\b. elimDW M d (ar i n b) (f b))`
///
/// The index of a stuck frame is informational only: readback recovers it
/// from the scrutinee's type. Recursive calls leave it empty because the
/// arity function is a parameter of the type, not of the value.
pub fn dw_elim(motive: Closure, step: Val, index: Option<Val>, w: Val) -> Val {
    match w.as_ref() {
        Value::DSup(i, n, f) => {
            let (m, s, f2) = (motive.clone(), step.clone(), f.clone());
            let rec = vlam(move |b| dw_elim(m.clone(), s.clone(), None, apply(&f2, &b)));
            apply_all(&step, &[i.clone(), n.clone(), f.clone(), rec])
        }
        _ => stuck(
            &w,
            Elim::DWElim {
                motive,
                step,
                index,
            },
            "elimDW",
        ),
    }
}

/// `elimWP M c i (ind i n f) = c i n f (\j r. elimWP M c j (f j r))`
pub fn wp_elim(motive: Closure, step: Val, index: Val, w: Val) -> Val {
    match w.as_ref() {
        Value::Ind(i, n, f) => {
            let (m, s, f2) = (motive.clone(), step.clone(), f.clone());
            let rec = vlam(move |j| {
                let (m, s, f2, j2) = (m.clone(), s.clone(), f2.clone(), j.clone());
                vlam(move |r| {
                    wp_elim(
                        m.clone(),
                        s.clone(),
                        j2.clone(),
                        apply_all(&f2, &[j2.clone(), r]),
                    )
                })
            });
            apply_all(&step, &[i.clone(), n.clone(), f.clone(), rec])
        }
        _ => stuck(
            &w,
            Elim::WPElim {
                motive,
                step,
                index,
            },
            "elimWP",
        ),
    }
}

/// `elimCover M q1 q2 a (rf a r) = q1 a r`,
/// `elimCover M q1 q2 a (tr a i r) = q2 a i r (\b s. elimCover M q1 q2 b (r b s))`
pub fn cover_elim(motive: Closure, rf_case: Val, tr_case: Val, elem: Val, p: Val) -> Val {
    match p.as_ref() {
        Value::Rf(a, r) => apply_all(&rf_case, &[a.clone(), r.clone()]),
        Value::Tr(a, i, r) => {
            let (m, q1, q2, r2) = (motive.clone(), rf_case.clone(), tr_case.clone(), r.clone());
            let rec = vlam(move |b| {
                let (m, q1, q2, r2, b2) =
                    (m.clone(), q1.clone(), q2.clone(), r2.clone(), b.clone());
                vlam(move |s| {
                    cover_elim(
                        m.clone(),
                        q1.clone(),
                        q2.clone(),
                        b2.clone(),
                        apply_all(&r2, &[b2.clone(), s]),
                    )
                })
            });
            apply_all(&tr_case, &[a.clone(), i.clone(), r.clone(), rec])
        }
        _ => stuck(
            &p,
            Elim::CoverElim {
                motive,
                rf_case,
                tr_case,
                elem,
            },
            "elimCover",
        ),
    }
}

/// Re-apply a stuck frame to a (possibly now canonical) value.
pub fn apply_elim(v: Val, e: &Elim) -> Val {
    match e {
        Elim::App(a) => apply(&v, a),
        Elim::Proj1 => proj1(&v),
        Elim::Proj2 => proj2(&v),
        Elim::Split { motive, step } => split(motive.clone(), step.clone(), v),
        Elim::EmptyElim { motive } => empty_elim(motive.clone(), v),
        Elim::UnitElim { motive, case } => unit_elim(motive.clone(), case.clone(), v),
        Elim::SumElim {
            motive,
            left,
            right,
        } => sum_elim(motive.clone(), left.clone(), right.clone(), v),
        Elim::J {
            motive,
            refl_case,
            lhs,
            rhs,
        } => j_elim(
            motive.clone(),
            refl_case.clone(),
            lhs.clone(),
            rhs.clone(),
            v,
        ),
        Elim::WElim { motive, step } => w_elim(motive.clone(), step.clone(), v),
        Elim::DWElim {
            motive,
            step,
            index,
        } => dw_elim(motive.clone(), step.clone(), index.clone(), v),
        Elim::WPElim {
            motive,
            step,
            index,
        } => wp_elim(motive.clone(), step.clone(), index.clone(), v),
        Elim::CoverElim {
            motive,
            rf_case,
            tr_case,
            elem,
        } => cover_elim(
            motive.clone(),
            rf_case.clone(),
            tr_case.clone(),
            elem.clone(),
            v,
        ),
    }
}

// ---------------------------------------------------------------------------
// Value-level constructors for the types appearing in the typing rules

pub fn vlam(f: impl Fn(Val) -> Val + 'static) -> Val {
    Rc::new(Value::Lam(Closure::native(move |args| f(args[0].clone()))))
}

pub fn vpi(dom: Val, cod: impl Fn(Val) -> Val + 'static) -> Val {
    Rc::new(Value::Pi(
        dom,
        Closure::native(move |args| cod(args[0].clone())),
    ))
}

pub fn varrow(dom: Val, cod: Val) -> Val {
    vpi(dom, move |_| cod.clone())
}

pub fn vsigma(dom: Val, cod: impl Fn(Val) -> Val + 'static) -> Val {
    Rc::new(Value::Sigma(
        dom,
        Closure::native(move |args| cod(args[0].clone())),
    ))
}

fn univ() -> Val {
    Rc::new(Value::Univ)
}

/// Types of type-former parameters and eliminator cases.
pub mod rules {
    use super::*;

    /// `(x : A) -> (y : B x) -> M (x, y)`
    pub fn split_step(a: &Val, b: &Closure, motive: &Closure) -> Val {
        let (b, m) = (b.clone(), motive.clone());
        vpi(a.clone(), move |x| {
            let m = m.clone();
            let x2 = x.clone();
            vpi(b.apply1(&x), move |y| {
                m.apply1(&Rc::new(Value::Pair(x2.clone(), y)))
            })
        })
    }

    pub fn sum_left(a: &Val, motive: &Closure) -> Val {
        let m = motive.clone();
        vpi(a.clone(), move |x| m.apply1(&Rc::new(Value::Inl(x))))
    }

    pub fn sum_right(b: &Val, motive: &Closure) -> Val {
        let m = motive.clone();
        vpi(b.clone(), move |x| m.apply1(&Rc::new(Value::Inr(x))))
    }

    pub fn j_refl(a: &Val, motive: &Closure) -> Val {
        let m = motive.clone();
        vpi(a.clone(), move |x| {
            m.apply(&[x.clone(), x.clone(), Rc::new(Value::Refl(x))])
        })
    }

    /// `A -> U0`
    pub fn family(a: &Val) -> Val {
        varrow(a.clone(), univ())
    }

    /// `B a -> W A B`
    pub fn w_branches(a_ty: &Val, b: &Val, label: &Val) -> Val {
        varrow(apply(b, label), Rc::new(Value::W(a_ty.clone(), b.clone())))
    }

    /// `(a : A) -> (f : B a -> W A B) -> ((b : B a) -> M (f b)) -> M (sup a f)`
    pub fn w_step(a_ty: &Val, b: &Val, motive: &Closure) -> Val {
        let (a_ty2, b, m) = (a_ty.clone(), b.clone(), motive.clone());
        vpi(a_ty.clone(), move |a| {
            let (b, m, a2) = (b.clone(), m.clone(), a.clone());
            let ba = apply(&b, &a);
            let wt = Rc::new(Value::W(a_ty2.clone(), b.clone()));
            vpi(varrow(ba.clone(), wt), move |f| {
                let (m, f2, m2, a3) = (m.clone(), f.clone(), m.clone(), a2.clone());
                let ih = vpi(ba.clone(), move |bb| m.apply1(&apply(&f2, &bb)));
                vpi(ih, move |_| {
                    m2.apply1(&Rc::new(Value::Sup(a3.clone(), f.clone())))
                })
            })
        })
    }

    /// `(i : I) -> N i -> U0`
    pub fn dw_branching_ty(p_index: &Val, p_labels: &Val) -> Val {
        let n = p_labels.clone();
        vpi(p_index.clone(), move |i| varrow(apply(&n, &i), univ()))
    }

    /// `(i : I) -> (n : N i) -> Br i n -> I`
    pub fn dw_arity_ty(p_index: &Val, p_labels: &Val, p_branching: &Val) -> Val {
        let (ity, n, br) = (p_index.clone(), p_labels.clone(), p_branching.clone());
        vpi(p_index.clone(), move |i| {
            let (ity, br, i2) = (ity.clone(), br.clone(), i.clone());
            vpi(apply(&n, &i), move |nn| {
                varrow(apply_all(&br, &[i2.clone(), nn]), ity.clone())
            })
        })
    }

    /// `(b : Br i n) -> DW (ar i n b)`
    pub fn dw_branches(p: &DwParams, i: &Val, n: &Val) -> Val {
        let (p2, i2, n2) = (p.clone(), i.clone(), n.clone());
        vpi(apply_all(&p.branching, &[i.clone(), n.clone()]), move |b| {
            Rc::new(Value::DW(
                p2.clone(),
                apply_all(&p2.arity, &[i2.clone(), n2.clone(), b]),
            ))
        })
    }

    /// `(i : I) -> (n : N i) -> (f : (b : Br i n) -> DW (ar i n b))
    ///   -> ((b : Br i n) -> M (ar i n b) (f b)) -> M i (dsup i n f)`
    pub fn dw_step(p: &DwParams, motive: &Closure) -> Val {
        let (p, m) = (p.clone(), motive.clone());
        vpi(p.index_ty.clone(), move |i| {
            let (p, m, i) = (p.clone(), m.clone(), i.clone());
            vpi(apply(&p.labels, &i), move |n| {
                let (p2, m, i2, n2) = (p.clone(), m.clone(), i.clone(), n.clone());
                vpi(dw_branches(&p, &i, &n), move |f| {
                    let (p3, m2, i3, n3, f2) =
                        (p2.clone(), m.clone(), i2.clone(), n2.clone(), f.clone());
                    let ih = vpi(
                        apply_all(&p2.branching, &[i2.clone(), n2.clone()]),
                        move |b| {
                            let idx = apply_all(&p3.arity, &[i3.clone(), n3.clone(), b.clone()]);
                            m2.apply(&[idx, apply(&f2, &b)])
                        },
                    );
                    let (m, i4, n4) = (m.clone(), i2.clone(), n2.clone());
                    vpi(ih, move |_| {
                        m.apply(&[
                            i4.clone(),
                            Rc::new(Value::DSup(i4.clone(), n4.clone(), f.clone())),
                        ])
                    })
                })
            })
        })
    }

    /// `(i : I) -> N i -> I -> U0`
    pub fn wp_premises_ty(p_index: &Val, p_rules: &Val) -> Val {
        let (ity, n) = (p_index.clone(), p_rules.clone());
        vpi(p_index.clone(), move |i| {
            varrow(apply(&n, &i), varrow(ity.clone(), univ()))
        })
    }

    /// `(j : I) -> R i n j -> WP j`
    pub fn wp_premise_fn(p: &WpParams, i: &Val, n: &Val) -> Val {
        let (p2, i2, n2) = (p.clone(), i.clone(), n.clone());
        vpi(p.index_ty.clone(), move |j| {
            varrow(
                apply_all(&p2.premises, &[i2.clone(), n2.clone(), j.clone()]),
                Rc::new(Value::WP(p2.clone(), j)),
            )
        })
    }

    /// `(i : I) -> (n : N i) -> (f : (j : I) -> R i n j -> WP j)
    ///   -> ((j : I) -> (r : R i n j) -> M j (f j r)) -> M i (ind i n f)`
    pub fn wp_step(p: &WpParams, motive: &Closure) -> Val {
        let (p, m) = (p.clone(), motive.clone());
        vpi(p.index_ty.clone(), move |i| {
            let (p, m, i) = (p.clone(), m.clone(), i.clone());
            vpi(apply(&p.rules, &i), move |n| {
                let (p2, m, i2, n2) = (p.clone(), m.clone(), i.clone(), n.clone());
                vpi(wp_premise_fn(&p, &i, &n), move |f| {
                    let (p3, m2, i3, n3, f2) =
                        (p2.clone(), m.clone(), i2.clone(), n2.clone(), f.clone());
                    let ih = vpi(p2.index_ty.clone(), move |j| {
                        let (m3, f3, j2) = (m2.clone(), f2.clone(), j.clone());
                        vpi(
                            apply_all(&p3.premises, &[i3.clone(), n3.clone(), j]),
                            move |r| m3.apply(&[j2.clone(), apply_all(&f3, &[j2.clone(), r])]),
                        )
                    });
                    let (m, i4, n4) = (m.clone(), i2.clone(), n2.clone());
                    vpi(ih, move |_| {
                        m.apply(&[
                            i4.clone(),
                            Rc::new(Value::Ind(i4.clone(), n4.clone(), f.clone())),
                        ])
                    })
                })
            })
        })
    }

    /// `(a : A) -> I a -> A -> U0`
    pub fn cover_axiom_sets_ty(carrier: &Val, axioms: &Val) -> Val {
        let (a_ty, ax) = (carrier.clone(), axioms.clone());
        vpi(carrier.clone(), move |a| {
            varrow(apply(&ax, &a), varrow(a_ty.clone(), univ()))
        })
    }

    /// `(b : A) -> C a i b -> Cover b`
    pub fn cover_premise_fn(p: &CoverParams, a: &Val, i: &Val) -> Val {
        let (p2, a2, i2) = (p.clone(), a.clone(), i.clone());
        vpi(p.carrier.clone(), move |b| {
            varrow(
                apply_all(&p2.axiom_sets, &[a2.clone(), i2.clone(), b.clone()]),
                Rc::new(Value::Cover(p2.clone(), b)),
            )
        })
    }

    /// `(a : A) -> (r : V a) -> M a (rf a r)`
    pub fn cover_rf_case(p: &CoverParams, motive: &Closure) -> Val {
        let (p, m) = (p.clone(), motive.clone());
        vpi(p.carrier.clone(), move |a| {
            let (m, a2) = (m.clone(), a.clone());
            vpi(apply(&p.subset, &a), move |r| {
                m.apply(&[a2.clone(), Rc::new(Value::Rf(a2.clone(), r))])
            })
        })
    }

    /// `(a : A) -> (i : I a) -> (r : (b : A) -> C a i b -> Cover b)
    ///   -> ((b : A) -> (s : C a i b) -> M b (r b s)) -> M a (tr a i r)`
    pub fn cover_tr_case(p: &CoverParams, motive: &Closure) -> Val {
        let (p, m) = (p.clone(), motive.clone());
        vpi(p.carrier.clone(), move |a| {
            let (p, m, a) = (p.clone(), m.clone(), a.clone());
            vpi(apply(&p.axioms, &a), move |i| {
                let (p2, m, a2, i2) = (p.clone(), m.clone(), a.clone(), i.clone());
                vpi(cover_premise_fn(&p, &a, &i), move |r| {
                    let (p3, m2, a3, i3, r2) =
                        (p2.clone(), m.clone(), a2.clone(), i2.clone(), r.clone());
                    let ih = vpi(p2.carrier.clone(), move |b| {
                        let (m3, r3, b2) = (m2.clone(), r2.clone(), b.clone());
                        vpi(
                            apply_all(&p3.axiom_sets, &[a3.clone(), i3.clone(), b]),
                            move |s| m3.apply(&[b2.clone(), apply_all(&r3, &[b2.clone(), s])]),
                        )
                    });
                    let (m, a4, i4) = (m.clone(), a2.clone(), i2.clone());
                    vpi(ih, move |_| {
                        m.apply(&[
                            a4.clone(),
                            Rc::new(Value::Tr(a4.clone(), i4.clone(), r.clone())),
                        ])
                    })
                })
            })
        })
    }
}

// ---------------------------------------------------------------------------
// Readback

/// Apply the eta laws for N1 and Sigma to eliminations stuck on a neutral
/// scrutinee, when the corresponding flags are set. The result is a value
/// whose spine contains no such redex.
pub fn force(flags: Flags, v: &Val) -> Val {
    let mut v = v.clone();
    loop {
        let Value::Neutral(head, spine) = v.as_ref() else {
            return v;
        };
        let fires = spine.iter().any(|e| match e {
            Elim::UnitElim { .. } => flags.eta_unit,
            Elim::Split { .. } => flags.eta_sigma,
            _ => false,
        });
        if !fires {
            return v;
        }
        let mut cur: Val = Rc::new(Value::Neutral(head.clone(), Vec::new()));
        for e in spine {
            cur = match e {
                Elim::UnitElim { case, .. } if flags.eta_unit && cur.is_neutral() => case.clone(),
                Elim::Split { step, .. } if flags.eta_sigma && cur.is_neutral() => {
                    apply_all(step, &[proj1(&cur), proj2(&cur)])
                }
                _ => apply_elim(cur, e),
            };
        }
        v = cur;
    }
}

/// Type-directed readback of values into beta-normal, eta-long (as far as the
/// flags allow) terms.
pub struct Quoter {
    pub globals: Rc<Globals>,
    pub flags: Flags,
    /// Types of the free variables, indexed by de Bruijn level.
    pub types: Vec<Val>,
}

fn rc(t: Term) -> RcTerm {
    Rc::new(t)
}

impl Quoter {
    pub fn new(globals: Rc<Globals>, flags: Flags, types: Vec<Val>) -> Quoter {
        Quoter {
            globals,
            flags,
            types,
        }
    }

    fn depth(&self) -> usize {
        self.types.len()
    }

    fn under<R>(&mut self, ty: Val, f: impl FnOnce(&mut Self, Val) -> R) -> R {
        let x = Value::var(self.depth());
        self.types.push(ty);
        let r = f(self, x);
        self.types.pop();
        r
    }

    fn under_n<R>(
        &mut self,
        tys: &[&dyn Fn(&[Val]) -> Val],
        f: impl FnOnce(&mut Self, &[Val]) -> R,
    ) -> R {
        let mut xs = Vec::new();
        for ty in tys {
            let t = ty(&xs);
            xs.push(Value::var(self.depth()));
            self.types.push(t);
        }
        let r = f(self, &xs);
        for _ in tys {
            self.types.pop();
        }
        r
    }

    pub fn force(&self, v: &Val) -> Val {
        force(self.flags, v)
    }

    pub fn read(&mut self, v: &Val, ty: &Val) -> Term {
        let v = self.force(v);
        let ty = self.force(ty);
        match (ty.as_ref(), v.as_ref()) {
            (Value::Pi(a, b), Value::Lam(_)) => self.read_lam(&v, a, b),
            (Value::Pi(a, b), Value::Neutral(..)) if self.flags.eta_pi => self.read_lam(&v, a, b),
            (Value::Sigma(a, b), Value::Pair(x, y)) => {
                let bx = b.apply1(x);
                Term::Pair(rc(self.read(x, a)), rc(self.read(y, &bx)))
            }
            (Value::Sigma(a, b), Value::Neutral(..)) if self.flags.eta_sigma => {
                let (x, y) = (proj1(&v), proj2(&v));
                let bx = b.apply1(&x);
                Term::Pair(rc(self.read(&x, a)), rc(self.read(&y, &bx)))
            }
            (Value::Unit, _) if self.flags.eta_unit => Term::Star,
            (Value::Unit, Value::Star) => Term::Star,
            (Value::Univ, _) => self.read_type(&v),
            (Value::Sum(a, _), Value::Inl(x)) => Term::Inl(rc(self.read(x, a))),
            (Value::Sum(_, b), Value::Inr(x)) => Term::Inr(rc(self.read(x, b))),
            (Value::Id(a, _, _), Value::Refl(x)) => Term::Refl(rc(self.read(x, a))),
            (Value::W(a, b), Value::Sup(l, f)) => Term::Sup {
                label: rc(self.read(l, a)),
                branches: rc(self.read(f, &rules::w_branches(a, b, l))),
            },
            (Value::DW(p, _), Value::DSup(i, n, f)) => Term::DSup {
                index: rc(self.read(i, &p.index_ty)),
                label: rc(self.read(n, &apply(&p.labels, i))),
                branches: rc(self.read(f, &rules::dw_branches(p, i, n))),
            },
            (Value::WP(p, _), Value::Ind(i, n, f)) => Term::Ind {
                index: rc(self.read(i, &p.index_ty)),
                rule: rc(self.read(n, &apply(&p.rules, i))),
                premises: rc(self.read(f, &rules::wp_premise_fn(p, i, n))),
            },
            (Value::Cover(p, _), Value::Rf(a, r)) => Term::Rf {
                elem: rc(self.read(a, &p.carrier)),
                member: rc(self.read(r, &apply(&p.subset, a))),
            },
            (Value::Cover(p, _), Value::Tr(a, i, r)) => Term::Tr {
                elem: rc(self.read(a, &p.carrier)),
                axiom: rc(self.read(i, &apply(&p.axioms, a))),
                premises: rc(self.read(r, &rules::cover_premise_fn(p, a, i))),
            },
            (_, Value::Neutral(h, sp)) => self.read_neutral(h, sp).0,
            (t, v) => panic!("readback: value {v:?} does not inhabit type {t:?}"),
        }
    }

    fn read_lam(&mut self, v: &Val, a: &Val, b: &Closure) -> Term {
        let body = self.under(a.clone(), |q, x| {
            let bx = b.apply1(&x);
            q.read(&apply(v, &x), &bx)
        });
        Term::Lam(rc(body))
    }

    fn read_motive(&mut self, dom: Val, motive: &Closure) -> RcTerm {
        rc(self.under(dom, |q, x| q.read_type(&motive.apply1(&x))))
    }

    fn read_motive2(&mut self, dom: Val, fam: impl Fn(&Val) -> Val, motive: &Closure) -> RcTerm {
        rc(self.under(dom, |q, i| {
            let ty = fam(&i);
            q.under(ty, |q, w| q.read_type(&motive.apply(&[i.clone(), w])))
        }))
    }

    pub fn read_type(&mut self, v: &Val) -> Term {
        let v = self.force(v);
        match v.as_ref() {
            Value::Univ => Term::Univ,
            Value::Empty => Term::Empty,
            Value::Unit => Term::Unit,
            Value::Pi(a, b) => {
                let ta = self.read_type(a);
                let tb = self.under(a.clone(), |q, x| q.read_type(&b.apply1(&x)));
                Term::Pi(rc(ta), rc(tb))
            }
            Value::Sigma(a, b) => {
                let ta = self.read_type(a);
                let tb = self.under(a.clone(), |q, x| q.read_type(&b.apply1(&x)));
                Term::Sigma(rc(ta), rc(tb))
            }
            Value::Sum(a, b) => Term::Sum(rc(self.read_type(a)), rc(self.read_type(b))),
            Value::Id(a, x, y) => Term::Id(
                rc(self.read_type(a)),
                rc(self.read(x, a)),
                rc(self.read(y, a)),
            ),
            Value::W(a, b) => Term::W {
                labels: rc(self.read_type(a)),
                branching: rc(self.read(b, &rules::family(a))),
            },
            Value::DW(p, i) => Term::DW {
                index_ty: rc(self.read_type(&p.index_ty)),
                labels: rc(self.read(&p.labels, &rules::family(&p.index_ty))),
                branching: rc(self.read(
                    &p.branching,
                    &rules::dw_branching_ty(&p.index_ty, &p.labels),
                )),
                arity: rc(self.read(
                    &p.arity,
                    &rules::dw_arity_ty(&p.index_ty, &p.labels, &p.branching),
                )),
                index: rc(self.read(i, &p.index_ty)),
            },
            Value::WP(p, i) => Term::WP {
                index_ty: rc(self.read_type(&p.index_ty)),
                rules: rc(self.read(&p.rules, &rules::family(&p.index_ty))),
                premises: rc(self.read(&p.premises, &rules::wp_premises_ty(&p.index_ty, &p.rules))),
                index: rc(self.read(i, &p.index_ty)),
            },
            Value::Cover(p, a) => Term::Cover {
                carrier: rc(self.read_type(&p.carrier)),
                axioms: rc(self.read(&p.axioms, &rules::family(&p.carrier))),
                axiom_sets: rc(self.read(
                    &p.axiom_sets,
                    &rules::cover_axiom_sets_ty(&p.carrier, &p.axioms),
                )),
                subset: rc(self.read(&p.subset, &rules::family(&p.carrier))),
                elem: rc(self.read(a, &p.carrier)),
            },
            Value::Neutral(h, sp) => self.read_neutral(h, sp).0,
            other => panic!("readback: {other:?} is not a type"),
        }
    }

    /// Read back a neutral, returning its term and its type.
    pub fn read_neutral(&mut self, head: &Head, spine: &[Elim]) -> (Term, Val) {
        let (mut t, mut ty) = match head {
            Head::Var(l) => (Term::Var(self.depth() - 1 - l), self.types[*l].clone()),
            Head::Const(n) => match self.globals.get(n) {
                Some(d) => (Term::Const(n.clone()), d.ty.clone()),
                None => panic!("readback: unknown constant `{n}`"),
            },
        };
        let mut cur: Val = Rc::new(Value::Neutral(head.clone(), Vec::new()));
        for e in spine {
            let fty = self.force(&ty);
            let (nt, nty) = match (e, fty.as_ref()) {
                (Elim::App(a), Value::Pi(dom, cod)) => {
                    (Term::App(rc(t), rc(self.read(a, dom))), cod.apply1(a))
                }
                (Elim::Proj1, Value::Sigma(a, _)) => (Term::Proj1(rc(t)), a.clone()),
                (Elim::Proj2, Value::Sigma(_, b)) => (Term::Proj2(rc(t)), b.apply1(&proj1(&cur))),
                (Elim::Split { motive, step }, Value::Sigma(a, b)) => {
                    let m = self.read_motive(fty.clone(), motive);
                    let s = self.read(step, &rules::split_step(a, b, motive));
                    (
                        Term::Split {
                            motive: m,
                            step: rc(s),
                            scrut: rc(t),
                        },
                        motive.apply1(&cur),
                    )
                }
                (Elim::EmptyElim { motive }, Value::Empty) => {
                    let m = self.read_motive(fty.clone(), motive);
                    (
                        Term::EmptyElim {
                            motive: m,
                            scrut: rc(t),
                        },
                        motive.apply1(&cur),
                    )
                }
                (Elim::UnitElim { motive, case }, Value::Unit) => {
                    let m = self.read_motive(fty.clone(), motive);
                    let c = self.read(case, &motive.apply1(&Rc::new(Value::Star)));
                    (
                        Term::UnitElim {
                            motive: m,
                            case: rc(c),
                            scrut: rc(t),
                        },
                        motive.apply1(&cur),
                    )
                }
                (
                    Elim::SumElim {
                        motive,
                        left,
                        right,
                    },
                    Value::Sum(a, b),
                ) => {
                    let m = self.read_motive(fty.clone(), motive);
                    let l = self.read(left, &rules::sum_left(a, motive));
                    let r = self.read(right, &rules::sum_right(b, motive));
                    (
                        Term::SumElim {
                            motive: m,
                            left: rc(l),
                            right: rc(r),
                            scrut: rc(t),
                        },
                        motive.apply1(&cur),
                    )
                }
                (
                    Elim::J {
                        motive, refl_case, ..
                    },
                    Value::Id(a, x, y),
                ) => {
                    let a2 = a.clone();
                    let m = self.under_n(
                        &[
                            &|_: &[Val]| a2.clone(),
                            &|_: &[Val]| a2.clone(),
                            &|xs: &[Val]| {
                                Rc::new(Value::Id(a2.clone(), xs[0].clone(), xs[1].clone()))
                            },
                        ],
                        |q, xs| q.read_type(&motive.apply(xs)),
                    );
                    let rcase = self.read(refl_case, &rules::j_refl(a, motive));
                    let lhs = self.read(x, a);
                    let rhs = self.read(y, a);
                    (
                        Term::J {
                            motive: rc(m),
                            refl_case: rc(rcase),
                            lhs: rc(lhs),
                            rhs: rc(rhs),
                            proof: rc(t),
                        },
                        motive.apply(&[x.clone(), y.clone(), cur.clone()]),
                    )
                }
                (Elim::WElim { motive, step }, Value::W(a, b)) => {
                    let m = self.read_motive(fty.clone(), motive);
                    let s = self.read(step, &rules::w_step(a, b, motive));
                    (
                        Term::WElim {
                            motive: m,
                            step: rc(s),
                            scrut: rc(t),
                        },
                        motive.apply1(&cur),
                    )
                }
                (Elim::DWElim { motive, step, .. }, Value::DW(p, i)) => {
                    let p2 = p.clone();
                    let m = self.read_motive2(
                        p.index_ty.clone(),
                        move |j| Rc::new(Value::DW(p2.clone(), j.clone())),
                        motive,
                    );
                    let s = self.read(step, &rules::dw_step(p, motive));
                    let idx = self.read(i, &p.index_ty);
                    (
                        Term::DWElim {
                            motive: m,
                            step: rc(s),
                            index: rc(idx),
                            scrut: rc(t),
                        },
                        motive.apply(&[i.clone(), cur.clone()]),
                    )
                }
                (Elim::WPElim { motive, step, .. }, Value::WP(p, i)) => {
                    let p2 = p.clone();
                    let m = self.read_motive2(
                        p.index_ty.clone(),
                        move |j| Rc::new(Value::WP(p2.clone(), j.clone())),
                        motive,
                    );
                    let s = self.read(step, &rules::wp_step(p, motive));
                    let idx = self.read(i, &p.index_ty);
                    (
                        Term::WPElim {
                            motive: m,
                            step: rc(s),
                            index: rc(idx),
                            scrut: rc(t),
                        },
                        motive.apply(&[i.clone(), cur.clone()]),
                    )
                }
                (
                    Elim::CoverElim {
                        motive,
                        rf_case,
                        tr_case,
                        ..
                    },
                    Value::Cover(p, a),
                ) => {
                    let p2 = p.clone();
                    let m = self.read_motive2(
                        p.carrier.clone(),
                        move |b| Rc::new(Value::Cover(p2.clone(), b.clone())),
                        motive,
                    );
                    let q1 = self.read(rf_case, &rules::cover_rf_case(p, motive));
                    let q2 = self.read(tr_case, &rules::cover_tr_case(p, motive));
                    let el = self.read(a, &p.carrier);
                    (
                        Term::CoverElim {
                            motive: m,
                            rf_case: rc(q1),
                            tr_case: rc(q2),
                            elem: rc(el),
                            scrut: rc(t),
                        },
                        motive.apply(&[a.clone(), cur.clone()]),
                    )
                }
                (_, other) => panic!("readback: ill-typed neutral spine at type {other:?}"),
            };
            t = nt;
            ty = nty;
            cur = apply_elim(cur, e);
        }
        (t, ty)
    }
}

/// Definitional equality of two values at a type.
pub fn conv(globals: &Rc<Globals>, flags: Flags, ctx: &[Val], ty: &Val, a: &Val, b: &Val) -> bool {
    let mut q = Quoter::new(globals.clone(), flags, ctx.to_vec());
    let ta = q.read(a, ty);
    let tb = q.read(b, ty);
    crate::syntax::structural_eq(&ta, &tb)
}

/// Definitional equality of two types.
pub fn conv_type(globals: &Rc<Globals>, flags: Flags, ctx: &[Val], a: &Val, b: &Val) -> bool {
    let mut q = Quoter::new(globals.clone(), flags, ctx.to_vec());
    let ta = q.read_type(a);
    let tb = q.read_type(b);
    crate::syntax::structural_eq(&ta, &tb)
}
