//! Bidirectional type checking.
//!
//! Introduction forms (`fun`, pairs, injections, `refl`, the constructors of
//! the inductive families) are checked against a known type; variables,
//! constants, applications and eliminators infer. Constructors whose function
//! argument infers also infer, by reading the type parameters off that
//! function's codomain.

use std::fmt;
use std::rc::Rc;

use crate::nbe::{self, rules, Closure, Env, GlobalDef, Globals, Locals, Quoter, Val, Value};
use crate::syntax::{subst, Decl, Flags, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Mismatch,
    Unbound,
    NotAFunction,
    NotAUniverse,
    MotiveShape,
    FlagRequired,
    /// A checking-only form (such as an unannotated `fun`) in inference position.
    NotInferable,
    Duplicate,
    /// A postulate other than the gated `funext`.
    Postulate,
}

impl ErrorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorKind::Mismatch => "mismatch",
            ErrorKind::Unbound => "unbound",
            ErrorKind::NotAFunction => "not-a-function",
            ErrorKind::NotAUniverse => "not-a-universe",
            ErrorKind::MotiveShape => "motive-shape",
            ErrorKind::FlagRequired => "flag-required",
            ErrorKind::NotInferable => "not-inferable",
            ErrorKind::Duplicate => "duplicate",
            ErrorKind::Postulate => "postulate",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an error occurred: the enclosing declaration and its position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Location {
    pub decl: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.decl.is_empty() {
            write!(f, "<input>")
        } else {
            write!(f, "{} ({}:{})", self.decl, self.line, self.col)
        }
    }
}

#[derive(Clone, Debug)]
pub struct TypeError {
    pub kind: ErrorKind,
    pub message: String,
    /// Flag-aware normal forms, scoped under `names`.
    pub expected: Option<Term>,
    pub found: Option<Term>,
    /// Names of the local variables in scope, outermost first.
    pub names: Vec<String>,
    pub location: Location,
}

impl TypeError {
    fn new(kind: ErrorKind, message: impl Into<String>) -> TypeError {
        TypeError {
            kind,
            message: message.into(),
            expected: None,
            found: None,
            names: Vec::new(),
            location: Location::default(),
        }
    }

    fn at(mut self, loc: &Location) -> TypeError {
        if self.location.decl.is_empty() {
            self.location = loc.clone();
        }
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.message)?;
        if let Some(e) = &self.expected {
            write!(
                f,
                "\n  expected: {}",
                crate::pretty::pretty_in(&self.names, e)
            )?;
        }
        if let Some(t) = &self.found {
            write!(
                f,
                "\n  found:    {}",
                crate::pretty::pretty_in(&self.names, t)
            )?;
        }
        Ok(())
    }
}

impl std::error::Error for TypeError {}

pub type Result<T> = std::result::Result<T, TypeError>;

/// Classification of a well-formed type: `Small` types are elements of U0,
/// `Large` ones (U0 itself and anything built from it) are only types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Small,
    Large,
}

/// Global definitions plus a telescope of local assumptions.
#[derive(Clone, Default)]
pub struct Context {
    globals: Rc<Globals>,
    names: Vec<String>,
    /// Types of the locals by de Bruijn level.
    types: Vec<Val>,
    locals: Locals,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn globals(&self) -> &Rc<Globals> {
        &self.globals
    }

    pub fn depth(&self) -> usize {
        self.types.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn env(&self) -> Env {
        Env {
            locals: self.locals.clone(),
            globals: self.globals.clone(),
        }
    }

    pub fn eval(&self, t: &Term) -> Val {
        nbe::eval(&self.env(), t)
    }

    /// Extend with a local of the given type; returns the new context and
    /// the variable's value.
    pub fn extend(&self, name: &str, ty: Val) -> (Context, Val) {
        let x = Value::var(self.depth());
        let mut c = self.clone();
        c.names.push(name.to_string());
        c.types.push(ty);
        c.locals = c.locals.push(x.clone());
        (c, x)
    }

    /// Check `ty` as a type and extend with a local of that type.
    pub fn assume(&self, name: &str, ty: &Term, flags: Flags) -> Result<Context> {
        let ctx = prepare(self, flags);
        Tc { flags }.check_ty(&ctx, ty)?;
        let v = ctx.eval(ty);
        Ok(ctx.extend(name, v).0)
    }

    pub fn quoter(&self, flags: Flags) -> Quoter {
        Quoter::new(self.globals.clone(), flags, self.types.clone())
    }

    pub fn quote(&self, flags: Flags, v: &Val, ty: &Val) -> Term {
        self.quoter(flags).read(v, ty)
    }

    pub fn quote_type(&self, flags: Flags, v: &Val) -> Term {
        self.quoter(flags).read_type(v)
    }

    pub fn lookup_global(&self, name: &str) -> Option<&GlobalDef> {
        self.globals.get(name)
    }

    /// Names of the global declarations in order.
    pub fn global_names(&self) -> &[String] {
        self.globals.names()
    }

    fn define(&mut self, name: &str, ty: Val, value: Option<Val>) {
        Rc::make_mut(&mut self.globals).insert(name, GlobalDef { ty, value });
    }
}

/// Source of the type of the extensionality constant.
pub const FUNEXT_TYPE: &str = "(A : U0) -> (B : A -> U0) -> (f g : (x : A) -> B x) \
     -> ((x : A) -> Id (B x) (f x) (g x)) -> Id ((x : A) -> B x) f g";

pub fn funext_type() -> Term {
    crate::parse::parse_term(FUNEXT_TYPE).expect("funext type parses")
}

/// Make the gated constant available when the flag is on.
fn prepare(ctx: &Context, flags: Flags) -> Context {
    let mut ctx = ctx.clone();
    if flags.funext && !ctx.globals.contains("funext") {
        let ty = Context::new().eval(&funext_type());
        ctx.define("funext", ty, None);
    }
    ctx
}

fn is_type_former(t: &Term) -> bool {
    matches!(
        t,
        Term::Univ
            | Term::Empty
            | Term::Unit
            | Term::Pi(..)
            | Term::Sigma(..)
            | Term::Sum(..)
            | Term::Id(..)
            | Term::W { .. }
            | Term::DW { .. }
            | Term::WP { .. }
            | Term::Cover { .. }
    )
}

/// Remove the `k` innermost variables from a term that does not mention them.
fn strengthen(t: &Term, k: usize) -> Option<Term> {
    if (0..k).any(|i| t.mentions(i)) {
        return None;
    }
    let mut t = t.clone();
    for _ in 0..k {
        t = subst(&t, 0, &Term::Star);
    }
    Some(t)
}

fn univ() -> Val {
    Rc::new(Value::Univ)
}

struct Tc {
    flags: Flags,
}

impl Tc {
    fn force(&self, v: &Val) -> Val {
        nbe::force(self.flags, v)
    }

    fn conv(&self, ctx: &Context, ty: &Val, a: &Val, b: &Val) -> bool {
        nbe::conv(&ctx.globals, self.flags, &ctx.types, ty, a, b)
    }

    fn conv_ty(&self, ctx: &Context, a: &Val, b: &Val) -> bool {
        nbe::conv_type(&ctx.globals, self.flags, &ctx.types, a, b)
    }

    fn err(&self, ctx: &Context, kind: ErrorKind, msg: impl Into<String>) -> TypeError {
        let mut e = TypeError::new(kind, msg);
        e.names = ctx.names.clone();
        e
    }

    fn type_mismatch(&self, ctx: &Context, msg: &str, expected: &Val, found: &Val) -> TypeError {
        let mut e = self.err(ctx, ErrorKind::Mismatch, msg);
        e.expected = Some(ctx.quote_type(self.flags, expected));
        e.found = Some(ctx.quote_type(self.flags, found));
        e
    }

    fn term_mismatch(
        &self,
        ctx: &Context,
        msg: &str,
        ty: &Val,
        expected: &Val,
        found: &Val,
    ) -> TypeError {
        let mut e = self.err(ctx, ErrorKind::Mismatch, msg);
        e.expected = Some(ctx.quote(self.flags, expected, ty));
        e.found = Some(ctx.quote(self.flags, found, ty));
        e
    }

    fn wrong_former(&self, ctx: &Context, kind: ErrorKind, what: &str, found: &Val) -> TypeError {
        let mut e = self.err(ctx, kind, format!("expected {what}"));
        e.found = Some(ctx.quote_type(self.flags, found));
        e
    }

    // -- types --------------------------------------------------------------

    fn check_ty(&self, ctx: &Context, t: &Term) -> Result<Level> {
        match t {
            Term::Univ => Ok(Level::Large),
            Term::Empty | Term::Unit => Ok(Level::Small),
            Term::Pi(a, b) | Term::Sigma(a, b) => {
                let la = self.check_ty(ctx, a)?;
                let (c2, _) = ctx.extend("x", ctx.eval(a));
                let lb = self.check_ty(&c2, b)?;
                Ok(la.max(lb))
            }
            Term::Sum(a, b) => Ok(self.check_ty(ctx, a)?.max(self.check_ty(ctx, b)?)),
            Term::Id(a, x, y) => {
                let la = self.check_ty(ctx, a)?;
                let av = ctx.eval(a);
                self.check(ctx, x, &av)?;
                self.check(ctx, y, &av)?;
                Ok(la)
            }
            Term::W { labels, branching } => {
                self.check(ctx, labels, &univ())?;
                let a = ctx.eval(labels);
                self.check(ctx, branching, &rules::family(&a))?;
                Ok(Level::Small)
            }
            Term::DW {
                index_ty,
                labels,
                branching,
                arity,
                index,
            } => {
                self.check(ctx, index_ty, &univ())?;
                let i = ctx.eval(index_ty);
                self.check(ctx, labels, &rules::family(&i))?;
                let n = ctx.eval(labels);
                self.check(ctx, branching, &rules::dw_branching_ty(&i, &n))?;
                let br = ctx.eval(branching);
                self.check(ctx, arity, &rules::dw_arity_ty(&i, &n, &br))?;
                self.check(ctx, index, &i)?;
                Ok(Level::Small)
            }
            Term::WP {
                index_ty,
                rules: ru,
                premises,
                index,
            } => {
                self.check(ctx, index_ty, &univ())?;
                let i = ctx.eval(index_ty);
                self.check(ctx, ru, &rules::family(&i))?;
                let n = ctx.eval(ru);
                self.check(ctx, premises, &rules::wp_premises_ty(&i, &n))?;
                self.check(ctx, index, &i)?;
                Ok(Level::Small)
            }
            Term::Cover {
                carrier,
                axioms,
                axiom_sets,
                subset,
                elem,
            } => {
                self.check(ctx, carrier, &univ())?;
                let a = ctx.eval(carrier);
                self.check(ctx, axioms, &rules::family(&a))?;
                let ax = ctx.eval(axioms);
                self.check(ctx, axiom_sets, &rules::cover_axiom_sets_ty(&a, &ax))?;
                self.check(ctx, subset, &rules::family(&a))?;
                self.check(ctx, elem, &a)?;
                Ok(Level::Small)
            }
            _ => {
                let ty = self.infer(ctx, t)?;
                match self.force(&ty).as_ref() {
                    Value::Univ => Ok(Level::Small),
                    _ => Err(self.wrong_former(ctx, ErrorKind::NotAUniverse, "a type", &ty)),
                }
            }
        }
    }

    fn motive_err(e: TypeError) -> TypeError {
        if e.kind == ErrorKind::MotiveShape {
            e
        } else {
            TypeError {
                kind: ErrorKind::MotiveShape,
                message: format!("ill-formed motive: {}: {}", e.kind, e.message),
                ..e
            }
        }
    }

    /// Check a motive binding variables of the given types; `doms` receives
    /// the variables bound so far.
    fn motive(
        &self,
        ctx: &Context,
        doms: &[&dyn Fn(&[Val]) -> Val],
        body: &Rc<Term>,
    ) -> Result<Closure> {
        let mut c = ctx.clone();
        let mut xs = Vec::new();
        for d in doms {
            let (c2, x) = c.extend("m", d(&xs));
            c = c2;
            xs.push(x);
        }
        self.check_ty(&c, body).map_err(Tc::motive_err)?;
        Ok(Closure::Term {
            env: ctx.env(),
            body: body.clone(),
        })
    }

    fn motive1(&self, ctx: &Context, dom: &Val, body: &Rc<Term>) -> Result<Closure> {
        let d = dom.clone();
        self.motive(ctx, &[&move |_: &[Val]| d.clone()], body)
    }

    // -- inference ----------------------------------------------------------

    fn infer(&self, ctx: &Context, t: &Term) -> Result<Val> {
        match t {
            Term::Var(i) => match ctx.depth().checked_sub(i + 1) {
                Some(l) => Ok(ctx.types[l].clone()),
                None => Err(self.err(
                    ctx,
                    ErrorKind::Unbound,
                    format!("variable #{i} is out of scope"),
                )),
            },
            Term::Const(name) => match ctx.globals.get(name) {
                Some(GlobalDef { value: None, .. }) if name == "funext" && !self.flags.funext => {
                    Err(self.err(
                        ctx,
                        ErrorKind::FlagRequired,
                        "`funext` requires the funext flag",
                    ))
                }
                Some(d) => Ok(d.ty.clone()),
                None if name == "funext" => Err(self.err(
                    ctx,
                    ErrorKind::FlagRequired,
                    "`funext` requires the funext flag",
                )),
                None => Err(self.err(ctx, ErrorKind::Unbound, format!("unknown name `{name}`"))),
            },
            _ if is_type_former(t) => match self.check_ty(ctx, t)? {
                Level::Small => Ok(univ()),
                Level::Large => {
                    let mut e = self.err(
                        ctx,
                        ErrorKind::NotAUniverse,
                        "a large type is not an element of U0",
                    );
                    e.found = Some(t.clone());
                    Err(e)
                }
            },
            Term::Star => Ok(Rc::new(Value::Unit)),
            Term::Lam(_) | Term::Pair(..) | Term::Inl(_) | Term::Inr(_) | Term::Rf { .. } => {
                Err(self.err(
                    ctx,
                    ErrorKind::NotInferable,
                    "this form can only be checked against a known type",
                ))
            }
            Term::App(f, a) => {
                let ft = self.infer(ctx, f)?;
                match self.force(&ft).as_ref() {
                    Value::Pi(dom, cod) => {
                        self.check(ctx, a, dom)?;
                        Ok(cod.apply1(&ctx.eval(a)))
                    }
                    _ => Err(self.wrong_former(ctx, ErrorKind::NotAFunction, "a function", &ft)),
                }
            }
            Term::Proj1(p) | Term::Proj2(p) => {
                let pt = self.infer(ctx, p)?;
                match self.force(&pt).as_ref() {
                    Value::Sigma(a, b) => Ok(if matches!(t, Term::Proj1(_)) {
                        a.clone()
                    } else {
                        b.apply1(&nbe::proj1(&ctx.eval(p)))
                    }),
                    _ => Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a Sigma-type", &pt)),
                }
            }
            Term::EmptyElim { motive, scrut } => {
                self.check(ctx, scrut, &Rc::new(Value::Empty))?;
                let m = self.motive1(ctx, &Rc::new(Value::Empty), motive)?;
                Ok(m.apply1(&ctx.eval(scrut)))
            }
            Term::UnitElim {
                motive,
                case,
                scrut,
            } => {
                self.check(ctx, scrut, &Rc::new(Value::Unit))?;
                let m = self.motive1(ctx, &Rc::new(Value::Unit), motive)?;
                self.check(ctx, case, &m.apply1(&Rc::new(Value::Star)))?;
                Ok(m.apply1(&ctx.eval(scrut)))
            }
            Term::Split {
                motive,
                step,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::Sigma(a, b) = st.as_ref() else {
                    return Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a Sigma-type", &st));
                };
                let m = self.motive1(ctx, &st, motive)?;
                self.check(ctx, step, &rules::split_step(a, b, &m))?;
                Ok(m.apply1(&ctx.eval(scrut)))
            }
            Term::SumElim {
                motive,
                left,
                right,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::Sum(a, b) = st.as_ref() else {
                    return Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a sum type", &st));
                };
                let m = self.motive1(ctx, &st, motive)?;
                self.check(ctx, left, &rules::sum_left(a, &m))?;
                self.check(ctx, right, &rules::sum_right(b, &m))?;
                Ok(m.apply1(&ctx.eval(scrut)))
            }
            Term::Refl(a) => {
                let ty = self.infer(ctx, a)?;
                let v = ctx.eval(a);
                Ok(Rc::new(Value::Id(ty, v.clone(), v)))
            }
            Term::J {
                motive,
                refl_case,
                lhs,
                rhs,
                proof,
            } => {
                let pt = self.force(&self.infer(ctx, proof)?);
                let Value::Id(a, x, y) = pt.as_ref() else {
                    return Err(self.wrong_former(
                        ctx,
                        ErrorKind::Mismatch,
                        "an identity type",
                        &pt,
                    ));
                };
                self.check(ctx, lhs, a)?;
                self.check(ctx, rhs, a)?;
                let (l, r) = (ctx.eval(lhs), ctx.eval(rhs));
                if !self.conv(ctx, a, &l, x) {
                    return Err(self.term_mismatch(ctx, "left endpoint of J", a, x, &l));
                }
                if !self.conv(ctx, a, &r, y) {
                    return Err(self.term_mismatch(ctx, "right endpoint of J", a, y, &r));
                }
                let (a1, a2, a3) = (a.clone(), a.clone(), a.clone());
                let m = self.motive(
                    ctx,
                    &[
                        &move |_: &[Val]| a1.clone(),
                        &move |_: &[Val]| a2.clone(),
                        &move |xs: &[Val]| {
                            Rc::new(Value::Id(a3.clone(), xs[0].clone(), xs[1].clone()))
                        },
                    ],
                    motive,
                )?;
                self.check(ctx, refl_case, &rules::j_refl(a, &m))?;
                Ok(m.apply(&[l, r, ctx.eval(proof)]))
            }
            Term::Sup { branches, .. } => {
                let cod = self.codomain(ctx, branches, 1)?;
                let ty = match cod {
                    Term::W { .. } => strengthen(&cod, 1),
                    _ => None,
                };
                let Some(ty) = ty else {
                    return Err(self.not_intro_fn(ctx, "a W-type", branches));
                };
                let tyv = ctx.eval(&ty);
                self.check(ctx, t, &tyv)?;
                Ok(tyv)
            }
            Term::DSup {
                index, branches, ..
            } => {
                let ty = match self.codomain(ctx, branches, 1)? {
                    Term::DW {
                        index_ty,
                        labels,
                        branching,
                        arity,
                        ..
                    } => (|| {
                        Some(Term::DW {
                            index_ty: strengthen(&index_ty, 1)?.into(),
                            labels: strengthen(&labels, 1)?.into(),
                            branching: strengthen(&branching, 1)?.into(),
                            arity: strengthen(&arity, 1)?.into(),
                            index: index.clone(),
                        })
                    })(),
                    _ => None,
                };
                self.infer_intro(ctx, t, ty, "a dependent W-type", branches)
            }
            Term::Ind {
                index, premises, ..
            } => {
                let ty = match self.codomain(ctx, premises, 2)? {
                    Term::WP {
                        index_ty,
                        rules,
                        premises: r,
                        ..
                    } => (|| {
                        Some(Term::WP {
                            index_ty: strengthen(&index_ty, 2)?.into(),
                            rules: strengthen(&rules, 2)?.into(),
                            premises: strengthen(&r, 2)?.into(),
                            index: index.clone(),
                        })
                    })(),
                    _ => None,
                };
                self.infer_intro(ctx, t, ty, "a well-founded predicate", premises)
            }
            Term::Tr { elem, premises, .. } => {
                let ty = match self.codomain(ctx, premises, 2)? {
                    Term::Cover {
                        carrier,
                        axioms,
                        axiom_sets,
                        subset,
                        ..
                    } => (|| {
                        Some(Term::Cover {
                            carrier: strengthen(&carrier, 2)?.into(),
                            axioms: strengthen(&axioms, 2)?.into(),
                            axiom_sets: strengthen(&axiom_sets, 2)?.into(),
                            subset: strengthen(&subset, 2)?.into(),
                            elem: elem.clone(),
                        })
                    })(),
                    _ => None,
                };
                self.infer_intro(ctx, t, ty, "a cover", premises)
            }
            Term::WElim {
                motive,
                step,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::W(a, b) = st.as_ref() else {
                    return Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a W-type", &st));
                };
                let m = self.motive1(ctx, &st, motive)?;
                self.check(ctx, step, &rules::w_step(a, b, &m))?;
                Ok(m.apply1(&ctx.eval(scrut)))
            }
            Term::DWElim {
                motive,
                step,
                index,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::DW(p, i) = st.as_ref() else {
                    return Err(self.wrong_former(
                        ctx,
                        ErrorKind::Mismatch,
                        "a dependent W-type",
                        &st,
                    ));
                };
                let iv = self.check_index(ctx, index, &p.index_ty, i)?;
                let (d, p2) = (p.index_ty.clone(), p.clone());
                let m = self.motive(
                    ctx,
                    &[&move |_: &[Val]| d.clone(), &move |xs: &[Val]| {
                        Rc::new(Value::DW(p2.clone(), xs[0].clone()))
                    }],
                    motive,
                )?;
                self.check(ctx, step, &rules::dw_step(p, &m))?;
                Ok(m.apply(&[iv, ctx.eval(scrut)]))
            }
            Term::WPElim {
                motive,
                step,
                index,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::WP(p, i) = st.as_ref() else {
                    return Err(self.wrong_former(
                        ctx,
                        ErrorKind::Mismatch,
                        "a well-founded predicate",
                        &st,
                    ));
                };
                let iv = self.check_index(ctx, index, &p.index_ty, i)?;
                let (d, p2) = (p.index_ty.clone(), p.clone());
                let m = self.motive(
                    ctx,
                    &[&move |_: &[Val]| d.clone(), &move |xs: &[Val]| {
                        Rc::new(Value::WP(p2.clone(), xs[0].clone()))
                    }],
                    motive,
                )?;
                self.check(ctx, step, &rules::wp_step(p, &m))?;
                Ok(m.apply(&[iv, ctx.eval(scrut)]))
            }
            Term::CoverElim {
                motive,
                rf_case,
                tr_case,
                elem,
                scrut,
            } => {
                let st = self.force(&self.infer(ctx, scrut)?);
                let Value::Cover(p, a) = st.as_ref() else {
                    return Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a cover", &st));
                };
                let av = self.check_index(ctx, elem, &p.carrier, a)?;
                let (d, p2) = (p.carrier.clone(), p.clone());
                let m = self.motive(
                    ctx,
                    &[&move |_: &[Val]| d.clone(), &move |xs: &[Val]| {
                        Rc::new(Value::Cover(p2.clone(), xs[0].clone()))
                    }],
                    motive,
                )?;
                self.check(ctx, rf_case, &rules::cover_rf_case(p, &m))?;
                self.check(ctx, tr_case, &rules::cover_tr_case(p, &m))?;
                Ok(m.apply(&[av, ctx.eval(scrut)]))
            }
            _ => unreachable!("type formers are handled above"),
        }
    }

    /// Check an index argument and that it agrees with the one in a type.
    fn check_index(&self, ctx: &Context, index: &Term, ty: &Val, expected: &Val) -> Result<Val> {
        self.check(ctx, index, ty)?;
        let v = ctx.eval(index);
        if !self.conv(ctx, ty, &v, expected) {
            return Err(self.term_mismatch(
                ctx,
                "index disagrees with the scrutinee's type",
                ty,
                expected,
                &v,
            ));
        }
        Ok(v)
    }

    /// Infer the type of `f` and read back its codomain after `n` arguments,
    /// scoped under those arguments.
    fn codomain(&self, ctx: &Context, f: &Term, n: usize) -> Result<Term> {
        let ft = self.infer(ctx, f)?;
        let mut c = ctx.clone();
        let mut ty = ft.clone();
        for _ in 0..n {
            let forced = self.force(&ty);
            let Value::Pi(dom, cod) = forced.as_ref() else {
                return Err(self.wrong_former(ctx, ErrorKind::NotAFunction, "a function", &ft));
            };
            let (c2, x) = c.extend("b", dom.clone());
            ty = cod.apply1(&x);
            c = c2;
        }
        Ok(c.quote_type(self.flags, &ty))
    }

    fn not_intro_fn(&self, ctx: &Context, what: &str, f: &Term) -> TypeError {
        let mut e = self.err(
            ctx,
            ErrorKind::Mismatch,
            format!("cannot read {what} off the type of the subtree function"),
        );
        e.found = self
            .infer(ctx, f)
            .ok()
            .map(|ty| ctx.quote_type(self.flags, &ty));
        e
    }

    fn infer_intro(
        &self,
        ctx: &Context,
        t: &Term,
        ty: Option<Term>,
        what: &str,
        f: &Term,
    ) -> Result<Val> {
        let Some(ty) = ty else {
            return Err(self.not_intro_fn(ctx, what, f));
        };
        // The parameters came from an inferred type; only the index is new.
        let index = match &ty {
            Term::DW {
                index, index_ty, ..
            }
            | Term::WP {
                index, index_ty, ..
            } => (index, index_ty),
            Term::Cover { elem, carrier, .. } => (elem, carrier),
            _ => unreachable!(),
        };
        self.check(ctx, index.0, &ctx.eval(index.1))?;
        let tyv = ctx.eval(&ty);
        self.check(ctx, t, &tyv)?;
        Ok(tyv)
    }

    // -- checking -----------------------------------------------------------

    fn check(&self, ctx: &Context, t: &Term, ty: &Val) -> Result<()> {
        let fty = self.force(ty);
        match (t, fty.as_ref()) {
            (Term::Lam(body), Value::Pi(a, b)) => {
                let (c2, x) = ctx.extend("x", a.clone());
                self.check(&c2, body, &b.apply1(&x))
            }
            (Term::Lam(_), _) => {
                Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a function type for `fun`", ty))
            }
            (Term::Pair(x, y), Value::Sigma(a, b)) => {
                self.check(ctx, x, a)?;
                self.check(ctx, y, &b.apply1(&ctx.eval(x)))
            }
            (Term::Pair(..), _) => {
                Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a Sigma-type for a pair", ty))
            }
            (Term::Inl(x), Value::Sum(a, _)) => self.check(ctx, x, a),
            (Term::Inr(x), Value::Sum(_, b)) => self.check(ctx, x, b),
            (Term::Inl(_) | Term::Inr(_), _) => {
                Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a sum type for an injection", ty))
            }
            (Term::Refl(x), Value::Id(a, l, r)) => {
                self.check(ctx, x, a)?;
                let v = ctx.eval(x);
                if !self.conv(ctx, a, &v, l) {
                    return Err(self.term_mismatch(ctx, "refl: left endpoint", a, l, &v));
                }
                if !self.conv(ctx, a, &v, r) {
                    return Err(self.term_mismatch(
                        ctx,
                        "refl: endpoints are not convertible",
                        a,
                        l,
                        r,
                    ));
                }
                Ok(())
            }
            (Term::Sup { label, branches }, Value::W(a, b)) => {
                self.check(ctx, label, a)?;
                self.check(ctx, branches, &rules::w_branches(a, b, &ctx.eval(label)))
            }
            (
                Term::DSup {
                    index,
                    label,
                    branches,
                },
                Value::DW(p, i),
            ) => {
                let iv = self.check_index(ctx, index, &p.index_ty, i)?;
                self.check(ctx, label, &nbe::apply(&p.labels, &iv))?;
                self.check(ctx, branches, &rules::dw_branches(p, &iv, &ctx.eval(label)))
            }
            (
                Term::Ind {
                    index,
                    rule,
                    premises,
                },
                Value::WP(p, i),
            ) => {
                let iv = self.check_index(ctx, index, &p.index_ty, i)?;
                self.check(ctx, rule, &nbe::apply(&p.rules, &iv))?;
                self.check(
                    ctx,
                    premises,
                    &rules::wp_premise_fn(p, &iv, &ctx.eval(rule)),
                )
            }
            (Term::Rf { elem, member }, Value::Cover(p, a)) => {
                let av = self.check_index(ctx, elem, &p.carrier, a)?;
                self.check(ctx, member, &nbe::apply(&p.subset, &av))
            }
            (Term::Rf { .. }, _) => {
                Err(self.wrong_former(ctx, ErrorKind::Mismatch, "a cover for `rf`", ty))
            }
            (
                Term::Tr {
                    elem,
                    axiom,
                    premises,
                },
                Value::Cover(p, a),
            ) => {
                let av = self.check_index(ctx, elem, &p.carrier, a)?;
                self.check(ctx, axiom, &nbe::apply(&p.axioms, &av))?;
                self.check(
                    ctx,
                    premises,
                    &rules::cover_premise_fn(p, &av, &ctx.eval(axiom)),
                )
            }
            (_, Value::Univ) if is_type_former(t) => match self.check_ty(ctx, t)? {
                Level::Small => Ok(()),
                Level::Large => {
                    let mut e = self.err(
                        ctx,
                        ErrorKind::NotAUniverse,
                        "a large type is not an element of U0",
                    );
                    e.found = Some(t.clone());
                    Err(e)
                }
            },
            _ => {
                let found = self.infer(ctx, t)?;
                if self.conv_ty(ctx, &found, ty) {
                    Ok(())
                } else {
                    Err(self.type_mismatch(ctx, "type mismatch", ty, &found))
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Public interface

/// Infer the type of `t`, returned as a normal form.
pub fn infer(ctx: &Context, t: &Term, flags: Flags) -> Result<Term> {
    let ctx = prepare(ctx, flags);
    let ty = Tc { flags }.infer(&ctx, t)?;
    Ok(ctx.quote_type(flags, &ty))
}

/// Check `t` against the type `ty` (which is itself checked first).
pub fn check(ctx: &Context, t: &Term, ty: &Term, flags: Flags) -> Result<()> {
    let ctx = prepare(ctx, flags);
    let tc = Tc { flags };
    tc.check_ty(&ctx, ty)?;
    tc.check(&ctx, t, &ctx.eval(ty))
}

/// Check that `t` is a type and report its size.
pub fn check_type(ctx: &Context, t: &Term, flags: Flags) -> Result<Level> {
    let ctx = prepare(ctx, flags);
    Tc { flags }.check_ty(&ctx, t)
}

/// Definitional equality of two terms that both have type `ty`.
pub fn convertible(ctx: &Context, ty: &Term, t: &Term, u: &Term, flags: Flags) -> bool {
    let ctx = prepare(ctx, flags);
    let tyv = ctx.eval(ty);
    nbe::conv(
        &ctx.globals,
        flags,
        &ctx.types,
        &tyv,
        &ctx.eval(t),
        &ctx.eval(u),
    )
}

/// Normal form of a well-typed term together with its type.
pub fn normalize(ctx: &Context, t: &Term, flags: Flags) -> Result<(Term, Term)> {
    let ctx = prepare(ctx, flags);
    let ty = Tc { flags }.infer(&ctx, t)?;
    Ok((
        ctx.quote(flags, &ctx.eval(t), &ty),
        ctx.quote_type(flags, &ty),
    ))
}

/// Normal form of `t` checked against `ty`.
pub fn normalize_at(ctx: &Context, t: &Term, ty: &Term, flags: Flags) -> Result<Term> {
    check(ctx, t, ty, flags)?;
    let ctx = prepare(ctx, flags);
    Ok(ctx.quote(flags, &ctx.eval(t), &ctx.eval(ty)))
}

/// Check declarations in order, extending the global environment.
pub fn check_declarations(ctx: &Context, decls: &[Decl], flags: Flags) -> Result<Context> {
    let mut ctx = prepare(ctx, flags);
    for d in decls {
        check_declaration(&mut ctx, d, flags)?;
    }
    Ok(ctx)
}

/// Check one declaration and add it to the context.
pub fn check_declaration(ctx: &mut Context, d: &Decl, flags: Flags) -> Result<()> {
    let loc = Location {
        decl: d.name.clone(),
        line: d.line,
        col: d.col,
    };
    *ctx = prepare(ctx, flags);
    let tc = Tc { flags };
    let r = (|| {
        if d.body.is_none() {
            if d.name != "funext" {
                return Err(tc.err(
                    ctx,
                    ErrorKind::Postulate,
                    format!(
                        "postulate `{}` is not allowed; only `funext` may be postulated",
                        d.name
                    ),
                ));
            }
            if !flags.funext {
                return Err(tc.err(
                    ctx,
                    ErrorKind::FlagRequired,
                    "postulating `funext` requires the funext flag",
                ));
            }
            tc.check_ty(ctx, &d.ty)?;
            let want = ctx.eval(&funext_type());
            let got = ctx.eval(&d.ty);
            if !tc.conv_ty(ctx, &want, &got) {
                return Err(tc.type_mismatch(
                    ctx,
                    "`funext` postulated at the wrong type",
                    &want,
                    &got,
                ));
            }
            // The builtin constant is already present: this is a restatement.
            return Ok(());
        }
        if ctx.globals.contains(&d.name) {
            return Err(tc.err(
                ctx,
                ErrorKind::Duplicate,
                format!("`{}` is already defined", d.name),
            ));
        }
        tc.check_ty(ctx, &d.ty)?;
        let ty = ctx.eval(&d.ty);
        let body = d.body.as_ref().unwrap();
        tc.check(ctx, body, &ty)?;
        let value = ctx.eval(body);
        ctx.define(&d.name, ty, Some(value));
        Ok(())
    })();
    r.map_err(|e| e.at(&loc))
}
