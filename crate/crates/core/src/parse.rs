//! Surface syntax of `.mltt` files.
//!
//! The grammar is documented in the README. Names are resolved while
//! parsing: bound names become de Bruijn indices, everything else becomes a
//! constant (unknown constants are reported by the type checker).

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use crate::syntax::{weaken, Decl, RcTerm, Term};

/// Reserved words; none of them is a valid identifier.
pub const KEYWORDS: &[&str] = &[
    "def",
    "postulate",
    "import",
    "fun",
    "U0",
    "N0",
    "N1",
    "star",
    "Pi",
    "Sig",
    "Sum",
    "Id",
    "refl",
    "J",
    "W",
    "sup",
    "elimW",
    "DW",
    "dsup",
    "elimDW",
    "WP",
    "ind",
    "elimWP",
    "Cover",
    "rf",
    "tr",
    "elimCover",
    "fst",
    "snd",
    "inl",
    "inr",
    "case",
    "absurd",
    "unitElim",
    "split",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Number of explicit arguments taken by a keyword form.
fn keyword_arity(s: &str) -> Option<usize> {
    Some(match s {
        "U0" | "N0" | "N1" | "star" => 0,
        "fst" | "snd" | "inl" | "inr" | "refl" => 1,
        "Pi" | "Sig" | "Sum" | "W" | "sup" | "rf" | "absurd" => 2,
        "Id" | "unitElim" | "split" | "elimW" | "dsup" | "ind" | "tr" => 3,
        "case" | "WP" | "elimDW" | "elimWP" => 4,
        "J" | "DW" | "Cover" | "elimCover" => 5,
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
    /// File in which the error occurred, when known.
    pub file: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}: parse error: expected ", self.line, self.col)?;
        if self.expected.len() == 1 {
            write!(f, "{}", self.expected[0])?;
        } else {
            write!(f, "one of {}", self.expected.join(", "))?;
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Import {
        path: String,
        line: usize,
        col: usize,
    },
    Decl(Decl),
}

/// A parsed file, before imports are resolved.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

impl SourceFile {
    pub fn decls(&self) -> Vec<Decl> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Decl(d) => Some(d.clone()),
                Item::Import { .. } => None,
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: &[&str] = &[":=", "->", "=>", "(", ")", ",", ":", "*"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            continue;
        }
        let (tl, tc) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            let s: String = chars[start..i].iter().collect();
            toks.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '"' {
            advance(&mut i, &mut line, &mut col, c);
            let start = i;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    expected: vec!["closing `\"`".into()],
                    found: "end of line".into(),
                    file: None,
                });
            }
            let s: String = chars[start..i].iter().collect();
            advance(&mut i, &mut line, &mut col, '"');
            toks.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                for _ in 0..s.len() {
                    {
                        let ch = chars[i];
                        advance(&mut i, &mut line, &mut col, ch);
                    }
                }
                toks.push(Token {
                    tok: Tok::Sym(s),
                    line: tl,
                    col: tc,
                });
            }
            None => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    expected: vec!["a token".into()],
                    found: format!("character `{c}`"),
                    file: None,
                })
            }
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Bound names, innermost last.
    scope: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

fn rc(t: Term) -> RcTerm {
    Rc::new(t)
}

/// Turn a surface motive into the body of an `n`-ary binder: leading `fun`
/// binders are consumed, any missing ones are supplied by application.
pub fn motive_body(t: Term, n: usize) -> Term {
    let mut cur = t;
    let mut k = 0;
    while k < n {
        match cur {
            Term::Lam(b) => {
                cur = (*b).clone();
                k += 1;
            }
            _ => break,
        }
    }
    let missing = n - k;
    let mut body = weaken(&cur, 0, missing);
    for j in (0..missing).rev() {
        body = Term::App(rc(body), rc(Term::Var(j)));
    }
    body
}

/// Body of a binder given as a function: a `fun` literal contributes its
/// body, anything else is applied to the bound variable.
fn binder_body(t: Term) -> Term {
    motive_body(t, 1)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
            file: None,
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{s}`")])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["an identifier"]),
        }
    }

    // -- declarations -------------------------------------------------------

    fn file(&mut self) -> PResult<SourceFile> {
        let mut items = Vec::new();
        loop {
            let (line, col) = self.here();
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(k) if k == "import" => {
                    self.bump();
                    match self.bump() {
                        Tok::Str(path) => items.push(Item::Import { path, line, col }),
                        _ => {
                            self.pos -= 1;
                            return self.error(&["a quoted file name"]);
                        }
                    }
                }
                Tok::Ident(k) if k == "def" || k == "postulate" => {
                    self.bump();
                    let name = if matches!(self.peek(), Tok::Ident(s) if s == "funext") {
                        self.bump();
                        "funext".to_string()
                    } else {
                        self.ident()?
                    };
                    self.expect_sym(":")?;
                    let ty = self.term()?;
                    let body = if k == "def" {
                        self.expect_sym(":=")?;
                        Some(self.term()?)
                    } else {
                        None
                    };
                    items.push(Item::Decl(Decl {
                        name,
                        ty,
                        body,
                        line,
                        col,
                    }));
                }
                _ => return self.error(&["`def`", "`postulate`", "`import`"]),
            }
        }
        Ok(SourceFile { items })
    }

    // -- terms --------------------------------------------------------------

    /// Does a `(` at the current position open a binder group `(x y : A)`?
    fn at_telescope(&self) -> bool {
        if !self.is_sym("(") {
            return false;
        }
        let mut k = 1;
        loop {
            match self.peek_at(k) {
                Tok::Ident(s) if !is_keyword(s) => k += 1,
                Tok::Sym(":") => return k > 1,
                _ => return false,
            }
        }
    }

    fn binder_name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["a binder name"]),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        if self.is_kw("fun") {
            self.bump();
            let mut names = vec![self.binder_name()?];
            while !self.is_sym("=>") {
                names.push(self.binder_name()?);
            }
            self.bump();
            let n = names.len();
            self.scope.extend(names);
            let body = self.term();
            self.scope.truncate(self.scope.len() - n);
            let mut t = body?;
            for _ in 0..n {
                t = Term::Lam(rc(t));
            }
            return Ok(t);
        }
        if self.at_telescope() {
            let mut binders: Vec<Term> = Vec::new();
            let base = self.scope.len();
            while self.at_telescope() {
                self.bump();
                let mut names = vec![self.binder_name()?];
                while !self.is_sym(":") {
                    names.push(self.binder_name()?);
                }
                self.bump();
                let ty = match self.term() {
                    Ok(t) => t,
                    Err(e) => {
                        self.scope.truncate(base);
                        return Err(e);
                    }
                };
                if let Err(e) = self.expect_sym(")") {
                    self.scope.truncate(base);
                    return Err(e);
                }
                for (j, name) in names.into_iter().enumerate() {
                    binders.push(weaken(&ty, 0, j));
                    self.scope.push(name);
                }
            }
            let sigma = if self.is_sym("->") {
                false
            } else if self.is_sym("*") {
                true
            } else {
                self.scope.truncate(base);
                return self.error(&["`->`", "`*`"]);
            };
            self.bump();
            let body = self.term();
            self.scope.truncate(base);
            let mut t = body?;
            for a in binders.into_iter().rev() {
                t = if sigma {
                    Term::Sigma(rc(a), rc(t))
                } else {
                    Term::Pi(rc(a), rc(t))
                };
            }
            return Ok(t);
        }
        let lhs = self.sigma()?;
        if self.is_sym("->") {
            self.bump();
            let rhs = self.term()?;
            return Ok(Term::Pi(rc(lhs), rc(weaken(&rhs, 0, 1))));
        }
        Ok(lhs)
    }

    fn sigma(&mut self) -> PResult<Term> {
        let lhs = self.app()?;
        if self.is_sym("*") {
            self.bump();
            let rhs = if self.is_kw("fun") || self.at_telescope() {
                self.term()?
            } else {
                self.sigma()?
            };
            return Ok(Term::Sigma(rc(lhs), rc(weaken(&rhs, 0, 1))));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => keyword_arity(s).map_or(!is_keyword(s), |a| a == 0),
            Tok::Sym("(") => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Term> {
        let mut head = match self.peek().clone() {
            Tok::Ident(k) if keyword_arity(&k).is_some_and(|a| a > 0) => {
                self.bump();
                self.keyword_form(&k)?
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let a = self.atom()?;
            head = Term::App(rc(head), rc(a));
        }
        Ok(head)
    }

    fn motive(&mut self, n: usize) -> PResult<RcTerm> {
        let t = self.atom()?;
        Ok(rc(motive_body(t, n)))
    }

    fn keyword_form(&mut self, k: &str) -> PResult<Term> {
        let args = |p: &mut Parser, n: usize| -> PResult<Vec<RcTerm>> {
            (0..n).map(|_| p.atom().map(rc)).collect()
        };
        Ok(match k {
            "fst" => Term::Proj1(args(self, 1)?.remove(0)),
            "snd" => Term::Proj2(args(self, 1)?.remove(0)),
            "inl" => Term::Inl(args(self, 1)?.remove(0)),
            "inr" => Term::Inr(args(self, 1)?.remove(0)),
            "refl" => Term::Refl(args(self, 1)?.remove(0)),
            "Pi" | "Sig" => {
                let a = self.atom()?;
                let b = binder_body(self.atom()?);
                if k == "Pi" {
                    Term::Pi(rc(a), rc(b))
                } else {
                    Term::Sigma(rc(a), rc(b))
                }
            }
            "Sum" => {
                let v = args(self, 2)?;
                Term::Sum(v[0].clone(), v[1].clone())
            }
            "W" => {
                let v = args(self, 2)?;
                Term::W {
                    labels: v[0].clone(),
                    branching: v[1].clone(),
                }
            }
            "sup" => {
                let v = args(self, 2)?;
                Term::Sup {
                    label: v[0].clone(),
                    branches: v[1].clone(),
                }
            }
            "rf" => {
                let v = args(self, 2)?;
                Term::Rf {
                    elem: v[0].clone(),
                    member: v[1].clone(),
                }
            }
            "absurd" => {
                let motive = self.motive(1)?;
                Term::EmptyElim {
                    motive,
                    scrut: rc(self.atom()?),
                }
            }
            "Id" => {
                let v = args(self, 3)?;
                Term::Id(v[0].clone(), v[1].clone(), v[2].clone())
            }
            "unitElim" => {
                let motive = self.motive(1)?;
                let v = args(self, 2)?;
                Term::UnitElim {
                    motive,
                    case: v[0].clone(),
                    scrut: v[1].clone(),
                }
            }
            "split" => {
                let motive = self.motive(1)?;
                let v = args(self, 2)?;
                Term::Split {
                    motive,
                    step: v[0].clone(),
                    scrut: v[1].clone(),
                }
            }
            "elimW" => {
                let motive = self.motive(1)?;
                let v = args(self, 2)?;
                Term::WElim {
                    motive,
                    step: v[0].clone(),
                    scrut: v[1].clone(),
                }
            }
            "dsup" => {
                let v = args(self, 3)?;
                Term::DSup {
                    index: v[0].clone(),
                    label: v[1].clone(),
                    branches: v[2].clone(),
                }
            }
            "ind" => {
                let v = args(self, 3)?;
                Term::Ind {
                    index: v[0].clone(),
                    rule: v[1].clone(),
                    premises: v[2].clone(),
                }
            }
            "tr" => {
                let v = args(self, 3)?;
                Term::Tr {
                    elem: v[0].clone(),
                    axiom: v[1].clone(),
                    premises: v[2].clone(),
                }
            }
            "case" => {
                let motive = self.motive(1)?;
                let v = args(self, 3)?;
                Term::SumElim {
                    motive,
                    left: v[0].clone(),
                    right: v[1].clone(),
                    scrut: v[2].clone(),
                }
            }
            "WP" => {
                let v = args(self, 4)?;
                Term::WP {
                    index_ty: v[0].clone(),
                    rules: v[1].clone(),
                    premises: v[2].clone(),
                    index: v[3].clone(),
                }
            }
            "elimDW" => {
                let motive = self.motive(2)?;
                let v = args(self, 3)?;
                Term::DWElim {
                    motive,
                    step: v[0].clone(),
                    index: v[1].clone(),
                    scrut: v[2].clone(),
                }
            }
            "elimWP" => {
                let motive = self.motive(2)?;
                let v = args(self, 3)?;
                Term::WPElim {
                    motive,
                    step: v[0].clone(),
                    index: v[1].clone(),
                    scrut: v[2].clone(),
                }
            }
            "J" => {
                let motive = self.motive(3)?;
                let v = args(self, 4)?;
                Term::J {
                    motive,
                    refl_case: v[0].clone(),
                    lhs: v[1].clone(),
                    rhs: v[2].clone(),
                    proof: v[3].clone(),
                }
            }
            "DW" => {
                let v = args(self, 5)?;
                Term::DW {
                    index_ty: v[0].clone(),
                    labels: v[1].clone(),
                    branching: v[2].clone(),
                    arity: v[3].clone(),
                    index: v[4].clone(),
                }
            }
            "Cover" => {
                let v = args(self, 5)?;
                Term::Cover {
                    carrier: v[0].clone(),
                    axioms: v[1].clone(),
                    axiom_sets: v[2].clone(),
                    subset: v[3].clone(),
                    elem: v[4].clone(),
                }
            }
            "elimCover" => {
                let motive = self.motive(2)?;
                let v = args(self, 4)?;
                Term::CoverElim {
                    motive,
                    rf_case: v[0].clone(),
                    tr_case: v[1].clone(),
                    elem: v[2].clone(),
                    scrut: v[3].clone(),
                }
            }
            _ => unreachable!("not a keyword form: {k}"),
        })
    }

    fn atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "U0" => {
                    self.bump();
                    Ok(Term::Univ)
                }
                "N0" => {
                    self.bump();
                    Ok(Term::Empty)
                }
                "N1" => {
                    self.bump();
                    Ok(Term::Unit)
                }
                "star" => {
                    self.bump();
                    Ok(Term::Star)
                }
                "_" => self.error(&["a term (`_` only names unused binders)"]),
                _ if is_keyword(&s) => self.error(&["an argument (parenthesize keyword forms)"]),
                _ => {
                    self.bump();
                    Ok(match self.scope.iter().rev().position(|n| *n == s) {
                        Some(i) => Term::Var(i),
                        None => Term::Const(s),
                    })
                }
            },
            Tok::Sym("(") => {
                if self.at_telescope() {
                    return self.term_in_parens_only();
                }
                self.bump();
                let first = self.term()?;
                if self.is_sym(",") {
                    let mut items = vec![first];
                    while self.is_sym(",") {
                        self.bump();
                        items.push(self.term()?);
                    }
                    self.expect_sym(")")?;
                    let mut t = items.pop().unwrap();
                    while let Some(a) = items.pop() {
                        t = Term::Pair(rc(a), rc(t));
                    }
                    return Ok(t);
                }
                self.expect_sym(")")?;
                Ok(first)
            }
            _ => self.error(&["an identifier", "`(`"]),
        }
    }

    /// A binder group in argument position is the start of a dependent type
    /// that must itself be parenthesized.
    fn term_in_parens_only(&mut self) -> PResult<Term> {
        self.error(&["an argument (parenthesize dependent types)"])
    }
}

fn parser(text: &str) -> PResult<Parser> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    })
}

/// Parse the items of a file without resolving imports.
pub fn parse_source(text: &str) -> Result<SourceFile, ParseError> {
    parser(text)?.file()
}

/// Parse a self-contained file (imports are rejected; see [`load_file`]).
pub fn parse_file(text: &str) -> Result<Vec<Decl>, ParseError> {
    let src = parse_source(text)?;
    if let Some(Item::Import { line, col, .. }) =
        src.items.iter().find(|i| matches!(i, Item::Import { .. }))
    {
        return Err(ParseError {
            line: *line,
            col: *col,
            expected: vec!["a declaration".into()],
            found: "`import` (use load_file to resolve imports)".into(),
            file: None,
        });
    }
    Ok(src.decls())
}

/// Parse a closed term.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_in(&[], text)
}

/// Parse a term with the given local names in scope (outermost first).
pub fn parse_term_in(names: &[String], text: &str) -> Result<Term, ParseError> {
    let mut p = parser(text)?;
    p.scope = names.to_vec();
    let t = p.term()?;
    if p.peek() != &Tok::Eof {
        return p.error(&["end of input"]);
    }
    Ok(t)
}

#[derive(Debug)]
pub enum LoadError {
    Io { path: PathBuf, message: String },
    Parse(ParseError),
    Cycle { path: PathBuf },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            LoadError::Parse(e) => write!(f, "{e}"),
            LoadError::Cycle { path } => write!(f, "{}: import cycle", path.display()),
        }
    }
}

impl std::error::Error for LoadError {}

/// Read a file and the files it imports (transitively, each once, in
/// dependency order), returning the concatenated declarations.
pub fn load_file(path: &Path) -> Result<Vec<Decl>, LoadError> {
    let mut done = BTreeSet::new();
    let mut stack = Vec::new();
    let mut out = Vec::new();
    load_rec(path, &mut done, &mut stack, &mut out)?;
    Ok(out)
}

fn load_rec(
    path: &Path,
    done: &mut BTreeSet<PathBuf>,
    stack: &mut Vec<PathBuf>,
    out: &mut Vec<Decl>,
) -> Result<(), LoadError> {
    let key = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
    if stack.contains(&key) {
        return Err(LoadError::Cycle {
            path: path.to_path_buf(),
        });
    }
    if done.contains(&key) {
        return Ok(());
    }
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let src = parse_source(&text).map_err(|mut e| {
        e.file = Some(path.display().to_string());
        LoadError::Parse(e)
    })?;
    stack.push(key.clone());
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    for item in src.items {
        match item {
            Item::Import { path: p, .. } => load_rec(&dir.join(p), done, stack, out)?,
            Item::Decl(d) => out.push(d),
        }
    }
    stack.pop();
    done.insert(key);
    Ok(())
}
