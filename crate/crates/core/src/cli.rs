//! Command-line interface.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::check::{check, check_declaration, convertible, normalize, normalize_at, Context};
use crate::cover::{load_axiom_set, run_queries};
use crate::encodings::check_corpus;
use crate::parse::{load_file, parse_term_in};
use crate::pretty::pretty_in;
use crate::syntax::{Flags, Term};

#[derive(Parser, Debug)]
#[command(
    name = "wkernel",
    about = "Type theory kernel with W-types, dependent W-types, well-founded predicates and covers"
)]
pub struct Cli {
    #[command(flatten)]
    pub flags: FlagArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FlagArgs {
    /// Enable the eta law for Pi-types
    #[arg(long, global = true)]
    pub eta_pi: bool,
    /// Enable the eta law for Sigma-types
    #[arg(long, global = true)]
    pub eta_sigma: bool,
    /// Enable the eta law for the unit type
    #[arg(long, global = true)]
    pub eta_unit: bool,
    /// Enable the function extensionality constant
    #[arg(long, global = true)]
    pub funext: bool,
}

impl FlagArgs {
    pub fn flags(&self) -> Flags {
        Flags {
            eta_pi: self.eta_pi,
            eta_sigma: self.eta_sigma,
            eta_unit: self.eta_unit,
            funext: self.funext,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Scope {
    /// File whose declarations are in scope
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Local assumption `name : TYPE`, in scope for later ones (repeatable)
    #[arg(long = "assume", value_name = "NAME : TYPE")]
    pub assume: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type-check a file and report each declaration
    Check { file: PathBuf },
    /// Print the normal form of a term
    Norm {
        #[command(flatten)]
        scope: Scope,
        /// The term to normalize
        #[arg(long)]
        expr: String,
        /// Type to check the term against (inferred when absent)
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Decide whether two terms are convertible at a type. Names that are
    /// not in scope are assumed: those in the type as types, and a side
    /// that is just such a name as an element of the type.
    Conv {
        #[command(flatten)]
        scope: Scope,
        lhs: String,
        rhs: String,
        /// The type both sides are checked against
        #[arg(long = "type")]
        ty: String,
    },
    /// Check the corpus under the enabled flags
    Corpus {
        /// Directory holding the manifest and the corpus files
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
    /// Answer the queries of an axiom-set file
    Cover {
        file: PathBuf,
        /// Print a derivation under each covered query
        #[arg(long)]
        derivations: bool,
    },
}

/// Run the CLI; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let flags = cli.flags.flags();
    let result = match cli.command {
        Command::Check { file } => cmd_check(&file, flags, out),
        Command::Norm { scope, expr, ty } => cmd_norm(&scope, &expr, ty.as_deref(), flags, out),
        Command::Conv {
            scope,
            lhs,
            rhs,
            ty,
        } => cmd_conv(&scope, &lhs, &rhs, &ty, flags, out),
        Command::Corpus { dir } => cmd_corpus(&dir, flags, out),
        Command::Cover { file, derivations } => cmd_cover(&file, derivations, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(out, "error: {msg}");
            1
        }
    }
}

type CmdResult = Result<i32, String>;

fn cmd_check(file: &Path, flags: Flags, out: &mut dyn Write) -> CmdResult {
    let decls = load_file(file).map_err(|e| e.to_string())?;
    let mut ctx = Context::new();
    for d in &decls {
        match check_declaration(&mut ctx, d, flags) {
            Ok(()) => {
                let _ = writeln!(out, "ok {}", d.name);
            }
            Err(e) => {
                let _ = writeln!(out, "error {}: {e}", d.name);
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// The context of the scope's file, if any, without assumptions.
fn file_context(scope: &Scope, flags: Flags) -> Result<Context, String> {
    let mut ctx = Context::new();
    if let Some(file) = &scope.file {
        let decls = load_file(file).map_err(|e| e.to_string())?;
        for d in &decls {
            check_declaration(&mut ctx, d, flags).map_err(|e| format!("{}: {e}", d.name))?;
        }
    }
    Ok(ctx)
}

fn add_assumption(ctx: &Context, name: &str, ty: &str, flags: Flags) -> Result<Context, String> {
    let t = parse_term_in(ctx.names(), ty).map_err(|e| e.to_string())?;
    ctx.assume(name, &t, flags)
        .map_err(|e| format!("assumption {name}: {e}"))
}

fn with_assumptions(mut ctx: Context, scope: &Scope, flags: Flags) -> Result<Context, String> {
    for a in &scope.assume {
        let (name, ty) = a
            .split_once(':')
            .ok_or_else(|| format!("assumption `{a}` is not of the form `name : TYPE`"))?;
        ctx = add_assumption(&ctx, name.trim(), ty.trim(), flags)?;
    }
    Ok(ctx)
}

fn parse_in(ctx: &Context, text: &str) -> Result<Term, String> {
    parse_term_in(ctx.names(), text).map_err(|e| e.to_string())
}

fn cmd_norm(
    scope: &Scope,
    expr: &str,
    ty: Option<&str>,
    flags: Flags,
    out: &mut dyn Write,
) -> CmdResult {
    let ctx = with_assumptions(file_context(scope, flags)?, scope, flags)?;
    let t = parse_in(&ctx, expr)?;
    let names = ctx.names().to_vec();
    let result = match ty {
        Some(ty) => {
            let ty = parse_in(&ctx, ty)?;
            normalize_at(&ctx, &t, &ty, flags).map(|nf| (nf, ty))
        }
        None => normalize(&ctx, &t, flags),
    };
    match result {
        Ok((nf, ty)) => {
            let _ = writeln!(out, "{}", pretty_in(&names, &nf));
            let _ = writeln!(out, "  : {}", pretty_in(&names, &ty));
            Ok(0)
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            Ok(1)
        }
    }
}

/// Names in `t` that are neither locals nor globals of `ctx`.
fn unknown_constants(ctx: &Context, t: &Term, out: &mut BTreeSet<String>) {
    let mut cs = BTreeSet::new();
    t.constants(&mut cs);
    for c in cs {
        if ctx.lookup_global(&c).is_none() && c != "funext" {
            out.insert(c);
        }
    }
}

fn cmd_conv(
    scope: &Scope,
    lhs: &str,
    rhs: &str,
    ty: &str,
    flags: Flags,
    out: &mut dyn Write,
) -> CmdResult {
    let mut ctx = with_assumptions(file_context(scope, flags)?, scope, flags)?;
    // Assume names that are not in scope: those in the type are types, and
    // a side consisting of a single such name is an element of the type.
    let mut in_type = BTreeSet::new();
    unknown_constants(&ctx, &parse_in(&ctx, ty)?, &mut in_type);
    for name in &in_type {
        ctx = add_assumption(&ctx, name, "U0", flags)?;
    }
    for side in [lhs, rhs] {
        if let Term::Const(name) = parse_in(&ctx, side)? {
            if ctx.lookup_global(&name).is_none() && name != "funext" {
                ctx = add_assumption(&ctx, &name, ty, flags)?;
            }
        }
    }
    let (l, r, t) = (
        parse_in(&ctx, lhs)?,
        parse_in(&ctx, rhs)?,
        parse_in(&ctx, ty)?,
    );
    let names = ctx.names().to_vec();
    for (side, term) in [("lhs", &l), ("rhs", &r)] {
        if let Err(e) = check(&ctx, term, &t, flags) {
            let _ = writeln!(out, "error in {side}: {e}");
            return Ok(1);
        }
    }
    for (side, term) in [("lhs", &l), ("rhs", &r)] {
        let nf = normalize_at(&ctx, term, &t, flags).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{side}: {}", pretty_in(&names, &nf));
    }
    if convertible(&ctx, &t, &l, &r, flags) {
        let _ = writeln!(out, "convertible under {flags}");
        Ok(0)
    } else {
        let _ = writeln!(out, "not convertible under {flags}");
        Ok(1)
    }
}

fn cmd_corpus(dir: &Path, flags: Flags, out: &mut dyn Write) -> CmdResult {
    let report = check_corpus(dir, flags)?;
    let _ = write!(out, "{}", report.render());
    Ok(if report.has_failures() { 1 } else { 0 })
}

fn cmd_cover(file: &Path, derivations: bool, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let cf = load_axiom_set(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let _ = write!(out, "{}", run_queries(&cf, derivations));
    Ok(0)
}
