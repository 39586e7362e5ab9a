//! Chunk IR and its textual dump.

use std::fmt;

use crate::builtins::InlineOp;
use crate::term::{Const, Functor, PredKey};
use crate::writer::{quote_atom, quote_string};
use crate::store::fmt_num;

/// Where a clause variable lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Local of a single chunk.
    Temp(usize),
    /// Frame slot, survives calls.
    Y(usize),
    /// Argument of the current goal (chunk 0 only).
    Arg(usize),
}

/// Term construction.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Reads a variable already initialized.
    Var(Slot),
    /// First occurrence: a new variable, stored in the slot.
    Fresh(Slot),
    /// Anonymous new variable.
    Void,
    Const(Const),
    Struct(Functor, Vec<Expr>),
}

/// Argument of a structure matched in the head.
#[derive(Clone, Debug, PartialEq)]
pub enum ArgPat {
    /// First occurrence: store the argument.
    Bind(Slot),
    /// Unify the argument with the slot's value.
    Match(Slot),
    Void,
    Const(Const),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// `slot := a<i>`.
    GetArg { i: usize, slot: Slot },
    UnifyConst { src: Slot, c: Const },
    /// Matches `src` against `functor(pats)` or binds it to a new
    /// structure built from `pats`.
    UnifyStruct { src: Slot, functor: Functor, pats: Vec<ArgPat> },
    Unify(Expr, Expr),
    /// `slot := expr`, for `=/2` on a first occurrence.
    Set { slot: Slot, expr: Expr },
    Inline { op: InlineOp, args: Vec<Expr> },
    /// Cuts to the choicepoint current when the predicate was entered.
    Cut,
    /// Stores that choicepoint as a term.
    GetLevel(Slot),
    CutTo(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CallTarget {
    Pred(PredKey),
    /// `call/N`, resolved at run time in the caller's module.
    Meta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Call {
    pub target: CallTarget,
    pub args: Vec<Expr>,
    /// Passes the caller's continuation through.
    pub is_last: bool,
}

impl Call {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Chunk {
    pub steps: Vec<Step>,
    pub call: Option<Call>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClauseCode {
    pub nframe: usize,
    pub ntemp: usize,
    pub chunks: Vec<Chunk>,
    pub needs_frame: bool,
    /// A cut or level reaches past the first chunk, so the frame must
    /// remember the entry choicepoint.
    pub saves_cut: bool,
    /// First-argument key; `None` when the clause matches any first
    /// argument.
    pub key: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Selection {
    Linear,
    FirstArgSwitch {
        /// Candidate clauses per key, in order of first appearance.
        cases: Vec<(String, Vec<usize>)>,
        /// Candidates for a nonvar first argument with no case.
        default: Vec<usize>,
        /// Candidates for an unbound first argument.
        var: Vec<usize>,
    },
}

impl Selection {
    /// Candidate clauses for a first argument with key `key`: `None` for an
    /// unbound argument, `Some("")` for a nonvar without a key.
    pub fn candidates(&self, nclauses: usize, key: Option<&str>) -> Vec<usize> {
        match self {
            Selection::Linear => (0..nclauses).collect(),
            Selection::FirstArgSwitch { cases, default, var } => match key {
                None => var.clone(),
                Some(k) => cases
                    .iter()
                    .find(|(c, _)| c == k)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| default.clone()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChunkIR {
    pub pred: PredKey,
    pub clauses: Vec<ClauseCode>,
    pub selection: Selection,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Temp(i) => write!(f, "t{i}"),
            Slot::Y(i) => write!(f, "y{i}"),
            Slot::Arg(i) => write!(f, "a{i}"),
        }
    }
}

pub fn const_text(c: &Const) -> String {
    match c {
        Const::Atom(a) => quote_atom(a).into_owned(),
        Const::Int(i) => i.to_string(),
        Const::Float(x) => fmt_num(*x),
        Const::Str(s) => quote_string(s),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(s) => write!(f, "{s}"),
            Expr::Fresh(s) => write!(f, "new {s}"),
            Expr::Void => write!(f, "_"),
            Expr::Const(c) => write!(f, "{}", const_text(c)),
            Expr::Struct(fun, args) => {
                write!(f, "{}(", quote_atom(&fun.name))?;
                for (i, a) in args.iter().enumerate() {
                    write!(f, "{}{a}", if i > 0 { ", " } else { "" })?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ArgPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgPat::Bind(s) => write!(f, "bind {s}"),
            ArgPat::Match(s) => write!(f, "match {s}"),
            ArgPat::Void => write!(f, "void"),
            ArgPat::Const(c) => write!(f, "const {}", const_text(c)),
        }
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::GetArg { i, slot } => write!(f, "get_arg a{i} -> {slot}"),
            Step::UnifyConst { src, c } => write!(f, "unify_const {src} {}", const_text(c)),
            Step::UnifyStruct { src, functor, pats } => {
                write!(f, "unify_struct {src} {}/{} ({})", quote_atom(&functor.name), functor.arity, list(pats))
            }
            Step::Unify(a, b) => write!(f, "unify {a} {b}"),
            Step::Set { slot, expr } => write!(f, "set {slot} <- {expr}"),
            Step::Inline { op, args } => write!(f, "builtin {} ({})", op.name(), list(args)),
            Step::Cut => write!(f, "cut"),
            Step::GetLevel(s) => write!(f, "get_level {s}"),
            Step::CutTo(e) => write!(f, "cut_to {e}"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            CallTarget::Pred(k) => write!(f, "call {k} ({})", list(&self.args))?,
            CallTarget::Meta => write!(f, "call_meta/{} ({})", self.arity(), list(&self.args))?,
        }
        if self.is_last {
            write!(f, " last")?;
        }
        Ok(())
    }
}

fn idx(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl fmt::Display for ChunkIR {
    /// One line per step; the format is stable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pred {} clauses={}", self.pred, self.clauses.len())?;
        match &self.selection {
            Selection::Linear => writeln!(f, "  select linear")?,
            Selection::FirstArgSwitch { cases, default, var } => {
                writeln!(f, "  select switch")?;
                for (k, cs) in cases {
                    writeln!(f, "    case {k} -> {}", idx(cs))?;
                }
                writeln!(f, "    default -> {}", idx(default))?;
                writeln!(f, "    var -> {}", idx(var))?;
            }
        }
        for (i, c) in self.clauses.iter().enumerate() {
            writeln!(
                f,
                "  clause {i} nframe={} ntemp={} frame={} saves_cut={}",
                c.nframe, c.ntemp, c.needs_frame, c.saves_cut
            )?;
            for (k, ch) in c.chunks.iter().enumerate() {
                writeln!(f, "    chunk {k}")?;
                for s in &ch.steps {
                    writeln!(f, "      {s}")?;
                }
                match &ch.call {
                    Some(call) => writeln!(f, "      {call}")?,
                    None => writeln!(f, "      proceed")?,
                }
            }
        }
        Ok(())
    }
}
