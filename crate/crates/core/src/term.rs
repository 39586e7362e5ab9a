//! Term representations shared by the compiler passes.
//!
//! [`TermAst`] is what the reader produces: named variables and source
//! positions. [`Term`] is the clause-level form used from normalization on,
//! where variables are dense indices local to one clause.

use std::collections::HashMap;
use std::fmt;

/// One-based line and column of a token or term in its source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub enum AstKind {
    Var(String),
    Atom(String),
    Int(i64),
    Float(f64),
    Str(String),
    /// Always has at least one argument; arity 0 is `Atom`.
    Compound(String, Vec<TermAst>),
}

/// Parsed term with its source position.
#[derive(Clone, Debug)]
pub struct TermAst {
    pub kind: AstKind,
    pub pos: Pos,
}

impl PartialEq for TermAst {
    /// Structural equality; positions are ignored.
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (AstKind::Var(a), AstKind::Var(b)) => a == b,
            (AstKind::Atom(a), AstKind::Atom(b)) => a == b,
            (AstKind::Int(a), AstKind::Int(b)) => a == b,
            (AstKind::Float(a), AstKind::Float(b)) => a.to_bits() == b.to_bits(),
            (AstKind::Str(a), AstKind::Str(b)) => a == b,
            (AstKind::Compound(f, xs), AstKind::Compound(g, ys)) => f == g && xs == ys,
            _ => false,
        }
    }
}

impl TermAst {
    pub fn new(kind: AstKind, pos: Pos) -> Self {
        TermAst { kind, pos }
    }

    pub fn atom(name: impl Into<String>, pos: Pos) -> Self {
        TermAst::new(AstKind::Atom(name.into()), pos)
    }

    pub fn var(name: impl Into<String>, pos: Pos) -> Self {
        TermAst::new(AstKind::Var(name.into()), pos)
    }

    /// Builds `name(args)`, or the atom `name` when `args` is empty.
    pub fn compound(name: impl Into<String>, args: Vec<TermAst>, pos: Pos) -> Self {
        if args.is_empty() {
            TermAst::atom(name, pos)
        } else {
            TermAst::new(AstKind::Compound(name.into(), args), pos)
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self.kind, AstKind::Var(_))
    }

    pub fn is_callable(&self) -> bool {
        matches!(self.kind, AstKind::Atom(_) | AstKind::Compound(..))
    }

    /// Name and arity of an atom or compound.
    pub fn functor(&self) -> Option<(&str, usize)> {
        match &self.kind {
            AstKind::Atom(a) => Some((a, 0)),
            AstKind::Compound(f, args) => Some((f, args.len())),
            _ => None,
        }
    }

    pub fn args(&self) -> &[TermAst] {
        match &self.kind {
            AstKind::Compound(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_functor(&self, name: &str, arity: usize) -> bool {
        self.functor() == Some((name, arity))
    }

    pub fn atom_name(&self) -> Option<&str> {
        match &self.kind {
            AstKind::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Collects the elements of a proper list, or `None` for partial lists.
    pub fn list_items(&self) -> Option<Vec<&TermAst>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match &cur.kind {
                AstKind::Atom(a) if a == "[]" => return Some(out),
                AstKind::Compound(f, args) if f == "." && args.len() == 2 => {
                    out.push(&args[0]);
                    cur = &args[1];
                }
                _ => return None,
            }
        }
    }

    /// Variable names in order of first occurrence.
    pub fn var_names(&self) -> Vec<String> {
        fn walk(t: &TermAst, out: &mut Vec<String>) {
            match &t.kind {
                AstKind::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                AstKind::Compound(_, args) => args.iter().for_each(|a| walk(a, out)),
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Clause-local variable index.
pub type VarId = usize;

/// A term whose variables are numbered within their clause.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Var(VarId),
    Atom(String),
    Int(i64),
    Float(f64),
    Str(String),
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Self {
        Term::Atom(name.into())
    }

    pub fn compound(name: impl Into<String>, args: Vec<Term>) -> Self {
        if args.is_empty() {
            Term::Atom(name.into())
        } else {
            Term::Compound(name.into(), args)
        }
    }

    pub fn functor(&self) -> Option<(&str, usize)> {
        match self {
            Term::Atom(a) => Some((a, 0)),
            Term::Compound(f, args) => Some((f, args.len())),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Compound(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_functor(&self, name: &str, arity: usize) -> bool {
        self.functor() == Some((name, arity))
    }

    pub fn is_callable(&self) -> bool {
        matches!(self, Term::Atom(_) | Term::Compound(..))
    }

    /// Appends the variables of this term, in first-occurrence order, to `out`.
    pub fn collect_vars(&self, out: &mut Vec<VarId>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    /// Counts occurrences of each variable into `counts`.
    pub fn count_vars(&self, counts: &mut HashMap<VarId, usize>) {
        match self {
            Term::Var(v) => *counts.entry(*v).or_insert(0) += 1,
            Term::Compound(_, args) => args.iter().for_each(|a| a.count_vars(counts)),
            _ => {}
        }
    }

    pub fn as_const(&self) -> Option<Const> {
        match self {
            Term::Atom(a) => Some(Const::Atom(a.clone())),
            Term::Int(i) => Some(Const::Int(*i)),
            Term::Float(f) => Some(Const::Float(*f)),
            Term::Str(s) => Some(Const::Str(s.clone())),
            _ => None,
        }
    }

    /// Builds the list `[items | tail]`.
    pub fn list(items: Vec<Term>, tail: Term) -> Term {
        items
            .into_iter()
            .rev()
            .fold(tail, |acc, x| Term::Compound(".".into(), vec![x, acc]))
    }
}

/// Atomic value that can appear in compiled code.
#[derive(Clone, Debug, PartialEq)]
pub enum Const {
    Atom(String),
    Int(i64),
    Float(f64),
    Str(String),
}

impl Const {
    pub fn to_term(&self) -> Term {
        match self {
            Const::Atom(a) => Term::Atom(a.clone()),
            Const::Int(i) => Term::Int(*i),
            Const::Float(f) => Term::Float(*f),
            Const::Str(s) => Term::Str(s.clone()),
        }
    }
}

/// Name/arity pair. Displays as the string key used by the runtime tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub name: String,
    pub arity: usize,
}

impl Functor {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Functor {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Module-qualified predicate indicator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredKey {
    pub module: String,
    pub name: String,
    pub arity: usize,
}

impl PredKey {
    pub fn new(module: impl Into<String>, name: impl Into<String>, arity: usize) -> Self {
        PredKey {
            module: module.into(),
            name: name.into(),
            arity,
        }
    }

    pub fn functor(&self) -> Functor {
        Functor::new(self.name.clone(), self.arity)
    }

    /// Table key inside the owning module, `name/arity`.
    pub fn key(&self) -> String {
        crate::emit::mangle(&self.name, self.arity)
    }
}

impl fmt::Display for PredKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/{}", self.module, self.name, self.arity)
    }
}

/// Converts reader terms to clause terms, numbering variables on first
/// occurrence. Every `_`-prefixed variable occurrence gets a fresh index.
#[derive(Debug, Default)]
pub struct VarNumbering {
    names: Vec<String>,
    map: HashMap<String, VarId>,
}

impl VarNumbering {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn convert(&mut self, t: &TermAst) -> Term {
        match &t.kind {
            AstKind::Var(name) => Term::Var(self.var(name)),
            AstKind::Atom(a) => Term::Atom(a.clone()),
            AstKind::Int(i) => Term::Int(*i),
            AstKind::Float(f) => Term::Float(*f),
            AstKind::Str(s) => Term::Str(s.clone()),
            AstKind::Compound(f, args) => {
                Term::Compound(f.clone(), args.iter().map(|a| self.convert(a)).collect())
            }
        }
    }

    fn var(&mut self, name: &str) -> VarId {
        if name.starts_with('_') {
            return self.fresh(name);
        }
        if let Some(&id) = self.map.get(name) {
            return id;
        }
        let id = self.fresh(name);
        self.map.insert(name.to_string(), id);
        id
    }

    /// Allocates a variable that no source name maps to.
    pub fn fresh(&mut self, hint: &str) -> VarId {
        self.names.push(hint.to_string());
        self.names.len() - 1
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.map.get(name).copied()
    }
}
