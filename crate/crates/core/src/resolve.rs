//! Module resolution: normalizes every predicate of every module and
//! annotates each body goal with the module that defines it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::builtins::{builtin_module, is_builtin_module, is_call, BUILTIN_MODULES};
use crate::error::{Error, Result, Warning};
use crate::ffi::{resolve_method_calls, ForeignClassDecl, ForeignDecl, ForeignLookup};
use crate::builtins::InlineOp;
use crate::normalize::{normalize_predicate, ClauseSrc, NClause, NPred, CUT_TO, GET_LEVEL};
use crate::reader::ModuleAst;
use crate::term::{Functor, PredKey, Term};
use crate::writer::canonical_term;

/// A body goal after resolution.
#[derive(Clone, Debug, PartialEq)]
pub enum Goal {
    Inline(InlineOp, Vec<Term>),
    Cut,
    GetLevel(Term),
    CutTo(Term),
    Call(PredKey, Vec<Term>),
    /// `call/N`: the goal and extra arguments, resolved at run time in the
    /// calling module's context.
    Meta(Vec<Term>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RClause {
    pub head: Vec<Term>,
    pub body: Vec<Goal>,
    pub nvars: usize,
    pub names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredKind {
    Source,
    /// Generated by normalization.
    Aux,
    /// Referenced but defined nowhere; fails when called.
    Stub,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RPred {
    pub functor: Functor,
    pub kind: PredKind,
    pub clauses: Vec<RClause>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedModule {
    pub name: String,
    pub exports: Vec<Functor>,
    /// Modules named in `use_module` directives, in order.
    pub imports: Vec<String>,
    /// Non-builtin modules whose symbols this module references, in order
    /// of first reference. Foreign classes map to the module declaring them.
    pub deps: Vec<String>,
    pub preds: Vec<RPred>,
    pub foreign: Vec<ForeignDecl>,
    pub classes: Vec<ForeignClassDecl>,
    /// Normalized clauses, kept for checking against the reference
    /// interpreter.
    pub normalized: Vec<NPred>,
}

impl ResolvedModule {
    pub fn pred(&self, f: &Functor) -> Option<&RPred> {
        self.preds.iter().find(|p| &p.functor == f)
    }
}

fn goal_text(name: &str, args: &[Term], names: &[String]) -> String {
    canonical_term(&Term::compound(name, args.to_vec()), names)
}

impl RClause {
    fn fmt_goal(&self, g: &Goal) -> String {
        let n = &self.names;
        match g {
            Goal::Inline(op, args) => goal_text(op.name(), args, n),
            Goal::Cut => "!".into(),
            Goal::GetLevel(t) => goal_text(GET_LEVEL, std::slice::from_ref(t), n),
            Goal::CutTo(t) => goal_text(CUT_TO, std::slice::from_ref(t), n),
            Goal::Call(k, args) => format!("{}:{}", k.module, goal_text(&k.name, args, n)),
            Goal::Meta(args) => goal_text("call", args, n),
        }
    }
}

impl fmt::Display for RClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", goal_text("$head", &self.head, &self.names))?;
        for (i, g) in self.body.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " :- " } else { ", " }, self.fmt_goal(g))?;
        }
        write!(f, ".")
    }
}

/// Everything resolution needs to know about the program's modules.
struct Env<'a> {
    modules: HashMap<&'a str, &'a ModuleAst>,
    /// Foreign class name to declaring module.
    classes: HashMap<&'a str, (&'a str, &'a ForeignClassDecl)>,
}

impl<'a> Env<'a> {
    fn new(mods: &'a [ModuleAst]) -> Result<Self> {
        let mut modules = HashMap::new();
        let mut classes = HashMap::new();
        for m in mods {
            if is_builtin_module(&m.name) {
                return Err(Error::Resolve(format!("module name `{}` is reserved", m.name)));
            }
            if modules.insert(m.name.as_str(), m).is_some() {
                return Err(Error::Resolve(format!("module `{}` defined twice", m.name)));
            }
            for c in &m.foreign_classes {
                if let Some((other, _)) = classes.insert(c.name.as_str(), (m.name.as_str(), c)) {
                    return Err(Error::Resolve(format!(
                        "foreign class `{}` declared in both `{other}` and `{}`",
                        c.name, m.name
                    )));
                }
            }
        }
        for c in classes.keys() {
            if modules.contains_key(c) {
                return Err(Error::Resolve(format!("foreign class `{c}` clashes with a module name")));
            }
        }
        Ok(Env { modules, classes })
    }

    /// Whether `module` (a source module, foreign class or builtin module)
    /// exports `f`.
    fn exports(&self, module: &str, f: &Functor) -> Option<bool> {
        if let Some(m) = self.modules.get(module) {
            return Some(m.exports_pred(f));
        }
        if let Some((_, c)) = self.classes.get(module) {
            return Some(c.methods.iter().any(|d| d.name == f.name && d.pred_arity() == f.arity));
        }
        BUILTIN_MODULES
            .iter()
            .find(|(n, _)| *n == module)
            .map(|(_, ps)| ps.contains(&(f.name.as_str(), f.arity)) || (module == "term_basic" && is_call(&f.name, f.arity)))
    }

    /// Interned name of a known module, class or builtin module.
    fn module_key(&self, name: &str) -> Option<&'a str> {
        if let Some((k, _)) = self.modules.get_key_value(name) {
            return Some(k);
        }
        if let Some((k, _)) = self.classes.get_key_value(name) {
            return Some(k);
        }
        BUILTIN_MODULES.iter().find(|(n, _)| *n == name).map(|(n, _)| *n)
    }

    /// Module whose emitted file defines `module`'s symbols, if not builtin.
    fn owner(&self, module: &'a str) -> Option<&'a str> {
        if self.modules.contains_key(module) {
            Some(module)
        } else {
            self.classes.get(module).map(|(o, _)| *o)
        }
    }
}

struct Lookup<'a, 'e> {
    env: &'e Env<'a>,
    module: &'a ModuleAst,
}

impl ForeignLookup for Lookup<'_, '_> {
    fn foreign_pred(&self, module: Option<&str>, name: &str, arity: usize) -> Option<&ForeignDecl> {
        match module {
            None => {
                if let Some(d) = self.module.foreign_decls.iter().find(|d| d.name == name && d.arity() == arity) {
                    return Some(d);
                }
                // Not defined locally: the first import that provides it.
                let f = Functor::new(name, arity);
                if self.module.clauses.iter().any(|c| c.head.functor() == Some((name, arity))) {
                    return None;
                }
                self.module
                    .imports
                    .iter()
                    .filter(|im| im.includes(&f) && self.env.exports(&im.module, &f) == Some(true))
                    .find_map(|im| self.foreign_pred(Some(&im.module), name, arity))
            }
            Some(m) => {
                if let Some((_, c)) = self.env.classes.get(m) {
                    return c.methods.iter().find(|d| d.name == name && d.pred_arity() == arity);
                }
                self.env
                    .modules
                    .get(m)
                    .and_then(|md| md.foreign_decls.iter().find(|d| d.name == name && d.arity() == arity))
            }
        }
    }

    fn foreign_class(&self, name: &str) -> Option<&ForeignClassDecl> {
        self.env.classes.get(name).map(|(_, c)| *c)
    }
}

/// Resolves every module of a program. `mods` must contain every module
/// that is imported.
pub fn resolve_program(mods: &[ModuleAst]) -> Result<(Vec<ResolvedModule>, Vec<Warning>)> {
    let env = Env::new(mods)?;
    let mut warnings = Vec::new();
    let mut out = Vec::new();
    for m in mods {
        out.push(resolve_module(&env, m, &mut warnings)?);
    }
    Ok((out, warnings))
}

struct ModCtx<'a, 'e> {
    env: &'e Env<'a>,
    m: &'a ModuleAst,
    /// Everything defined locally: clauses, foreign decls, auxiliaries.
    local: BTreeSet<Functor>,
    deps: Vec<String>,
    stubs: Vec<Functor>,
}

impl<'a> ModCtx<'a, '_> {
    fn dep(&mut self, module: &'a str) {
        if let Some(o) = self.env.owner(module) {
            if o != self.m.name && !self.deps.iter().any(|d| d == o) {
                self.deps.push(o.to_string());
            }
        }
    }

    fn resolve_goal(&mut self, goal: &Term, clause: &NClause, warnings: &mut Vec<Warning>) -> Result<Goal> {
        let (name, arity) = goal.functor().ok_or_else(|| Error::Internal("non-callable goal after normalization".into()))?;
        let args = goal.args().to_vec();
        if let Some(op) = InlineOp::from_goal(name, arity) {
            return Ok(Goal::Inline(op, args));
        }
        match (name, arity) {
            ("!", 0) => return Ok(Goal::Cut),
            (GET_LEVEL, 1) => return Ok(Goal::GetLevel(args[0].clone())),
            (CUT_TO, 1) => return Ok(Goal::CutTo(args[0].clone())),
            _ if is_call(name, arity) => return Ok(Goal::Meta(args)),
            (":", 2) => return self.qualified(goal, clause),
            _ => {}
        }
        let f = Functor::new(name, arity);
        if self.local.contains(&f) {
            return Ok(Goal::Call(PredKey::new(&self.m.name, name, arity), args));
        }
        let mut found: Vec<&str> = Vec::new();
        for i in &self.m.imports {
            if i.includes(&f) && self.env.exports(&i.module, &f) == Some(true) && !found.contains(&i.module.as_str()) {
                found.push(&i.module);
            }
        }
        match found.as_slice() {
            [one] => {
                let one: &'a str = self.m.imports.iter().find(|i| i.module == *one).map(|i| i.module.as_str()).unwrap();
                self.dep(one);
                return Ok(Goal::Call(PredKey::new(one, name, arity), args));
            }
            [a, b, ..] => {
                return Err(Error::Resolve(format!(
                    "{}: {f} is ambiguous: imported from both `{a}` and `{b}`",
                    clause.pos
                )))
            }
            [] => {}
        }
        if let Some(bm) = builtin_module(name, arity) {
            return Ok(Goal::Call(PredKey::new(bm, name, arity), args));
        }
        if !self.stubs.contains(&f) {
            warnings.push(Warning::new(Some(clause.pos), format!("unknown predicate {}:{f}; calls to it fail", self.m.name)));
            self.stubs.push(f.clone());
        }
        self.local.insert(f);
        Ok(Goal::Call(PredKey::new(&self.m.name, name, arity), args))
    }

    fn qualified(&mut self, goal: &Term, clause: &NClause) -> Result<Goal> {
        let (mt, g) = (&goal.args()[0], &goal.args()[1]);
        let (Term::Atom(mname), Some((name, arity))) = (mt, g.functor()) else {
            return Ok(Goal::Meta(vec![goal.clone()]));
        };
        if matches!((name, arity), (",", 2) | (";", 2) | ("->", 2) | ("\\+", 1) | ("!", 0) | (":", 2)) || is_call(name, arity) {
            return Ok(Goal::Meta(vec![goal.clone()]));
        }
        let f = Functor::new(name, arity);
        let args = g.args().to_vec();
        if *mname == self.m.name {
            if !self.local.contains(&f) {
                return Err(Error::Resolve(format!("{}: {}:{f} is not defined", clause.pos, mname)));
            }
            return Ok(Goal::Call(PredKey::new(mname, name, arity), args));
        }
        let Some(key) = self.env.module_key(mname) else {
            return Err(Error::Resolve(format!("{}: unknown module `{mname}` in {}:{f}", clause.pos, mname)));
        };
        if self.env.exports(key, &f) != Some(true) {
            return Err(Error::Resolve(format!("{}: {f} is not exported by `{mname}`", clause.pos)));
        }
        self.dep(key);
        Ok(Goal::Call(PredKey::new(key, name, arity), args))
    }
}

fn resolve_module(env: &Env<'_>, m: &ModuleAst, warnings: &mut Vec<Warning>) -> Result<ResolvedModule> {
    for i in &m.imports {
        if env.owner(&i.module).is_none() && !is_builtin_module(&i.module) {
            return Err(Error::module(i.pos, format!("imported module `{}` not found", i.module)));
        }
    }
    for d in &m.foreign_decls {
        if m.clauses.iter().any(|c| c.functor() == Functor::new(&d.name, d.arity())) {
            return Err(Error::foreign(d.pos, format!("{}/{} is defined by both clauses and a foreign declaration", d.name, d.arity())));
        }
    }
    let lookup = Lookup { env, module: m };
    let mut normalized = Vec::new();
    for f in m.defined() {
        let mut bodies = Vec::new();
        let clauses: Vec<_> = m.clauses.iter().filter(|c| c.functor() == f).collect();
        if clauses.is_empty() {
            continue;
        }
        for c in &clauses {
            bodies.push(resolve_method_calls(&c.body, &lookup)?);
        }
        let srcs: Vec<ClauseSrc> = clauses
            .iter()
            .zip(&bodies)
            .map(|(c, b)| ClauseSrc {
                head: &c.head,
                body: b,
                pos: c.pos,
            })
            .collect();
        normalized.extend(normalize_predicate(&f, &srcs)?);
    }

    let mut cx = ModCtx {
        env,
        m,
        local: normalized
            .iter()
            .map(|p| p.functor.clone())
            .chain(m.foreign_decls.iter().map(|d| Functor::new(&d.name, d.arity())))
            .collect(),
        deps: Vec::new(),
        stubs: Vec::new(),
    };
    for i in &m.imports {
        cx.dep(&i.module);
    }
    let mut preds = Vec::new();
    for p in &normalized {
        let mut clauses = Vec::new();
        for c in &p.clauses {
            let body = c
                .body
                .iter()
                .map(|g| cx.resolve_goal(g, c, warnings))
                .collect::<Result<Vec<_>>>()?;
            clauses.push(RClause {
                head: c.args().to_vec(),
                body,
                nvars: c.nvars,
                names: c.names.clone(),
            });
        }
        preds.push(RPred {
            functor: p.functor.clone(),
            kind: if p.aux_of.is_some() { PredKind::Aux } else { PredKind::Source },
            clauses,
        });
    }
    for f in &cx.stubs {
        preds.push(RPred {
            functor: f.clone(),
            kind: PredKind::Stub,
            clauses: Vec::new(),
        });
    }
    Ok(ResolvedModule {
        name: m.name.clone(),
        exports: m.exported(),
        imports: m.imports.iter().map(|i| i.module.clone()).fold(Vec::new(), |mut v, x| {
            if !v.contains(&x) {
                v.push(x);
            }
            v
        }),
        deps: cx.deps,
        preds,
        foreign: m.foreign_decls.clone(),
        classes: m.foreign_classes.clone(),
        normalized,
    })
}
