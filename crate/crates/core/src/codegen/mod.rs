//! Compiles resolved clauses into chunk IR: slot allocation, chunk
//! splitting at predicate calls, and first-argument clause selection.

pub mod ir;

use std::collections::HashMap;

pub use ir::*;

use crate::builtins::InlineOp;
use crate::resolve::{Goal, RClause, RPred};
use crate::store::num_key;
use crate::term::{Functor, PredKey, Term, VarId};

/// Slot of every variable of a clause, indexed by `VarId`. Singleton
/// variables have no slot.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotAssignment {
    pub slots: Vec<Option<Slot>>,
    pub nframe: usize,
    pub ntemp: usize,
}

/// Chunk index of each body goal: a chunk ends after each call.
fn goal_chunks(body: &[Goal]) -> (Vec<usize>, usize) {
    let mut k = 0;
    let mut out = Vec::with_capacity(body.len());
    for g in body {
        out.push(k);
        if is_call(g) {
            k += 1;
        }
    }
    let n = match body.last() {
        Some(g) if is_call(g) => k,
        _ => k + 1,
    };
    (out, n)
}

fn is_call(g: &Goal) -> bool {
    matches!(g, Goal::Call(..) | Goal::Meta(_))
}

fn goal_terms(g: &Goal) -> Vec<&Term> {
    match g {
        Goal::Inline(_, args) | Goal::Call(_, args) | Goal::Meta(args) => args.iter().collect(),
        Goal::GetLevel(t) | Goal::CutTo(t) => vec![t],
        Goal::Cut => vec![],
    }
}

fn count(t: &Term, out: &mut HashMap<VarId, usize>) {
    t.count_vars(out);
}

pub fn allocate_slots(clause: &RClause) -> SlotAssignment {
    let n = clause.nvars.max(
        clause
            .head
            .iter()
            .chain(clause.body.iter().flat_map(goal_terms))
            .flat_map(|t| t.vars())
            .map(|v| v + 1)
            .max()
            .unwrap_or(0),
    );
    let (chunk_of, _) = goal_chunks(&clause.body);
    let mut chunks: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut total = HashMap::new();
    let mut head_occ = HashMap::new();
    for t in &clause.head {
        count(t, &mut head_occ);
        count(t, &mut total);
        for v in t.vars() {
            if !chunks[v].contains(&0) {
                chunks[v].push(0);
            }
        }
    }
    for (g, &k) in clause.body.iter().zip(&chunk_of) {
        for t in goal_terms(g) {
            count(t, &mut total);
            for v in t.vars() {
                if !chunks[v].contains(&k) {
                    chunks[v].push(k);
                }
            }
        }
    }
    let mut slots = vec![None; n];
    let (mut nframe, mut ntemp) = (0, 0);
    // Frame slots first, in variable order, so numbering is stable.
    for v in 0..n {
        if chunks[v].len() >= 2 {
            slots[v] = Some(Slot::Y(nframe));
            nframe += 1;
        }
    }
    for v in 0..n {
        if slots[v].is_some() || total.get(&v).copied().unwrap_or(0) < 2 {
            continue;
        }
        if head_occ.get(&v) == Some(&1) {
            if let Some(i) = clause.head.iter().position(|t| *t == Term::Var(v)) {
                slots[v] = Some(Slot::Arg(i));
                continue;
            }
        }
        slots[v] = Some(Slot::Temp(ntemp));
        ntemp += 1;
    }
    SlotAssignment { slots, nframe, ntemp }
}

struct Builder<'a> {
    slots: &'a SlotAssignment,
    seen: Vec<bool>,
    ntemp: usize,
}

impl Builder<'_> {
    fn new_temp(&mut self) -> Slot {
        self.ntemp += 1;
        Slot::Temp(self.ntemp - 1)
    }

    fn expr(&mut self, t: &Term) -> Expr {
        match t {
            Term::Var(v) => match self.slots.slots[*v] {
                None => Expr::Void,
                Some(s) if self.seen[*v] => Expr::Var(s),
                Some(s) => {
                    self.seen[*v] = true;
                    Expr::Fresh(s)
                }
            },
            Term::Compound(f, args) => {
                Expr::Struct(Functor::new(f.clone(), args.len()), args.iter().map(|a| self.expr(a)).collect())
            }
            other => Expr::Const(other.as_const().expect("atomic term")),
        }
    }

    fn head_arg(&mut self, i: usize, t: &Term, steps: &mut Vec<Step>) {
        match t {
            Term::Var(v) => match self.slots.slots[*v] {
                None => {}
                Some(Slot::Arg(j)) if j == i && !self.seen[*v] => self.seen[*v] = true,
                Some(s) if !self.seen[*v] => {
                    self.seen[*v] = true;
                    steps.push(Step::GetArg { i, slot: s });
                }
                Some(s) => steps.push(Step::Unify(Expr::Var(s), Expr::Var(Slot::Arg(i)))),
            },
            Term::Compound(..) => self.head_struct(Slot::Arg(i), t, steps),
            other => steps.push(Step::UnifyConst {
                src: Slot::Arg(i),
                c: other.as_const().expect("atomic term"),
            }),
        }
    }

    /// Flattens a head structure into `UnifyStruct` steps; nested
    /// structures are bound to temporaries and matched afterwards.
    fn head_struct(&mut self, src: Slot, t: &Term, steps: &mut Vec<Step>) {
        let Term::Compound(name, args) = t else { unreachable!() };
        let mut nested = Vec::new();
        let mut pats = Vec::new();
        for a in args {
            pats.push(match a {
                Term::Var(v) => match self.slots.slots[*v] {
                    None => ArgPat::Void,
                    Some(s) if self.seen[*v] => ArgPat::Match(s),
                    Some(s) => {
                        self.seen[*v] = true;
                        ArgPat::Bind(s)
                    }
                },
                Term::Compound(..) => {
                    let tmp = self.new_temp();
                    nested.push((tmp, a));
                    ArgPat::Bind(tmp)
                }
                other => ArgPat::Const(other.as_const().expect("atomic term")),
            });
        }
        steps.push(Step::UnifyStruct {
            src,
            functor: Functor::new(name.clone(), args.len()),
            pats,
        });
        for (tmp, a) in nested {
            self.head_struct(tmp, a, steps);
        }
    }

    fn var_first(&self, t: &Term) -> Option<(VarId, Slot)> {
        match t {
            Term::Var(v) if !self.seen[*v] => self.slots.slots[*v].map(|s| (*v, s)),
            _ => None,
        }
    }

    fn unify_goal(&mut self, a: &Term, b: &Term, steps: &mut Vec<Step>) {
        for (x, y) in [(a, b), (b, a)] {
            if let Some((v, slot)) = self.var_first(x) {
                if !y.vars().contains(&v) {
                    let expr = self.expr(y);
                    self.seen[v] = true;
                    steps.push(Step::Set { slot, expr });
                    return;
                }
            }
        }
        let (ea, eb) = (self.expr(a), self.expr(b));
        steps.push(Step::Unify(ea, eb));
    }
}

/// Splits a clause into chunks, each ending in at most one call.
pub fn split_chunks(clause: &RClause, slots: &SlotAssignment) -> ClauseCode {
    let (chunk_of, nchunks) = goal_chunks(&clause.body);
    let mut b = Builder {
        slots,
        seen: vec![false; slots.slots.len()],
        ntemp: slots.ntemp,
    };
    let mut chunks = vec![Chunk::default(); nchunks];
    for (i, t) in clause.head.iter().enumerate() {
        b.head_arg(i, t, &mut chunks[0].steps);
    }
    let mut saves_cut = false;
    for (g, &k) in clause.body.iter().zip(&chunk_of) {
        let steps = &mut chunks[k].steps;
        match g {
            Goal::Inline(InlineOp::Unify, args) => b.unify_goal(&args[0], &args[1], steps),
            Goal::Inline(op, args) => {
                let args = args.iter().map(|a| b.expr(a)).collect();
                steps.push(Step::Inline { op: *op, args });
            }
            Goal::Cut => {
                saves_cut |= k > 0;
                steps.push(Step::Cut);
            }
            Goal::GetLevel(t) => {
                saves_cut |= k > 0;
                match b.var_first(t) {
                    Some((v, slot)) => {
                        b.seen[v] = true;
                        steps.push(Step::GetLevel(slot));
                    }
                    None => {
                        let tmp = b.new_temp();
                        steps.push(Step::GetLevel(tmp));
                        let e = b.expr(t);
                        steps.push(Step::Unify(e, Expr::Var(tmp)));
                    }
                }
            }
            Goal::CutTo(t) => {
                let e = b.expr(t);
                steps.push(Step::CutTo(e));
            }
            Goal::Call(key, args) => {
                let args = args.iter().map(|a| b.expr(a)).collect();
                chunks[k].call = Some(Call {
                    target: CallTarget::Pred(key.clone()),
                    args,
                    is_last: k + 1 == nchunks,
                });
            }
            Goal::Meta(args) => {
                let args = args.iter().map(|a| b.expr(a)).collect();
                chunks[k].call = Some(Call {
                    target: CallTarget::Meta,
                    args,
                    is_last: k + 1 == nchunks,
                });
            }
        }
    }
    ClauseCode {
        nframe: slots.nframe,
        ntemp: b.ntemp,
        needs_frame: nchunks > 1,
        saves_cut,
        chunks,
        key: clause.head.first().and_then(head_key),
    }
}

/// Index key of a clause's first argument, `None` if it matches anything.
pub fn head_key(t: &Term) -> Option<String> {
    match t {
        Term::Var(_) | Term::Float(_) => None,
        Term::Atom(a) => Some(format!("{a}/0")),
        Term::Int(i) => num_key(*i as f64).filter(|_| i.unsigned_abs() <= 1 << 53),
        Term::Str(s) => Some(format!("\"{s}\"")),
        Term::Compound(f, args) => Some(format!("{f}/{}", args.len())),
    }
}

/// First-argument clause selection.
pub fn index_clauses(clauses: &[ClauseCode], arity: usize, enable: bool) -> Selection {
    if !enable || arity == 0 || clauses.len() < 2 || clauses.iter().all(|c| c.key.is_none()) {
        return Selection::Linear;
    }
    let mut cases: Vec<(String, Vec<usize>)> = Vec::new();
    for c in clauses {
        if let Some(k) = &c.key {
            if !cases.iter().any(|(x, _)| x == k) {
                let members = clauses
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.key.as_ref().is_none_or(|dk| dk == k))
                    .map(|(i, _)| i)
                    .collect();
                cases.push((k.clone(), members));
            }
        }
    }
    Selection::FirstArgSwitch {
        cases,
        default: clauses.iter().enumerate().filter(|(_, c)| c.key.is_none()).map(|(i, _)| i).collect(),
        var: (0..clauses.len()).collect(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub index: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { index: true }
    }
}

pub fn compile_predicate(module: &str, pred: &RPred, opts: Options) -> ChunkIR {
    let clauses: Vec<ClauseCode> = pred
        .clauses
        .iter()
        .map(|c| {
            assert_eq!(c.head.len(), pred.functor.arity, "clause head arity mismatch");
            split_chunks(c, &allocate_slots(c))
        })
        .collect();
    let selection = index_clauses(&clauses, pred.functor.arity, opts.index);
    ChunkIR {
        pred: PredKey::new(module, pred.functor.name.clone(), pred.functor.arity),
        clauses,
        selection,
    }
}
