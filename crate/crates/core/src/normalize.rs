//! Clause normalization: control constructs in bodies (`;`, `->`, `\+`,
//! variable goals, `true`) are replaced by calls to auxiliary predicates so
//! every body is a flat conjunction of goals.
//!
//! Auxiliary predicates are named `'<name>/<arity>$d<K>'` with `K` counting
//! per source predicate. Their arguments are the variables the subgoal
//! shares with the rest of its clause, in order of first occurrence in the
//! subgoal. A `!` inside a disjunction branch cuts the enclosing clause: the
//! parent records its cut barrier with `'$get_level'(B)` and the auxiliary
//! clause cuts to it with `'$cut'(B)`.

use crate::error::{Error, Result};
use crate::term::{Functor, Pos, Term, TermAst, VarId, VarNumbering};
use crate::writer::canonical_term;

/// A clause with a flat body. Variables are numbered densely in order of
/// first occurrence (head first).
#[derive(Clone, Debug, PartialEq)]
pub struct NClause {
    pub head: Term,
    pub body: Vec<Term>,
    pub nvars: usize,
    /// Source names by variable index (empty for generated variables).
    pub names: Vec<String>,
    pub pos: Pos,
}

impl NClause {
    pub fn args(&self) -> &[Term] {
        self.head.args()
    }
}

impl std::fmt::Display for NClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&canonical_term(&self.head, &self.names))?;
        for (i, g) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " :- " } else { ", " })?;
            f.write_str(&canonical_term(g, &self.names))?;
        }
        f.write_str(".")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NPred {
    pub functor: Functor,
    pub clauses: Vec<NClause>,
    /// The source predicate an auxiliary was split from.
    pub aux_of: Option<Functor>,
}

pub const GET_LEVEL: &str = "$get_level";
pub const CUT_TO: &str = "$cut";

pub fn aux_name(parent: &Functor, k: usize) -> String {
    format!("{}/{}$d{}", parent.name, parent.arity, k)
}

/// Clause under construction; variable ids index into `names`.
struct Raw {
    head: Term,
    body: Term,
}

struct Normalizer<'a> {
    pred: &'a Functor,
    pos: Pos,
    names: Vec<String>,
    counter: &'a mut usize,
    aux: Vec<NPred>,
}

fn conj(goals: Vec<Term>) -> Term {
    let mut it = goals.into_iter().rev();
    match it.next() {
        None => Term::atom("true"),
        Some(last) => it.fold(last, |acc, g| Term::compound(",", vec![g, acc])),
    }
}

/// Marks a goal whose cuts are local to it; it gets its own auxiliary.
const OPAQUE: &str = "$opaque";

fn is_control(t: &Term) -> bool {
    t.is_functor(";", 2) || t.is_functor("->", 2) || t.is_functor("\\+", 1) || t.is_functor(OPAQUE, 1)
}

fn contains_cut(t: &Term) -> bool {
    match t {
        Term::Atom(a) => a == "!",
        Term::Compound(f, args) if matches!(f.as_str(), "," | ";" | "->") && args.len() == 2 => {
            args.iter().any(contains_cut)
        }
        _ => false,
    }
}

/// Whether a `!` in `t` would cut the clause `t` appears in.
fn has_transparent_cut(t: &Term) -> bool {
    match t {
        Term::Atom(a) => a == "!",
        Term::Compound(f, args) if args.len() == 2 => match f.as_str() {
            "," | ";" => args.iter().any(has_transparent_cut),
            "->" => has_transparent_cut(&args[1]),
            _ => false,
        },
        _ => false,
    }
}

fn replace_transparent_cuts(t: &Term, level: VarId) -> Term {
    match t {
        Term::Atom(a) if a == "!" => Term::compound(CUT_TO, vec![Term::Var(level)]),
        Term::Compound(f, args) if args.len() == 2 => match f.as_str() {
            "," | ";" => Term::compound(
                f.clone(),
                args.iter().map(|a| replace_transparent_cuts(a, level)).collect(),
            ),
            "->" => Term::compound("->", vec![args[0].clone(), replace_transparent_cuts(&args[1], level)]),
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}

impl Normalizer<'_> {
    fn fresh(&mut self) -> VarId {
        self.names.push(String::new());
        self.names.len() - 1
    }

    fn flatten(&self, t: &Term, out: &mut Vec<Term>) -> Result<()> {
        match t {
            Term::Var(_) => out.push(Term::compound("call", vec![t.clone()])),
            Term::Atom(a) if a == "true" => {}
            Term::Compound(f, args) if f == "," && args.len() == 2 => {
                self.flatten(&args[0], out)?;
                self.flatten(&args[1], out)?;
            }
            Term::Atom(_) | Term::Compound(..) => out.push(t.clone()),
            _ => {
                return Err(Error::module(
                    self.pos,
                    format!("goal `{}` is not callable", canonical_term(t, &self.names)),
                ))
            }
        }
        Ok(())
    }

    /// Normalizes one clause, returning it with a flat body. Auxiliary
    /// predicates created on the way are pushed to `self.aux`.
    fn clause(&mut self, raw: Raw) -> Result<(Term, Vec<Term>)> {
        let mut goals = Vec::new();
        self.flatten(&raw.body, &mut goals)?;

        if goals.iter().any(|g| is_control(g) && has_transparent_cut(g)) {
            let level = self.fresh();
            for g in goals.iter_mut() {
                if is_control(g) {
                    *g = replace_transparent_cuts(g, level);
                }
            }
            goals.insert(0, Term::compound(GET_LEVEL, vec![Term::Var(level)]));
        }

        let mut out = Vec::with_capacity(goals.len());
        for i in 0..goals.len() {
            if !is_control(&goals[i]) {
                out.push(goals[i].clone());
                continue;
            }
            let mut context = raw.head.vars();
            for (j, g) in goals.iter().enumerate() {
                if j != i {
                    g.collect_vars(&mut context);
                }
            }
            let shared: Vec<Term> = goals[i]
                .vars()
                .into_iter()
                .filter(|v| context.contains(v))
                .map(Term::Var)
                .collect();
            let branches = self.branches(&goals[i]);
            out.push(self.make_aux(shared, branches)?);
        }
        Ok((raw.head, out))
    }

    /// Splits a control construct into the bodies of its auxiliary clauses.
    fn branches(&mut self, g: &Term) -> Vec<Term> {
        if g.is_functor(OPAQUE, 1) {
            return vec![g.args()[0].clone()];
        }
        if g.is_functor("\\+", 1) {
            let a = self.opaque(&g.args()[0]);
            return vec![conj(vec![a, Term::atom("!"), Term::atom("fail")]), Term::atom("true")];
        }
        if g.is_functor("->", 2) {
            return vec![self.if_then(g), Term::atom("fail")];
        }
        let mut out = Vec::new();
        let mut cur = g;
        while cur.is_functor(";", 2) {
            out.push(self.alternative(&cur.args()[0]));
            cur = &cur.args()[1];
        }
        out.push(self.alternative(cur));
        out
    }

    fn alternative(&mut self, t: &Term) -> Term {
        if t.is_functor("->", 2) {
            self.if_then(t)
        } else {
            t.clone()
        }
    }

    fn if_then(&mut self, t: &Term) -> Term {
        let c = self.opaque(&t.args()[0]);
        conj(vec![c, Term::atom("!"), t.args()[1].clone()])
    }

    /// A goal in a position where `!` is local to the goal itself: wrapped
    /// in its own single-clause auxiliary when it contains a cut.
    fn opaque(&mut self, t: &Term) -> Term {
        if !contains_cut(t) {
            return t.clone();
        }
        Term::compound(OPAQUE, vec![t.clone()])
    }

    fn make_aux(&mut self, shared: Vec<Term>, branches: Vec<Term>) -> Result<Term> {
        let name = aux_name(self.pred, *self.counter);
        *self.counter += 1;
        let functor = Functor::new(name.clone(), shared.len());
        let head = Term::compound(name, shared);
        let slot = self.aux.len();
        self.aux.push(NPred {
            functor,
            clauses: Vec::new(),
            aux_of: Some(self.pred.clone()),
        });
        let mut clauses = Vec::new();
        for b in branches {
            let (h, body) = self.clause(Raw {
                head: head.clone(),
                body: b,
            })?;
            clauses.push(self.finish(h, body));
        }
        self.aux[slot].clauses = clauses;
        Ok(head)
    }

    /// Renumbers a finished clause densely.
    fn finish(&self, head: Term, body: Vec<Term>) -> NClause {
        let mut order = head.vars();
        for g in &body {
            g.collect_vars(&mut order);
        }
        let mut map = vec![usize::MAX; self.names.len()];
        for (i, v) in order.iter().enumerate() {
            map[*v] = i;
        }
        fn rename(t: &Term, map: &[usize]) -> Term {
            match t {
                Term::Var(v) => Term::Var(map[*v]),
                Term::Compound(f, args) => Term::Compound(f.clone(), args.iter().map(|a| rename(a, map)).collect()),
                _ => t.clone(),
            }
        }
        NClause {
            head: rename(&head, &map),
            body: body.iter().map(|g| rename(g, &map)).collect(),
            nvars: order.len(),
            names: order.iter().map(|v| self.names[*v].clone()).collect(),
            pos: self.pos,
        }
    }
}

/// A source clause as handed to the normalizer.
#[derive(Clone, Debug)]
pub struct ClauseSrc<'a> {
    pub head: &'a TermAst,
    pub body: &'a TermAst,
    pub pos: Pos,
}

/// Normalizes all clauses of one predicate. The result holds the predicate
/// itself followed by its auxiliaries in creation order.
pub fn normalize_predicate(pred: &Functor, clauses: &[ClauseSrc<'_>]) -> Result<Vec<NPred>> {
    let mut counter = 0;
    let mut main = NPred {
        functor: pred.clone(),
        clauses: Vec::new(),
        aux_of: None,
    };
    let mut aux = Vec::new();
    for c in clauses {
        let mut numbering = VarNumbering::new();
        let head = numbering.convert(c.head);
        let body = numbering.convert(c.body);
        let mut n = Normalizer {
            pred,
            pos: c.pos,
            names: numbering.names().to_vec(),
            counter: &mut counter,
            aux: Vec::new(),
        };
        let (h, b) = n.clause(Raw { head, body })?;
        main.clauses.push(n.finish(h, b));
        aux.append(&mut n.aux);
    }
    let mut out = vec![main];
    out.extend(aux);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::read_module;

    fn norm(src: &str) -> Vec<String> {
        let (m, _) = read_module(src).unwrap();
        let f = m.clauses[0].functor();
        let cs: Vec<ClauseSrc> = m
            .clauses
            .iter()
            .map(|c| ClauseSrc {
                head: &c.head,
                body: &c.body,
                pos: c.pos,
            })
            .collect();
        normalize_predicate(&f, &cs)
            .unwrap()
            .iter()
            .flat_map(|p| p.clauses.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect()
    }

    #[test]
    fn flat_body_is_unchanged() {
        assert_eq!(norm("p(X) :- q(X), true, r.\n"), vec!["p(X) :- q(X), r."]);
    }

    #[test]
    fn disjunction_passes_shared_variables() {
        assert_eq!(
            norm("p(X, Y) :- (q(X, Z) ; r(Z, W)), s(Y).\n"),
            vec!["p(X,Y) :- 'p/2$d0'(X), s(Y).", "'p/2$d0'(X) :- q(X,Z).", "'p/2$d0'(X) :- r(Z,W)."]
        );
    }

    #[test]
    fn if_then_else_chain() {
        assert_eq!(
            norm("p(X) :- ( X > 0 -> q ; X < 0 -> r ; s ).\n"),
            vec![
                "p(X) :- 'p/1$d0'(X).",
                "'p/1$d0'(X) :- >(X,0), !, q.",
                "'p/1$d0'(X) :- <(X,0), !, r.",
                "'p/1$d0'(X) :- s."
            ]
        );
    }

    #[test]
    fn bare_if_then_gets_failing_clause() {
        assert_eq!(
            norm("p(X) :- ( X = a -> true ).\n"),
            vec!["p(X) :- 'p/1$d0'(X).", "'p/1$d0'(X) :- =(X,a), !.", "'p/1$d0'(X) :- fail."]
        );
    }

    #[test]
    fn negation() {
        assert_eq!(
            norm("p(X) :- \\+ q(X).\n"),
            vec!["p(X) :- 'p/1$d0'(X).", "'p/1$d0'(X) :- q(X), !, fail.", "'p/1$d0'(X)."]
        );
    }

    #[test]
    fn transparent_cut_in_disjunction() {
        assert_eq!(
            norm("p(X) :- ( X = a, ! ; true ), q.\n"),
            vec![
                "p(X) :- '$get_level'(_1), 'p/1$d0'(X,_1), q.",
                "'p/1$d0'(X,_1) :- =(X,a), '$cut'(_1).",
                "'p/1$d0'(X,_1)."
            ]
        );
    }

    #[test]
    fn variable_goal_becomes_call() {
        assert_eq!(norm("p(G) :- G.\n"), vec!["p(G) :- call(G)."]);
    }

    #[test]
    fn cut_in_condition_is_local() {
        assert_eq!(
            norm("p :- ( (q, !) -> r ; s ).\n"),
            vec![
                "p :- 'p/0$d0'.",
                "'p/0$d0' :- 'p/0$d1', !, r.",
                "'p/0$d0' :- s.",
                "'p/0$d1' :- q, !."
            ]
        );
    }

    #[test]
    fn counter_is_per_predicate_across_clauses() {
        let out = norm("p(1) :- (a ; b).\np(2) :- (c ; d).\n");
        assert!(out.contains(&"p(2) :- 'p/1$d1'.".to_string()), "{out:?}");
    }

    #[test]
    fn numbers_are_not_goals() {
        let (m, _) = read_module("p :- q, 3.\n").unwrap();
        let c = &m.clauses[0];
        let r = normalize_predicate(
            &c.functor(),
            &[ClauseSrc {
                head: &c.head,
                body: &c.body,
                pos: c.pos,
            }],
        );
        assert!(r.is_err());
    }
}
