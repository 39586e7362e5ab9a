//! Reference interpreter: a direct SLD resolution engine over source
//! clauses, with control constructs handled natively. It shares nothing
//! with the compiler besides the reader and the term store, and serves as
//! the oracle for program transformations.

use std::collections::HashMap;
use std::rc::Rc;

use crate::builtins::{is_builtin_module, library_source};
use crate::normalize::{NPred, CUT_TO, GET_LEVEL};
use crate::prims::{add_args, call_det};
use crate::reader::{read_module, ModuleAst};
use crate::store::{answer_text, RunError, RunResult, Store, Value};
use crate::term::{Term, TermAst, VarNumbering};

#[derive(Clone, Debug)]
struct IClause {
    head: Term,
    body: Term,
}

#[derive(Default, Debug)]
struct IModule {
    preds: HashMap<(String, usize), Rc<Vec<IClause>>>,
    /// (module, imported functors or `None` for all).
    imports: Vec<(String, Option<Vec<(String, usize)>>)>,
    exports: Option<Vec<(String, usize)>>,
}

/// A loaded program: clauses grouped by module.
#[derive(Default, Debug)]
pub struct Program {
    modules: HashMap<String, IModule>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a module as read from source.
    pub fn add_module(&mut self, m: &ModuleAst) {
        let entry = self.modules.entry(m.name.clone()).or_default();
        entry.exports = m
            .exports
            .as_ref()
            .map(|e| e.iter().map(|f| (f.name.clone(), f.arity)).collect());
        for i in &m.imports {
            let only = match &i.preds {
                crate::reader::ImportList::All => None,
                crate::reader::ImportList::Only(fs) => Some(fs.iter().map(|f| (f.name.clone(), f.arity)).collect()),
            };
            entry.imports.push((i.module.clone(), only));
        }
        for c in &m.clauses {
            let mut n = VarNumbering::new();
            let head = n.convert(&c.head);
            let body = n.convert(&c.body);
            let key = c.functor();
            let list = entry.preds.entry((key.name, key.arity)).or_default();
            Rc::make_mut(list).push(IClause { head, body });
        }
    }

    /// Reads and loads a module from source text; library modules it
    /// imports are loaded as well.
    pub fn load_source(&mut self, src: &str) -> crate::Result<String> {
        let (m, _) = read_module(src)?;
        for i in &m.imports {
            if !self.modules.contains_key(&i.module) {
                if let Some(lib) = library_source(&i.module) {
                    self.load_source(lib)?;
                }
            }
        }
        self.add_module(&m);
        Ok(m.name)
    }

    /// Loads normalized predicates into `module`, replacing any clauses of
    /// the same predicates.
    pub fn add_normalized(&mut self, module: &str, preds: &[NPred]) {
        let entry = self.modules.entry(module.to_string()).or_default();
        for p in preds {
            let clauses = p
                .clauses
                .iter()
                .map(|c| IClause {
                    head: c.head.clone(),
                    body: conj(&c.body),
                })
                .collect();
            entry
                .preds
                .insert((p.functor.name.clone(), p.functor.arity), Rc::new(clauses));
        }
    }

    /// Declares `name/arity` in `module` with no clauses.
    pub fn declare(&mut self, module: &str, name: &str, arity: usize) {
        let entry = self.modules.entry(module.to_string()).or_default();
        entry.preds.entry((name.to_string(), arity)).or_default();
    }

    fn exports(&self, module: &str, key: &(String, usize)) -> bool {
        match self.modules.get(module) {
            Some(m) => match &m.exports {
                Some(e) => e.contains(key),
                None => m.preds.contains_key(key),
            },
            None => false,
        }
    }

    /// Finds the clauses `name/arity` resolves to from `module`, with the
    /// module that defines them.
    fn lookup(&self, module: &str, name: &str, arity: usize) -> Option<(Rc<str>, Rc<Vec<IClause>>)> {
        let key = (name.to_string(), arity);
        let m = self.modules.get(module)?;
        if let Some(cs) = m.preds.get(&key) {
            return Some((Rc::from(module), cs.clone()));
        }
        for (im, only) in &m.imports {
            let listed = only.as_ref().is_none_or(|o| o.contains(&key));
            if listed && self.exports(im, &key) {
                return Some((Rc::from(im.as_str()), self.modules[im].preds.get(&key)?.clone()));
            }
        }
        None
    }
}

fn conj(goals: &[Term]) -> Term {
    let mut it = goals.iter().rev();
    match it.next() {
        None => Term::atom("true"),
        Some(last) => it.fold(last.clone(), |acc, g| Term::compound(",", vec![g.clone(), acc])),
    }
}

/// Pending goals, shared between choicepoints.
type Cont = Option<Rc<Node>>;

#[derive(Debug)]
struct Node {
    item: Item,
    next: Cont,
}

#[derive(Debug, Clone)]
enum Item {
    Goal {
        goal: Value,
        module: Rc<str>,
        /// Choice stack height to cut back to.
        cut: usize,
    },
    CutTo(usize),
}

fn push(item: Item, next: Cont) -> Cont {
    Some(Rc::new(Node { item, next }))
}

#[derive(Debug)]
enum Alt {
    Cont(Cont),
    Clauses {
        goal: Value,
        module: Rc<str>,
        clauses: Rc<Vec<IClause>>,
        next: usize,
        cont: Cont,
    },
    Between {
        var: Value,
        next: f64,
        hi: f64,
        cont: Cont,
    },
}

#[derive(Debug)]
struct Choice {
    mark: usize,
    alt: Alt,
}

/// Solver limits.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_answers: usize,
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_answers: 10_000,
            max_steps: 50_000_000,
        }
    }
}

/// Outcome of a query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// One line per answer: `X = v, Y = w` (empty for ground queries).
    pub answers: Vec<String>,
    /// Text written by the program.
    pub output: String,
    /// `halt/0` was called.
    pub halted: bool,
}

pub struct Interp<'p> {
    program: &'p Program,
    store: Store,
    choices: Vec<Choice>,
    steps: u64,
    limits: Limits,
}

enum Step {
    Continue(Cont),
    Fail,
    Halt,
}

impl<'p> Interp<'p> {
    pub fn new(program: &'p Program, limits: Limits) -> Self {
        Interp {
            program,
            store: Store::new(),
            choices: Vec::new(),
            steps: 0,
            limits,
        }
    }

    /// Solves `query` in `module`, collecting every answer.
    pub fn solve(&mut self, module: &str, query: &TermAst) -> RunResult<Outcome> {
        let mut names = VarNumbering::new();
        let t = names.convert(query);
        let mut vars = Vec::new();
        let goal = self.store.instantiate(&t, &mut vars);
        let shown: Vec<(String, Value)> = names
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.starts_with('_'))
            .filter_map(|(i, n)| vars.get(i).cloned().flatten().map(|v| (n.clone(), v)))
            .collect();

        let mut answers = Vec::new();
        let mut halted = false;
        let start = push(
            Item::Goal {
                goal,
                module: Rc::from(module),
                cut: 0,
            },
            None,
        );
        let mut cont = start;
        'outer: loop {
            match self.run(cont)? {
                Some(true) => {
                    answers.push(answer_text(&self.store, &shown));
                    if answers.len() >= self.limits.max_answers {
                        break;
                    }
                }
                Some(false) => {
                    halted = true;
                    break;
                }
                None => break,
            }
            match self.backtrack()? {
                Some(c) => cont = c,
                None => break 'outer,
            }
            // `run` expects to be handed a continuation that still needs
            // executing; backtrack has already produced it.
        }
        Ok(Outcome {
            answers,
            output: std::mem::take(&mut self.store.out),
            halted,
        })
    }

    /// Runs until a solution (`Some(true)`), `halt` (`Some(false)`) or
    /// exhaustion (`None`).
    fn run(&mut self, mut cont: Cont) -> RunResult<Option<bool>> {
        loop {
            let Some(node) = cont else { return Ok(Some(true)) };
            self.steps += 1;
            if self.steps > self.limits.max_steps {
                return Err(RunError("step limit exceeded".into()));
            }
            let next = node.next.clone();
            let step = match &node.item {
                Item::CutTo(h) => {
                    self.choices.truncate(*h);
                    Step::Continue(next)
                }
                Item::Goal { goal, module, cut } => self.step(goal, module, *cut, next)?,
            };
            cont = match step {
                Step::Continue(c) => c,
                Step::Halt => return Ok(Some(false)),
                Step::Fail => match self.backtrack()? {
                    Some(c) => c,
                    None => return Ok(None),
                },
            };
        }
    }

    fn backtrack(&mut self) -> RunResult<Option<Cont>> {
        loop {
            let height = self.choices.len().saturating_sub(1);
            let Some(top) = self.choices.last_mut() else { return Ok(None) };
            let mark = top.mark;
            self.store.undo(mark);
            match &mut top.alt {
                Alt::Cont(c) => {
                    let c = c.clone();
                    self.choices.pop();
                    return Ok(Some(c));
                }
                Alt::Between { var, next, hi, cont } => {
                    let v = *next;
                    let (var, cont) = (var.clone(), cont.clone());
                    if v >= *hi {
                        self.choices.pop();
                    } else {
                        *next += 1.0;
                    }
                    if self.store.unify(&var, &Value::Num(v)) {
                        return Ok(Some(cont));
                    }
                }
                Alt::Clauses {
                    goal,
                    module,
                    clauses,
                    next,
                    cont,
                } => {
                    let i = *next;
                    let (goal, module, clauses, cont) = (goal.clone(), module.clone(), clauses.clone(), cont.clone());
                    if i + 1 >= clauses.len() {
                        self.choices.pop();
                    } else if let Some(Choice {
                        alt: Alt::Clauses { next, .. },
                        ..
                    }) = self.choices.last_mut()
                    {
                        *next = i + 1;
                    }
                    let Some(c) = clauses.get(i) else { continue };
                    let mut vars = Vec::new();
                    let head = self.store.instantiate(&c.head, &mut vars);
                    if self.store.unify(&head, &goal) {
                        let body = self.store.instantiate(&c.body, &mut vars);
                        return Ok(Some(push(
                            Item::Goal {
                                goal: body,
                                module,
                                cut: height,
                            },
                            cont,
                        )));
                    }
                }
            }
        }
    }

    fn step(&mut self, goal: &Value, module: &Rc<str>, cut: usize, next: Cont) -> RunResult<Step> {
        let goal = self.store.deref(goal);
        let (name, arity) = match goal.functor() {
            Some((n, a)) => (n.to_string(), a),
            None => {
                return Err(match goal {
                    Value::Var(_) => RunError("instantiation error: unbound goal".into()),
                    _ => RunError(format!("type error: callable expected, found {}", self.store.show(&goal, true))),
                })
            }
        };
        let args: Vec<Value> = goal.args().to_vec();
        let g = |goal: Value, cut: usize| Item::Goal {
            goal,
            module: module.clone(),
            cut,
        };
        match (name.as_str(), arity) {
            ("true", 0) => return Ok(Step::Continue(next)),
            (",", 2) => {
                let rest = push(g(args[1].clone(), cut), next);
                return Ok(Step::Continue(push(g(args[0].clone(), cut), rest)));
            }
            ("!", 0) => {
                self.choices.truncate(cut);
                return Ok(Step::Continue(next));
            }
            (";", 2) => {
                let lhs = self.store.deref(&args[0]);
                if lhs.functor() == Some(("->", 2)) {
                    let (c, t) = (lhs.args()[0].clone(), lhs.args()[1].clone());
                    return Ok(self.if_then_else(c, t, Some(args[1].clone()), module, cut, next));
                }
                self.choices.push(Choice {
                    mark: self.store.mark(),
                    alt: Alt::Cont(push(g(args[1].clone(), cut), next.clone())),
                });
                return Ok(Step::Continue(push(g(args[0].clone(), cut), next)));
            }
            ("->", 2) => return Ok(self.if_then_else(args[0].clone(), args[1].clone(), None, module, cut, next)),
            ("\\+", 1) => {
                return Ok(self.if_then_else(
                    args[0].clone(),
                    Value::atom("fail"),
                    Some(Value::atom("true")),
                    module,
                    cut,
                    next,
                ))
            }
            (":", 2) => {
                let m = match self.store.deref(&args[0]) {
                    Value::Atom(a) => a,
                    _ => return Err(RunError("type error: module name expected".into())),
                };
                return Ok(Step::Continue(push(
                    Item::Goal {
                        goal: args[1].clone(),
                        module: m,
                        cut,
                    },
                    next,
                )));
            }
            ("call", n) if n >= 1 => {
                let target = add_args(&self.store, &args[0], &args[1..])?;
                let h = self.choices.len();
                return Ok(Step::Continue(push(g(target, h), next)));
            }
            ("halt", 0) => return Ok(Step::Halt),
            _ if name == GET_LEVEL && arity == 1 => {
                let ok = self.store.unify(&args[0], &Value::Num(cut as f64));
                return Ok(if ok { Step::Continue(next) } else { Step::Fail });
            }
            _ if name == CUT_TO && arity == 1 => {
                match self.store.deref(&args[0]) {
                    Value::Num(h) => self.choices.truncate(h as usize),
                    _ => return Err(RunError("bad cut level".into())),
                }
                return Ok(Step::Continue(next));
            }
            _ => {}
        }

        if let Some((owner, clauses)) = self.program.lookup(module, &name, arity) {
            self.choices.push(Choice {
                mark: self.store.mark(),
                alt: Alt::Clauses {
                    goal,
                    module: owner,
                    clauses,
                    next: 0,
                    cont: next,
                },
            });
            return Ok(match self.backtrack()? {
                Some(c) => Step::Continue(c),
                None => Step::Fail,
            });
        }
        if (name.as_str(), arity) == ("between", 3) {
            let lo = self.store.eval(&args[0])?;
            let hi = self.store.eval(&args[1])?;
            if let Value::Num(x) = self.store.deref(&args[2]) {
                return Ok(if lo <= x && x <= hi { Step::Continue(next) } else { Step::Fail });
            }
            if lo > hi {
                return Ok(Step::Fail);
            }
            self.choices.push(Choice {
                mark: self.store.mark(),
                alt: Alt::Between {
                    var: args[2].clone(),
                    next: lo,
                    hi,
                    cont: next,
                },
            });
            return Ok(match self.backtrack()? {
                Some(c) => Step::Continue(c),
                None => Step::Fail,
            });
        }
        if let Some(r) = call_det(&mut self.store, &name, &args) {
            return Ok(if r? { Step::Continue(next) } else { Step::Fail });
        }
        if &**module == "user" || self.program.modules.contains_key(&*module.to_string()) || is_builtin_module(module) {
            // Unknown predicate: fails, as compiled code does.
            return Ok(Step::Fail);
        }
        Err(RunError(format!("unknown module `{module}`")))
    }

    fn if_then_else(&mut self, c: Value, t: Value, e: Option<Value>, module: &Rc<str>, cut: usize, next: Cont) -> Step {
        let h = self.choices.len();
        let e = e.unwrap_or_else(|| Value::atom("fail"));
        self.choices.push(Choice {
            mark: self.store.mark(),
            alt: Alt::Cont(push(
                Item::Goal {
                    goal: e,
                    module: module.clone(),
                    cut,
                },
                next.clone(),
            )),
        });
        let then = push(
            Item::Goal {
                goal: t,
                module: module.clone(),
                cut,
            },
            next,
        );
        let after_cond = push(Item::CutTo(h), then);
        Step::Continue(push(
            Item::Goal {
                goal: c,
                module: module.clone(),
                cut: h + 1,
            },
            after_cond,
        ))
    }
}

/// Convenience: loads `sources`, runs `query` in the first module's
/// context and returns the outcome.
pub fn run_query(sources: &[&str], query: &str) -> Result<Outcome, String> {
    let mut p = Program::new();
    let mut first = None;
    for s in sources {
        let name = p.load_source(s).map_err(|e| e.to_string())?;
        first.get_or_insert(name);
    }
    let module = first.unwrap_or_else(|| "user".to_string());
    let q = crate::parser::parse_str(query, &crate::ops::OpTable::with_assertions()).map_err(|e| e.to_string())?;
    Interp::new(&p, Limits::default())
        .solve(&module, &q)
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn answers(src: &str, q: &str) -> Vec<String> {
        run_query(&[src], q).unwrap().answers
    }

    #[test]
    fn facts_and_backtracking() {
        let src = "p(1). p(2). p(3).\n";
        assert_eq!(answers(src, "p(X)"), vec!["X = 1", "X = 2", "X = 3"]);
    }

    #[test]
    fn cut_prunes_clauses_and_goals() {
        let src = "p(1). p(2). q(X) :- p(X), !. r(X) :- p(X), X > 1, !. r(0).\n";
        assert_eq!(answers(src, "q(X)"), vec!["X = 1"]);
        assert_eq!(answers(src, "r(X)"), vec!["X = 2"]);
    }

    #[test]
    fn control_constructs() {
        let src = "p(1). p(2). p(3).\n";
        assert_eq!(answers(src, "(p(X), X > 1 -> Y = yes ; Y = no)"), vec!["X = 2, Y = yes"]);
        assert_eq!(answers(src, "(p(4) -> Y = yes ; Y = no)"), vec!["Y = no"]);
        assert_eq!(answers(src, "\\+ p(4)"), vec![""]);
        assert!(answers(src, "\\+ p(1)").is_empty());
        assert_eq!(answers(src, "(X = a ; X = b)"), vec!["X = a", "X = b"]);
        assert_eq!(answers(src, "call((p(X), !))"), vec!["X = 1"]);
    }

    #[test]
    fn cut_inside_disjunction_is_transparent() {
        let src = "t(X) :- (p(X), ! ; X = z). t(w). p(1). p(2).\n";
        assert_eq!(answers(src, "t(X)"), vec!["X = 1"]);
    }

    #[test]
    fn between_and_arithmetic() {
        assert_eq!(answers("", "between(1, 3, X), Y is X * X"), vec!["X = 1, Y = 1", "X = 2, Y = 4", "X = 3, Y = 9"]);
    }

    #[test]
    fn lists_library() {
        let src = ":- module(m, [r/1]).\n:- use_module(library(lists)).\nr(L) :- append(X, [c], [a,b,c]), reverse(X, L).\n";
        assert_eq!(answers(src, "r(L)"), vec!["L = [b,a]"]);
        assert_eq!(answers(src, "member(X, [1,2])"), vec!["X = 1", "X = 2"]);
    }

    #[test]
    fn output_and_unknown_predicates() {
        let out = run_query(&["p :- write(f(x, \"s\")), nl.\n"], "p").unwrap();
        assert_eq!(out.output, "f(x,s)\n");
        assert!(answers("q.\n", "nope(1)").is_empty());
    }

    #[test]
    fn level_cut_pair() {
        let src = "t(X) :- '$get_level'(B), a(X, B). t(w).\na(X, B) :- X = 1, '$cut'(B).\na(2, _).\n";
        assert_eq!(answers(src, "t(X)"), vec!["X = 1"]);
    }

    #[test]
    fn step_limit() {
        let p = {
            let mut p = Program::new();
            p.load_source("loop :- loop.\n").unwrap();
            p
        };
        let q = crate::parser::parse_str("loop", &crate::ops::OpTable::iso()).unwrap();
        let r = Interp::new(&p, Limits { max_answers: 1, max_steps: 1000 }).solve("user", &q);
        assert!(r.is_err());
    }
}
