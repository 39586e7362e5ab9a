//! JavaScript emission.
//!
//! Each module becomes one `$r.def(name, function(m) {...})` closure. Inside
//! it every predicate and every functor the module builds gets a
//! constructor (fields `a0..`) and a nested symbol whose `mlink` installs
//! `name`, `arity` and, for predicates, `execute`. Exported predicates are
//! entered in `m.exports` while the closure runs. `m.link` captures the
//! runtime entry points and imported constructors, then builds hoisted
//! constants.
//!
//! Names the emitted code expects from the runtime:
//!
//! * symbols `$rt` (exports: `fail`, `call`, `unify`, `key`, `eval`,
//!   `level`, `cut_to`, `unbox_num`, `unbox_str`, `unbox_atom`,
//!   `unbox_obj`, `atom`), `t_var`, `var_base`, `t_num`, `t_string`,
//!   `t_struct`, `t_foreign`, and the builtin modules;
//! * worker fields `goal`, `cont`, `choice`, `frame`, `ctx` and methods
//!   `push_frame(n, b)` (returns the slot array), `pop_frame()`,
//!   `push_choice(clauses, next)`, `cut(choice)`.
//!
//! A continuation is a function of the worker returning the next
//! continuation or `$fail`. Clause functions take `(w, b)` where `b` is
//! the choicepoint current when the predicate was entered.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::codegen::{ArgPat, Call, CallTarget, ChunkIR, ClauseCode, Expr, Selection, Slot, Step};
use crate::builtins::InlineOp;
use crate::error::{Error, Result};
use crate::ffi::{emit_foreign_stub, foreign_params, ForeignClassDecl, ForeignDecl, StubNames};
use crate::resolve::ResolvedModule;
use crate::term::{Const, Functor, PredKey};

/// Table key for `name/arity`.
pub fn mangle(name: &str, arity: usize) -> String {
    format!("{name}/{arity}")
}

/// JavaScript string literal.
pub fn js_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{2028}' || c == '\u{2029}' || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn js_num(x: f64) -> String {
    if x == 0.0 && x.is_sign_negative() {
        "-0".into()
    } else {
        format!("{x}")
    }
}

/// Identifier stem for a name: ASCII alphanumerics kept, everything else
/// replaced by `_`.
fn sanitize(name: &str) -> String {
    match name {
        "[]" => return "nil".into(),
        "." => return "cons".into(),
        "{}" => return "curly".into(),
        _ => {}
    }
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
        s.insert(0, '_');
    }
    s
}

/// Local identifier for the `k`-th symbol of a module.
pub fn local_ident(name: &str, arity: usize, k: usize) -> String {
    format!("{}_{arity}_{k}", sanitize(name))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmittedModule {
    pub module_name: String,
    /// File name for the module, `<name>.js` with unsafe characters
    /// replaced.
    pub file: String,
    pub source: String,
    pub deps: Vec<String>,
}

pub fn file_name(module: &str) -> String {
    let s: String = module
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect();
    format!("{s}.js")
}

/// Runtime placeholders in declaration order, with their link-time
/// initializer.
const RUNTIME: &[(&str, &str)] = &[
    ("$rt", "$r.query(\"$rt\").prepare().exports"),
    ("$fail", "$rt.fail"),
    ("$call", "$rt.call"),
    ("$unify", "$rt.unify"),
    ("$key", "$rt.key"),
    ("$eval", "$rt.eval"),
    ("$var", "$r.query(\"t_var\").prepare().ctor"),
    ("$var_base", "$r.query(\"var_base\").prepare().ctor"),
    ("$num", "$r.query(\"t_num\").prepare().ctor"),
    ("$str", "$r.query(\"t_string\").prepare().ctor"),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Import {
    /// Exported constructor of a predicate of another module.
    Pred(PredKey),
    /// Wrapper constructor of a foreign class.
    Class(String),
}

/// State of one `$r.def` closure being emitted.
struct Closure<'a> {
    name: &'a str,
    counter: usize,
    /// Local constructor per functor.
    ctors: HashMap<Functor, String>,
    /// Functors defined in this closure, in order, with whether they carry
    /// an `execute` method.
    symbols: Vec<(Functor, Option<String>)>,
    rt: BTreeSet<&'static str>,
    imports: Vec<(Import, String)>,
    consts: Vec<(String, String)>,
    const_ids: HashMap<String, String>,
    /// Functors whose symbols must be prepared before constants are built.
    const_functors: Vec<Functor>,
    /// Local class constructor, for a foreign class closure.
    own_class: Option<(String, String)>,
    body: String,
}

impl<'a> Closure<'a> {
    fn new(name: &'a str) -> Self {
        Closure {
            name,
            counter: 0,
            ctors: HashMap::new(),
            symbols: Vec::new(),
            rt: BTreeSet::new(),
            imports: Vec::new(),
            consts: Vec::new(),
            const_ids: HashMap::new(),
            const_functors: Vec::new(),
            own_class: None,
            body: String::new(),
        }
    }

    fn use_rt(&mut self, n: &'static str) -> &'static str {
        self.rt.insert(n);
        if n != "$rt" && RUNTIME.iter().any(|(k, v)| *k == n && v.starts_with("$rt.")) {
            self.rt.insert("$rt");
        }
        n
    }

    fn fresh_ident(&mut self, name: &str, arity: usize) -> String {
        let id = local_ident(name, arity, self.counter);
        self.counter += 1;
        id
    }

    /// Declares a local symbol (predicate or functor).
    fn declare(&mut self, f: &Functor, exec: Option<String>) -> String {
        if let Some(id) = self.ctors.get(f) {
            return id.clone();
        }
        let id = self.fresh_ident(&f.name, f.arity);
        self.ctors.insert(f.clone(), id.clone());
        self.symbols.push((f.clone(), exec));
        id
    }

    fn ctor(&mut self, f: &Functor) -> String {
        match self.ctors.get(f) {
            Some(id) => id.clone(),
            None => self.declare(f, None),
        }
    }

    fn import(&mut self, i: Import) -> String {
        if let Some((_, v)) = self.imports.iter().find(|(x, _)| *x == i) {
            return v.clone();
        }
        let v = format!("u{}", self.imports.len());
        self.imports.push((i, v.clone()));
        v
    }

    fn class_ctor(&mut self, class: &str) -> String {
        if let Some((c, id)) = &self.own_class {
            if c == class {
                return id.clone();
            }
        }
        self.import(Import::Class(class.to_string()))
    }

    fn constant(&mut self, build: String) -> String {
        if let Some(k) = self.const_ids.get(&build) {
            return k.clone();
        }
        let k = format!("k{}", self.consts.len());
        self.const_ids.insert(build.clone(), k.clone());
        self.consts.push((k.clone(), build));
        k
    }

    fn const_build(&mut self, c: &Const) -> String {
        match c {
            Const::Atom(a) => {
                let f = Functor::new(a.clone(), 0);
                let ctor = self.ctor(&f);
                if !self.const_functors.contains(&f) {
                    self.const_functors.push(f);
                }
                format!("new {ctor}()")
            }
            Const::Int(i) => format!("new {}({})", self.use_rt("$num"), js_num(*i as f64)),
            Const::Float(x) => format!("new {}({})", self.use_rt("$num"), js_num(*x)),
            Const::Str(s) => format!("new {}({})", self.use_rt("$str"), js_str(s)),
        }
    }

    fn const_ref(&mut self, c: &Const) -> String {
        let b = self.const_build(c);
        self.constant(b)
    }

    /// Constructor expression of a ground term, for hoisting.
    fn ground_build(&mut self, e: &Expr) -> String {
        match e {
            Expr::Const(c) => self.const_build(c),
            Expr::Struct(f, args) => {
                let ctor = self.ctor(f);
                if !self.const_functors.contains(f) {
                    self.const_functors.push(f.clone());
                }
                let args: Vec<String> = args.iter().map(|a| self.ground_build(a)).collect();
                format!("new {ctor}({})", args.join(", "))
            }
            _ => unreachable!("not ground"),
        }
    }
}

fn is_ground(e: &Expr) -> bool {
    match e {
        Expr::Const(_) => true,
        Expr::Struct(_, args) => args.iter().all(is_ground),
        _ => false,
    }
}

/// Local flags for one emitted function.
#[derive(Default)]
struct FnCtx {
    uses_g: bool,
    uses_x: bool,
    temps: BTreeSet<usize>,
    chunk: usize,
}

impl FnCtx {
    fn slot(&mut self, s: Slot) -> String {
        match s {
            Slot::Temp(i) => {
                self.temps.insert(i);
                format!("t{i}")
            }
            Slot::Y(i) => format!("y[{i}]"),
            Slot::Arg(i) => {
                self.uses_g = true;
                format!("g.a{i}")
            }
        }
    }

    fn header(&self, frame: &str) -> String {
        let mut out = String::new();
        if self.uses_g {
            out.push_str("    var g = w.goal;\n");
        }
        out.push_str(frame);
        let mut locals: Vec<String> = self.temps.iter().map(|t| format!("t{t}")).collect();
        if self.uses_x {
            locals.push("x".into());
        }
        if !locals.is_empty() {
            let _ = writeln!(out, "    var {};", locals.join(", "));
        }
        out
    }
}

impl Closure<'_> {
    fn expr(&mut self, e: &Expr, fx: &mut FnCtx) -> String {
        if is_ground(e) {
            return match e {
                Expr::Const(c) => self.const_ref(c),
                _ => {
                    let b = self.ground_build(e);
                    self.constant(b)
                }
            };
        }
        match e {
            Expr::Var(s) => fx.slot(*s),
            Expr::Fresh(s) => {
                let v = self.use_rt("$var");
                format!("({} = new {v}(w))", fx.slot(*s))
            }
            Expr::Void => format!("new {}(w)", self.use_rt("$var")),
            Expr::Struct(f, args) => {
                let ctor = self.ctor(f);
                let args: Vec<String> = args.iter().map(|a| self.expr(a, fx)).collect();
                format!("new {ctor}({})", args.join(", "))
            }
            Expr::Const(_) => unreachable!(),
        }
    }

    fn fail(&mut self) -> &'static str {
        self.use_rt("$fail")
    }

    fn unify_stmt(&mut self, a: String, b: String) -> String {
        let u = self.use_rt("$unify");
        format!("    if (!{u}(w, {a}, {b})) return {};\n", self.fail())
    }

    fn step(&mut self, s: &Step, fx: &mut FnCtx, out: &mut String) {
        match s {
            Step::GetArg { i, slot } => {
                fx.uses_g = true;
                let _ = writeln!(out, "    {} = g.a{i};", fx.slot(*slot));
            }
            Step::UnifyConst { src, c } => {
                let a = fx.slot(*src);
                let k = self.const_ref(c);
                out.push_str(&self.unify_stmt(a, k));
            }
            Step::UnifyStruct { src, functor, pats } => {
                fx.uses_x = true;
                let _ = writeln!(out, "    x = {}.deref();", fx.slot(*src));
                let vb = self.use_rt("$var_base");
                let _ = writeln!(out, "    if (x instanceof {vb}) {{");
                let mut built = Vec::new();
                for p in pats {
                    built.push(match p {
                        ArgPat::Bind(s) => {
                            let v = self.use_rt("$var");
                            format!("({} = new {v}(w))", fx.slot(*s))
                        }
                        ArgPat::Match(s) => fx.slot(*s),
                        ArgPat::Void => format!("new {}(w)", self.use_rt("$var")),
                        ArgPat::Const(c) => self.const_ref(c),
                    });
                }
                let ctor = self.ctor(functor);
                let u = self.use_rt("$unify");
                let fail = self.fail();
                let _ = writeln!(out, "      if (!{u}(w, x, new {ctor}({}))) return {fail};", built.join(", "));
                let _ = writeln!(
                    out,
                    "    }} else if (x.name === {} && x.arity === {}) {{",
                    js_str(&functor.name),
                    functor.arity
                );
                for (j, p) in pats.iter().enumerate() {
                    match p {
                        ArgPat::Bind(s) => {
                            let _ = writeln!(out, "      {} = x.a{j};", fx.slot(*s));
                        }
                        ArgPat::Match(s) => {
                            let a = fx.slot(*s);
                            let _ = writeln!(out, "      if (!{u}(w, {a}, x.a{j})) return {fail};");
                        }
                        ArgPat::Void => {}
                        ArgPat::Const(c) => {
                            let k = self.const_ref(c);
                            let _ = writeln!(out, "      if (!{u}(w, x.a{j}, {k})) return {fail};");
                        }
                    }
                }
                let _ = writeln!(out, "    }} else return {fail};");
            }
            Step::Unify(a, b) => {
                let (a, b) = (self.expr(a, fx), self.expr(b, fx));
                out.push_str(&self.unify_stmt(a, b));
            }
            Step::Set { slot, expr } => {
                let e = self.expr(expr, fx);
                let _ = writeln!(out, "    {} = {e};", fx.slot(*slot));
            }
            Step::Inline { op, args } => self.inline(*op, args, fx, out),
            Step::Cut => {
                let b = if fx.chunk == 0 { "b" } else { "w.frame.choice" };
                let _ = writeln!(out, "    w.cut({b});");
            }
            Step::GetLevel(s) => {
                let b = if fx.chunk == 0 { "b" } else { "w.frame.choice" };
                let rt = self.use_rt("$rt");
                let _ = writeln!(out, "    {} = {rt}.level({b});", fx.slot(*s));
            }
            Step::CutTo(e) => {
                let e = self.expr(e, fx);
                let rt = self.use_rt("$rt");
                let _ = writeln!(out, "    {rt}.cut_to(w, {e});");
            }
        }
    }

    fn inline(&mut self, op: InlineOp, args: &[Expr], fx: &mut FnCtx, out: &mut String) {
        let fail = self.fail();
        let cmp = |op| match op {
            InlineOp::Lt => "<",
            InlineOp::Gt => ">",
            InlineOp::Le => "<=",
            InlineOp::Ge => ">=",
            InlineOp::NumEq => "===",
            _ => "!==",
        };
        match op {
            InlineOp::Unify => {
                let (a, b) = (self.expr(&args[0], fx), self.expr(&args[1], fx));
                out.push_str(&self.unify_stmt(a, b));
            }
            InlineOp::Is => {
                let a = self.expr(&args[0], fx);
                let b = self.expr(&args[1], fx);
                let (ev, num) = (self.use_rt("$eval"), self.use_rt("$num"));
                out.push_str(&self.unify_stmt(a, format!("new {num}({ev}({b}))")));
            }
            InlineOp::Lt | InlineOp::Gt | InlineOp::Le | InlineOp::Ge | InlineOp::NumEq | InlineOp::NumNe => {
                let a = self.expr(&args[0], fx);
                let b = self.expr(&args[1], fx);
                let ev = self.use_rt("$eval");
                let _ = writeln!(out, "    if (!({ev}({a}) {} {ev}({b}))) return {fail};", cmp(op));
            }
            InlineOp::Var | InlineOp::Nonvar => {
                let a = self.expr(&args[0], fx);
                let vb = self.use_rt("$var_base");
                let neg = if op == InlineOp::Var { "!" } else { "" };
                let _ = writeln!(out, "    if ({neg}({a}.deref() instanceof {vb})) return {fail};");
            }
            InlineOp::Fail => {
                let _ = writeln!(out, "    return {fail};");
            }
        }
    }

    /// Goal constructor and the continuation that executes it.
    fn call_target(&mut self, call: &Call) -> (String, String) {
        match &call.target {
            CallTarget::Pred(k) if k.module == self.name => {
                let f = k.functor();
                let ctor = self.ctor(&f);
                (ctor.clone(), format!("{ctor}_x"))
            }
            CallTarget::Pred(k) => {
                let u = self.import(Import::Pred(k.clone()));
                (u, self.use_rt("$call").to_string())
            }
            CallTarget::Meta => {
                let u = self.import(Import::Pred(PredKey::new("term_basic", "call", call.arity())));
                (u, self.use_rt("$call").to_string())
            }
        }
    }

    fn clause(&mut self, base: &str, ci: usize, c: &ClauseCode) {
        for (k, chunk) in c.chunks.iter().enumerate() {
            let mut fx = FnCtx {
                chunk: k,
                ..FnCtx::default()
            };
            let mut body = String::new();
            let mut dead = false;
            for s in &chunk.steps {
                self.step(s, &mut fx, &mut body);
                if matches!(s, Step::Inline { op: InlineOp::Fail, .. }) {
                    // Everything after an unconditional failure is unreachable.
                    dead = true;
                    break;
                }
            }
            match &chunk.call {
                _ if dead => {}
                Some(call) => {
                    let (ctor, exec) = self.call_target(call);
                    let args: Vec<String> = call.args.iter().map(|a| self.expr(a, &mut fx)).collect();
                    if call.target == CallTarget::Meta {
                        body.push_str("    w.ctx = m;\n");
                    }
                    if !call.is_last {
                        let _ = writeln!(body, "    w.cont = {base}_c{ci}_{};", k + 1);
                    }
                    let _ = writeln!(body, "    w.goal = new {ctor}({});", args.join(", "));
                    if call.is_last && c.needs_frame {
                        body.push_str("    w.pop_frame();\n");
                    }
                    let _ = writeln!(body, "    return {exec};");
                }
                None => {
                    if c.needs_frame {
                        body.push_str("    w.pop_frame();\n");
                    }
                    body.push_str("    return w.cont;\n");
                }
            }
            let frame = if !c.needs_frame || (c.nframe == 0 && !body.contains("y[")) {
                if k == 0 && c.needs_frame {
                    format!("    w.push_frame({}, b);\n", c.nframe)
                } else {
                    String::new()
                }
            } else if k == 0 {
                format!("    var y = w.push_frame({}, b);\n", c.nframe)
            } else {
                "    var y = w.frame.y;\n".to_string()
            };
            let header = fx.header(&frame);
            if k == 0 {
                let _ = writeln!(self.body, "  function {base}_c{ci}(w, b) {{");
            } else {
                let _ = writeln!(self.body, "  function {base}_c{ci}_{k}(w) {{");
            }
            self.body.push_str(&header);
            self.body.push_str(&body);
            self.body.push_str("  }\n");
            if dead {
                break;
            }
        }
    }

    fn candidates(&mut self, base: &str, cs: &[usize], arrays: &mut Vec<Vec<usize>>, indent: &str) -> String {
        match cs {
            [] => format!("{indent}return {};\n", self.fail()),
            [one] => format!("{indent}return {base}_c{one}(w, b);\n"),
            [first, ..] => {
                let j = match arrays.iter().position(|a| a == cs) {
                    Some(j) => j,
                    None => {
                        arrays.push(cs.to_vec());
                        arrays.len() - 1
                    }
                };
                format!("{indent}w.push_choice({base}_s{j}, 1);\n{indent}return {base}_c{first}(w, b);\n")
            }
        }
    }

    fn predicate(&mut self, ir: &ChunkIR) {
        let f = ir.pred.functor();
        let base = self.ctor(&f);
        self.set_exec(&f, format!("{base}_x"));
        let mut arrays = Vec::new();
        let mut exec = String::new();
        let _ = writeln!(exec, "  function {base}_x(w) {{");
        if ir.clauses.is_empty() {
            let _ = writeln!(exec, "    return {};", self.fail());
        } else {
            exec.push_str("    var b = w.choice;\n");
            match &ir.selection {
                Selection::Linear => {
                    let all: Vec<usize> = (0..ir.clauses.len()).collect();
                    exec.push_str(&self.candidates(&base, &all, &mut arrays, "    "));
                }
                Selection::FirstArgSwitch { cases, default, var } => {
                    let key = self.use_rt("$key");
                    let _ = writeln!(exec, "    switch ({key}(w.goal.a0.deref())) {{");
                    exec.push_str("    case null:\n");
                    exec.push_str(&self.candidates(&base, var, &mut arrays, "      "));
                    for (k, cs) in cases {
                        let _ = writeln!(exec, "    case {}:", js_str(k));
                        exec.push_str(&self.candidates(&base, cs, &mut arrays, "      "));
                    }
                    exec.push_str("    default:\n");
                    exec.push_str(&self.candidates(&base, default, &mut arrays, "      "));
                    exec.push_str("    }\n");
                }
            }
        }
        exec.push_str("  }\n");
        self.body.push_str(&exec);
        for (ci, c) in ir.clauses.iter().enumerate() {
            self.clause(&base, ci, c);
        }
        for (j, a) in arrays.iter().enumerate() {
            let fs: Vec<String> = a.iter().map(|i| format!("{base}_c{i}")).collect();
            let _ = writeln!(self.body, "  var {base}_s{j} = [{}];", fs.join(", "));
        }
    }

    fn set_exec(&mut self, f: &Functor, exec: String) {
        if let Some(s) = self.symbols.iter_mut().find(|(g, _)| g == f) {
            s.1 = Some(exec);
        }
    }

    fn foreign(&mut self, d: &ForeignDecl) {
        let f = Functor::new(d.name.clone(), d.pred_arity());
        let base = self.ctor(&f);
        self.set_exec(&f, format!("{base}_x"));
        for n in ["$rt", "$unify", "$fail"] {
            self.use_rt(n);
        }
        if let Some((_, a)) = d.output() {
            match &a.ty {
                crate::ffi::ForeignType::Number => {
                    self.use_rt("$num");
                }
                crate::ffi::ForeignType::String => {
                    self.use_rt("$str");
                }
                _ => {}
            }
        }
        let mut classes: Vec<String> = d
            .args
            .iter()
            .filter_map(|a| match &a.ty {
                crate::ffi::ForeignType::Class(c) => Some(c.clone()),
                _ => None,
            })
            .collect();
        classes.extend(d.class.clone());
        let resolved: HashMap<String, String> = classes.iter().map(|c| (c.clone(), self.class_ctor(c))).collect();
        let lookup = |c: &str| resolved[c].clone();
        let function = format!("{base}_f");
        let stub = emit_foreign_stub(
            d,
            &StubNames {
                class_ctor: &lookup,
                function: &function,
            },
        );
        let _ = writeln!(self.body, "  function {function}({}) {{", foreign_params(d).join(", "));
        self.body.push_str(d.body.trim_end());
        self.body.push_str("\n  }\n");
        let _ = writeln!(self.body, "  function {base}_x(w) {{");
        self.body.push_str(&stub);
        self.body.push_str("  }\n");
    }

    /// Assembles the closure text. `extra_defs` come right after the
    /// constructors (the class wrapper setup of a foreign class).
    fn finish(self, exports: &[Functor], imports: &[String], extra_defs: &str) -> Result<String> {
        let mut out = String::new();
        let _ = writeln!(out, "$r.def({}, function(m) {{", js_str(self.name));
        let rt: Vec<&str> = RUNTIME.iter().map(|(n, _)| *n).filter(|n| self.rt.contains(n)).collect();
        if !rt.is_empty() {
            let _ = writeln!(out, "  var {};", rt.join(", "));
        }
        if !self.imports.is_empty() {
            let us: Vec<&str> = self.imports.iter().map(|(_, u)| u.as_str()).collect();
            let _ = writeln!(out, "  var {};", us.join(", "));
        }
        if !self.consts.is_empty() {
            let ks: Vec<&str> = self.consts.iter().map(|(k, _)| k.as_str()).collect();
            let _ = writeln!(out, "  var {};", ks.join(", "));
        }
        for (f, _) in &self.symbols {
            let id = &self.ctors[f];
            let params: Vec<String> = (0..f.arity).map(|i| format!("a{i}")).collect();
            let fields: String = (0..f.arity).map(|i| format!(" this.a{i} = a{i};")).collect();
            let _ = writeln!(out, "  function {id}({}) {{{fields} }}", params.join(", "));
        }
        out.push_str(extra_defs);
        out.push_str(&self.body);
        for (f, exec) in &self.symbols {
            let id = &self.ctors[f];
            let _ = writeln!(out, "  m.def({}, function(m) {{", js_str(&mangle(&f.name, f.arity)));
            let _ = writeln!(out, "    m.ctor = {id};");
            out.push_str("    m.base = $r.query(\"t_struct\");\n");
            out.push_str("    m.mlink = function(c) {\n");
            let _ = writeln!(out, "      c.prototype.name = {};", js_str(&f.name));
            let _ = writeln!(out, "      c.prototype.arity = {};", f.arity);
            if let Some(e) = exec {
                let _ = writeln!(out, "      c.prototype.execute = {e};");
            }
            out.push_str("    };\n  });\n");
        }
        for f in exports {
            let id = self.ctors.get(f).ok_or_else(|| {
                Error::Internal(format!("exported {f} has no definition in {}", self.name))
            })?;
            let _ = writeln!(out, "  m.exports[{}] = {id};", js_str(&mangle(&f.name, f.arity)));
        }
        if !imports.is_empty() {
            let is: Vec<String> = imports.iter().map(|i| js_str(i)).collect();
            let _ = writeln!(out, "  m.imports = [{}];", is.join(", "));
        }
        let mut link = String::new();
        for (n, init) in RUNTIME {
            if self.rt.contains(n) {
                let _ = writeln!(link, "    {n} = {init};");
            }
        }
        let mut last_module: Option<String> = None;
        if self.imports.iter().any(|(i, _)| matches!(i, Import::Pred(_))) {
            link.push_str("    var p;\n");
        }
        for (i, u) in &self.imports {
            match i {
                Import::Pred(k) => {
                    if last_module.as_deref() != Some(k.module.as_str()) {
                        let _ = writeln!(link, "    p = $r.query({}).prepare();", js_str(&k.module));
                        last_module = Some(k.module.clone());
                    }
                    let _ = writeln!(link, "    {u} = p.exports[{}];", js_str(&k.key()));
                }
                Import::Class(c) => {
                    let _ = writeln!(link, "    {u} = $r.query({}).prepare().ctor;", js_str(c));
                    last_module = None;
                }
            }
        }
        for f in &self.const_functors {
            let _ = writeln!(link, "    m.nested[{}].prepare();", js_str(&mangle(&f.name, f.arity)));
        }
        for (k, b) in &self.consts {
            let _ = writeln!(link, "    {k} = {b};");
        }
        if link.is_empty() {
            out.push_str("  m.link = function() {};\n");
        } else {
            out.push_str("  m.link = function() {\n");
            out.push_str(&link);
            out.push_str("  };\n");
        }
        out.push_str("});\n");
        Ok(out)
    }
}

fn emit_class(c: &ForeignClassDecl) -> Result<String> {
    let mut cl = Closure::new(&c.name);
    let own = cl.fresh_ident(&c.name, 1);
    cl.own_class = Some((c.name.clone(), own.clone()));
    for d in &c.methods {
        cl.declare(&Functor::new(d.name.clone(), d.pred_arity()), None);
    }
    for d in &c.methods {
        cl.foreign(d);
    }
    let mut extra = String::new();
    let _ = writeln!(extra, "  function {own}(a0) {{ this.a0 = a0; }}");
    let _ = writeln!(extra, "  m.ctor = {own};");
    extra.push_str("  m.base = $r.query(\"t_foreign\");\n");
    extra.push_str("  m.mlink = function(c) {\n");
    let _ = writeln!(extra, "    c.prototype.name = {};", js_str(&c.name));
    extra.push_str("  };\n");
    let exports: Vec<Functor> = c.methods.iter().map(|d| Functor::new(d.name.clone(), d.pred_arity())).collect();
    cl.finish(&exports, &[], &extra)
}

/// Emits the JavaScript for a resolved module and its compiled predicates.
pub fn emit_module(m: &ResolvedModule, irs: &[ChunkIR]) -> Result<EmittedModule> {
    let mut cl = Closure::new(&m.name);
    for ir in irs {
        if ir.pred.module != m.name {
            return Err(Error::Internal(format!("{} compiled for another module", ir.pred)));
        }
        cl.declare(&ir.pred.functor(), None);
    }
    for d in &m.foreign {
        cl.declare(&Functor::new(d.name.clone(), d.arity()), None);
    }
    for ir in irs {
        cl.predicate(ir);
    }
    for d in &m.foreign {
        cl.foreign(d);
    }
    let mut source = cl.finish(&m.exports, &m.imports, "")?;
    for c in &m.classes {
        source.push_str(&emit_class(c)?);
    }
    Ok(EmittedModule {
        module_name: m.name.clone(),
        file: file_name(&m.name),
        source,
        deps: m.deps.clone(),
    })
}

/// Files in dependency order: every module after the modules it depends on,
/// except where a cycle forces otherwise. Ties keep input order.
pub fn load_order(mods: &[EmittedModule]) -> Vec<String> {
    let index: HashMap<&str, usize> = mods.iter().enumerate().map(|(i, m)| (m.module_name.as_str(), i)).collect();
    let mut state = vec![0u8; mods.len()];
    let mut out = Vec::new();
    fn visit(i: usize, mods: &[EmittedModule], index: &HashMap<&str, usize>, state: &mut [u8], out: &mut Vec<String>) {
        if state[i] != 0 {
            return;
        }
        state[i] = 1;
        for d in &mods[i].deps {
            if let Some(&j) = index.get(d.as_str()) {
                visit(j, mods, index, state, out);
            }
        }
        state[i] = 2;
        out.push(mods[i].file.clone());
    }
    for i in 0..mods.len() {
        visit(i, mods, &index, &mut state, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codegen::{compile_predicate, Options};
    use crate::reader::read_module;
    use crate::resolve::resolve_program;

    fn emit(srcs: &[&str]) -> Vec<EmittedModule> {
        let mods: Vec<_> = srcs.iter().map(|s| read_module(s).unwrap().0).collect();
        let (rs, _) = resolve_program(&mods).unwrap();
        rs.iter()
            .map(|r| {
                let irs: Vec<_> = r.preds.iter().map(|p| compile_predicate(&r.name, p, Options::default())).collect();
                emit_module(r, &irs).unwrap()
            })
            .collect()
    }

    fn squash(s: &str) -> String {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }

    #[test]
    fn mangle_keys() {
        assert_eq!(mangle("append", 3), "append/3");
        assert_eq!(mangle(".", 2), "./2");
        assert_eq!(mangle("p q", 1), "p q/1");
        assert_eq!(local_ident("p q", 1, 4), "p_q_1_4");
    }

    #[test]
    fn empty_module() {
        let e = emit(&[":- module(m, []).\n"]);
        assert_eq!(squash(&e[0].source), squash("$r.def(\"m\", function(m){ m.link=function(){}; });"));
    }

    #[test]
    fn exports_and_imports() {
        let e = emit(&[
            ":- module(app, [app/3]).\n:- use_module(lists).\napp(X, Y, Z) :- append(X, Y, Z).\n",
            ":- module(lists, [append/3]).\nappend([], L, L).\nappend([H|T], L, [H|R]) :- append(T, L, R).\n",
        ]);
        let src = &e[0].source;
        assert!(src.contains("m.exports[\"app/3\"] = app_3_0;"), "{src}");
        let prep = src.find("p = $r.query(\"lists\").prepare();").unwrap();
        let cap = src.find("u0 = p.exports[\"append/3\"];").unwrap();
        assert!(prep < cap);
        assert_eq!(e[0].deps, vec!["lists"]);
        assert_eq!(load_order(&e), vec!["lists.js", "app.js"]);
    }

    #[test]
    fn identifiers_are_sanitized() {
        let e = emit(&["'p q'(1).\n"]);
        assert!(e[0].source.contains("function p_q_1_0(a0)"), "{}", e[0].source);
        assert!(e[0].source.contains("m.def(\"p q/1\""));
    }

    #[test]
    fn string_literals() {
        assert_eq!(js_str("a\"b\\c\n\u{2028}"), "\"a\\\"b\\\\c\\n\\u2028\"");
    }

    #[test]
    fn idempotent() {
        let src = "p(X) :- (X = 1 ; X = 2), \\+ X = 3, q(X, Y), Y > 0.\nq(A, B) :- B is A * 2.\n";
        assert_eq!(emit(&[src]), emit(&[src]));
    }
}
