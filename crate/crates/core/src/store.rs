//! Run-time term store shared by the reference interpreter and the IR
//! executor: bindings with a trail, unification, arithmetic, standard order
//! and term output.
//!
//! Numbers follow the host model of the JavaScript target: every number is
//! an `f64`, integral values print without a fraction, and `//` truncates
//! toward zero.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::rc::Rc;
use std::sync::OnceLock;

use crate::ops::OpTable;
use crate::term::{Term, VarId};
use crate::writer::{quote_atom, quote_string};

#[derive(Clone, Debug)]
pub enum Value {
    /// Variable cell; the index doubles as the creation timestamp.
    Var(usize),
    Atom(Rc<str>),
    Num(f64),
    Str(Rc<str>),
    Struct(Rc<Compound>),
}

#[derive(Debug)]
pub struct Compound {
    pub name: Rc<str>,
    pub args: Vec<Value>,
}

impl Value {
    pub fn atom(name: &str) -> Value {
        Value::Atom(Rc::from(name))
    }

    pub fn int(i: i64) -> Value {
        Value::Num(i as f64)
    }

    pub fn compound(name: &str, args: Vec<Value>) -> Value {
        if args.is_empty() {
            Value::atom(name)
        } else {
            Value::Struct(Rc::new(Compound {
                name: Rc::from(name),
                args,
            }))
        }
    }

    pub fn list(items: Vec<Value>, tail: Value) -> Value {
        items
            .into_iter()
            .rev()
            .fold(tail, |acc, x| Value::compound(".", vec![x, acc]))
    }

    /// Name and arity of an atom or compound.
    pub fn functor(&self) -> Option<(&str, usize)> {
        match self {
            Value::Atom(a) => Some((a, 0)),
            Value::Struct(c) => Some((&c.name, c.args.len())),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Value] {
        match self {
            Value::Struct(c) => &c.args,
            _ => &[],
        }
    }
}

/// Evaluation and type errors raised by built-ins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError(pub String);

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RunError {}

pub type RunResult<T> = Result<T, RunError>;

fn err<T>(msg: impl Into<String>) -> RunResult<T> {
    Err(RunError(msg.into()))
}

#[derive(Default)]
pub struct Store {
    cells: Vec<Option<Value>>,
    trail: Vec<usize>,
    /// Text written by `write/1` and `nl/0`.
    pub out: String,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_var(&mut self) -> Value {
        self.cells.push(None);
        Value::Var(self.cells.len() - 1)
    }

    /// Number of variables created so far.
    pub fn time(&self) -> usize {
        self.cells.len()
    }

    pub fn deref(&self, v: &Value) -> Value {
        let mut cur = v;
        while let Value::Var(i) = cur {
            match &self.cells[*i] {
                Some(next) => cur = next,
                None => break,
            }
        }
        cur.clone()
    }

    pub fn is_unbound(&self, v: &Value) -> bool {
        matches!(self.deref(v), Value::Var(_))
    }

    pub fn bind(&mut self, var: usize, val: Value) {
        self.cells[var] = Some(val);
        self.trail.push(var);
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.cells[v] = None;
        }
    }

    /// Unifies without occurs check. On failure the bindings made so far
    /// stay on the trail; callers undo to a mark.
    pub fn unify(&mut self, a: &Value, b: &Value) -> bool {
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((x, y)) = stack.pop() {
            let x = self.deref(&x);
            let y = self.deref(&y);
            match (&x, &y) {
                (Value::Var(i), Value::Var(j)) => {
                    // The younger variable points to the older one.
                    match i.cmp(j) {
                        Ordering::Equal => {}
                        Ordering::Greater => self.bind(*i, y.clone()),
                        Ordering::Less => self.bind(*j, x.clone()),
                    }
                }
                (Value::Var(i), _) => self.bind(*i, y.clone()),
                (_, Value::Var(j)) => self.bind(*j, x.clone()),
                (Value::Atom(p), Value::Atom(q)) => {
                    if p != q {
                        return false;
                    }
                }
                (Value::Num(p), Value::Num(q)) => {
                    if p != q {
                        return false;
                    }
                }
                (Value::Str(p), Value::Str(q)) => {
                    if p != q {
                        return false;
                    }
                }
                (Value::Struct(p), Value::Struct(q)) => {
                    if Rc::ptr_eq(p, q) {
                        continue;
                    }
                    if p.name != q.name || p.args.len() != q.args.len() {
                        return false;
                    }
                    for (s, t) in p.args.iter().zip(q.args.iter()).rev() {
                        stack.push((s.clone(), t.clone()));
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Unification that leaves no bindings behind when it fails.
    pub fn unify_or_undo(&mut self, a: &Value, b: &Value) -> bool {
        let m = self.mark();
        let ok = self.unify(a, b);
        if !ok {
            self.undo(m);
        }
        ok
    }

    /// Instantiates a clause term; `vars` maps clause variables to cells and
    /// is filled on first occurrence.
    pub fn instantiate(&mut self, t: &Term, vars: &mut Vec<Option<Value>>) -> Value {
        match t {
            Term::Var(v) => {
                if *v >= vars.len() {
                    vars.resize(*v + 1, None);
                }
                if let Some(x) = &vars[*v] {
                    return x.clone();
                }
                let x = self.new_var();
                vars[*v] = Some(x.clone());
                x
            }
            Term::Atom(a) => Value::atom(a),
            Term::Int(i) => Value::int(*i),
            Term::Float(f) => Value::Num(*f),
            Term::Str(s) => Value::Str(Rc::from(s.as_str())),
            Term::Compound(f, args) => {
                let args = args.iter().map(|a| self.instantiate(a, vars)).collect();
                Value::compound(f, args)
            }
        }
    }

    /// Fully dereferenced copy of `v` (variables left as cells).
    pub fn resolve(&self, v: &Value) -> Value {
        match self.deref(v) {
            Value::Struct(c) => Value::compound(&c.name, c.args.iter().map(|a| self.resolve(a)).collect()),
            other => other,
        }
    }

    pub fn copy_term(&mut self, v: &Value) -> Value {
        let mut map = HashMap::new();
        self.copy_with(v, &mut map)
    }

    fn copy_with(&mut self, v: &Value, map: &mut HashMap<usize, Value>) -> Value {
        match self.deref(v) {
            Value::Var(i) => {
                if let Some(x) = map.get(&i) {
                    return x.clone();
                }
                let x = self.new_var();
                map.insert(i, x.clone());
                x
            }
            Value::Struct(c) => {
                let args = c.args.iter().map(|a| self.copy_with(a, map)).collect();
                Value::compound(&c.name, args)
            }
            other => other,
        }
    }

    pub fn eval(&self, v: &Value) -> RunResult<f64> {
        match self.deref(v) {
            Value::Num(n) => Ok(n),
            Value::Var(_) => err("instantiation error in arithmetic"),
            Value::Atom(a) => match &*a {
                "pi" => Ok(std::f64::consts::PI),
                "e" => Ok(std::f64::consts::E),
                "inf" | "infinite" => Ok(f64::INFINITY),
                "nan" => Ok(f64::NAN),
                "max_tagged_integer" => Ok(((1u64 << 53) - 1) as f64),
                _ => err(format!("type error: evaluable `{}/0`", a)),
            },
            Value::Str(s) => {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(c as u32 as f64),
                    _ => err("type error: evaluable string"),
                }
            }
            Value::Struct(c) => {
                let x = self.eval(&c.args[0])?;
                if c.args.len() == 1 {
                    return eval_unary(&c.name, x);
                }
                if c.args.len() == 2 {
                    let y = self.eval(&c.args[1])?;
                    return eval_binary(&c.name, x, y);
                }
                err(format!("type error: evaluable `{}/{}`", c.name, c.args.len()))
            }
        }
    }

    /// Standard order: Var < Number < String < Atom < Compound.
    pub fn compare(&self, a: &Value, b: &Value) -> Ordering {
        let a = self.deref(a);
        let b = self.deref(b);
        fn rank(v: &Value) -> u8 {
            match v {
                Value::Var(_) => 0,
                Value::Num(_) => 1,
                Value::Str(_) => 2,
                Value::Atom(_) => 3,
                Value::Struct(_) => 4,
            }
        }
        match (&a, &b) {
            (Value::Var(i), Value::Var(j)) => i.cmp(j),
            (Value::Num(x), Value::Num(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
            (Value::Str(x), Value::Str(y)) => x.cmp(y),
            (Value::Atom(x), Value::Atom(y)) => x.cmp(y),
            (Value::Struct(x), Value::Struct(y)) => x
                .args
                .len()
                .cmp(&y.args.len())
                .then_with(|| x.name.cmp(&y.name))
                .then_with(|| {
                    for (s, t) in x.args.iter().zip(y.args.iter()) {
                        let o = self.compare(s, t);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    Ordering::Equal
                }),
            _ => rank(&a).cmp(&rank(&b)),
        }
    }

    /// Text of `v` as written by `write/1` (`quoted = false`) or in answers
    /// (`quoted = true`). Unbound variables print as `_<n>` with `n` from
    /// `var_name`.
    pub fn format(&self, v: &Value, quoted: bool, var_name: &mut dyn FnMut(usize) -> String) -> String {
        static ISO: OnceLock<OpTable> = OnceLock::new();
        let ops = ISO.get_or_init(OpTable::iso);
        let mut out = String::new();
        let mut w = Writer {
            store: self,
            ops,
            quoted,
            var_name,
            out: &mut out,
        };
        w.write(v, 1200);
        out
    }

    /// `format` with variables named by cell index.
    pub fn show(&self, v: &Value, quoted: bool) -> String {
        self.format(v, quoted, &mut |i| format!("_{i}"))
    }
}

fn to_i32(x: f64) -> i32 {
    // ECMAScript ToInt32.
    if !x.is_finite() {
        return 0;
    }
    (x.trunc().rem_euclid(4294967296.0) as u32) as i32
}

fn need_int(name: &str, x: f64) -> RunResult<()> {
    if x.fract() != 0.0 || !x.is_finite() {
        return err(format!("type error: integer expected in `{name}`"));
    }
    Ok(())
}

fn eval_unary(op: &str, x: f64) -> RunResult<f64> {
    Ok(match op {
        "-" => -x,
        "+" => x,
        "abs" => x.abs(),
        "sign" => {
            if x > 0.0 {
                1.0
            } else if x < 0.0 {
                -1.0
            } else {
                0.0
            }
        }
        "min" | "max" => return err(format!("type error: evaluable `{op}/1`")),
        "sqrt" => x.sqrt(),
        "sin" => x.sin(),
        "cos" => x.cos(),
        "tan" => x.tan(),
        "atan" => x.atan(),
        "exp" => x.exp(),
        "log" => x.ln(),
        "float" => x,
        "integer" | "round" => round_half_away(x),
        "truncate" | "float_integer_part" => x.trunc(),
        "float_fractional_part" => x - x.trunc(),
        "ceiling" => x.ceil(),
        "floor" => x.floor(),
        "\\" => !to_i32(x) as f64,
        "msb" => {
            need_int(op, x)?;
            (x.log2().floor()).max(0.0)
        }
        _ => return err(format!("type error: evaluable `{op}/1`")),
    })
}

fn round_half_away(x: f64) -> f64 {
    x.round()
}

fn eval_binary(op: &str, x: f64, y: f64) -> RunResult<f64> {
    Ok(match op {
        "+" => x + y,
        "-" => x - y,
        "*" => x * y,
        "/" => {
            if y == 0.0 {
                return err("evaluation error: zero_divisor");
            }
            x / y
        }
        "//" => {
            need_int(op, x)?;
            need_int(op, y)?;
            if y == 0.0 {
                return err("evaluation error: zero_divisor");
            }
            (x / y).trunc()
        }
        "mod" => {
            need_int(op, x)?;
            need_int(op, y)?;
            if y == 0.0 {
                return err("evaluation error: zero_divisor");
            }
            let r = x % y;
            if r != 0.0 && (r < 0.0) != (y < 0.0) {
                r + y
            } else {
                r
            }
        }
        "rem" => {
            need_int(op, x)?;
            need_int(op, y)?;
            if y == 0.0 {
                return err("evaluation error: zero_divisor");
            }
            x % y
        }
        "min" => {
            if y < x {
                y
            } else {
                x
            }
        }
        "max" => {
            if y > x {
                y
            } else {
                x
            }
        }
        "**" | "^" => x.powf(y),
        "atan2" | "atan" => x.atan2(y),
        ">>" => (to_i32(x) >> (to_i32(y) & 31)) as f64,
        "<<" => (to_i32(x).wrapping_shl((to_i32(y) & 31) as u32)) as f64,
        "/\\" => (to_i32(x) & to_i32(y)) as f64,
        "\\/" => (to_i32(x) | to_i32(y)) as f64,
        "xor" => (to_i32(x) ^ to_i32(y)) as f64,
        "gcd" => {
            need_int(op, x)?;
            need_int(op, y)?;
            let (mut a, mut b) = (x.abs(), y.abs());
            while b != 0.0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        }
        _ => return err(format!("type error: evaluable `{op}/2`")),
    })
}

/// Number text as the JavaScript host prints it (`String(x)`).
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Infinity".into() } else { "-Infinity".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-6..1e21).contains(&a) {
        return format!("{x}");
    }
    let s = format!("{x:e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

fn is_symbol_char(c: char) -> bool {
    "+-*/\\^<>=~:.?@#&$".contains(c)
}

fn is_alpha_op(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_alphabetic())
}

struct Writer<'a> {
    store: &'a Store,
    ops: &'a OpTable,
    quoted: bool,
    var_name: &'a mut dyn FnMut(usize) -> String,
    out: &'a mut String,
}

impl Writer<'_> {
    fn push(&mut self, s: &str) {
        // Keep adjacent symbol characters and alphanumerics from fusing.
        if let (Some(last), Some(first)) = (self.out.chars().last(), s.chars().next()) {
            let fuse = (is_symbol_char(last) && is_symbol_char(first))
                || (last.is_alphanumeric() && first.is_alphanumeric());
            if fuse {
                self.out.push(' ');
            }
        }
        self.out.push_str(s);
    }

    fn atom(&mut self, a: &str) {
        if self.quoted {
            let q = quote_atom(a).into_owned();
            self.push(&q);
        } else {
            self.push(a);
        }
    }

    fn write(&mut self, v: &Value, max: u16) {
        let v = self.store.deref(v);
        match &v {
            Value::Var(i) => {
                let n = (self.var_name)(*i);
                self.push(&n);
            }
            Value::Num(x) => {
                let s = fmt_num(*x);
                self.push(&s);
            }
            Value::Str(s) => {
                if self.quoted {
                    let q = quote_string(s);
                    self.push(&q);
                } else {
                    self.push(s);
                }
            }
            Value::Atom(a) => {
                let is_op = self.ops.is_op(a) && max < 1200;
                let prio = [self.ops.prefix(a), self.ops.infix(a)]
                    .into_iter()
                    .flatten()
                    .map(|d| d.priority)
                    .max()
                    .unwrap_or(0);
                if is_op && prio > max {
                    self.push("(");
                    self.atom(a);
                    self.out.push(')');
                } else {
                    self.atom(a);
                }
            }
            Value::Struct(c) => self.compound(&c.name, &c.args, max),
        }
    }

    fn compound(&mut self, name: &str, args: &[Value], max: u16) {
        if name == "." && args.len() == 2 {
            self.push("[");
            self.write(&args[0], 999);
            let mut tail = self.store.deref(&args[1]);
            loop {
                match &tail {
                    Value::Struct(c) if &*c.name == "." && c.args.len() == 2 => {
                        self.out.push(',');
                        self.write(&c.args[0], 999);
                        let next = self.store.deref(&c.args[1]);
                        tail = next;
                    }
                    Value::Atom(a) if &**a == "[]" => break,
                    _ => {
                        self.out.push('|');
                        self.write(&tail, 999);
                        break;
                    }
                }
            }
            self.out.push(']');
            return;
        }
        if name == "{}" && args.len() == 1 {
            self.push("{");
            self.write(&args[0], 1200);
            self.out.push('}');
            return;
        }
        if args.len() == 2 {
            if let Some(def) = self.ops.infix(name) {
                let (lm, rm) = def.arg_max();
                let paren = def.priority > max;
                if paren {
                    self.push("(");
                }
                self.write(&args[0], lm);
                if name == "," {
                    self.out.push(',');
                } else if is_alpha_op(name) {
                    self.out.push(' ');
                    self.atom(name);
                    self.out.push(' ');
                } else {
                    self.atom(name);
                }
                self.write(&args[1], rm);
                if paren {
                    self.out.push(')');
                }
                return;
            }
        }
        if args.len() == 1 {
            if let Some(def) = self.ops.prefix(name) {
                let (_, am) = def.arg_max();
                let paren = def.priority > max;
                if paren {
                    self.push("(");
                }
                self.atom(name);
                let arg = self.store.deref(&args[0]);
                let arg_is_num = matches!(arg, Value::Num(_));
                let arg_is_op_atom = matches!(&arg, Value::Atom(a) if self.ops.is_op(a));
                if is_alpha_op(name) || ((name == "-" || name == "+") && arg_is_num) || arg_is_op_atom {
                    self.out.push(' ');
                }
                self.write(&arg, am);
                if paren {
                    self.out.push(')');
                }
                return;
            }
        }
        self.atom(name);
        self.out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.out.push(',');
            }
            self.write(a, 999);
        }
        self.out.push(')');
    }
}

/// Key used for first-argument clause selection: `name/arity` for atoms and
/// compounds, `#<number>` for integral numbers within the host's exact
/// range, `"<text>"` for strings; `None` for variables and other numbers.
/// Only functor keys contain a trailing `/digits`, only string keys end in
/// `"`, so keys of different kinds never collide.
/// A nonvar without a key selects only the clauses whose first argument is
/// not indexable.
pub fn index_key(v: &Value) -> Option<String> {
    match v {
        Value::Var(_) => None,
        Value::Atom(a) => Some(format!("{a}/0")),
        Value::Struct(c) => Some(format!("{}/{}", c.name, c.args.len())),
        Value::Num(x) => num_key(*x),
        Value::Str(s) => Some(format!("\"{s}\"")),
    }
}

pub fn num_key(x: f64) -> Option<String> {
    if x.fract() == 0.0 && x.abs() <= 9007199254740992.0 {
        Some(format!("#{}", fmt_num(x)))
    } else {
        None
    }
}

/// Names answer variables `_A`, `_B`, ... in order of first appearance, so
/// answers from different executions compare textually.
pub fn answer_text(store: &Store, bindings: &[(String, Value)]) -> String {
    let mut seen: Vec<usize> = Vec::new();
    let mut parts = Vec::new();
    for (name, v) in bindings {
        let mut namer = |i: usize| {
            let k = match seen.iter().position(|&s| s == i) {
                Some(k) => k,
                None => {
                    seen.push(i);
                    seen.len() - 1
                }
            };
            let mut s = String::from("_");
            let _ = write!(s, "{}", (b'A' + (k % 26) as u8) as char);
            if k >= 26 {
                let _ = write!(s, "{}", k / 26);
            }
            s
        };
        parts.push(format!("{name} = {}", store.format(v, true, &mut namer)));
    }
    parts.join(", ")
}

/// Reads a clause variable's binding back as a term over `VarId`s; used by
/// tests to compare structure.
pub fn to_term(store: &Store, v: &Value, vars: &mut Vec<usize>) -> Term {
    match store.deref(v) {
        Value::Var(i) => {
            let id: VarId = match vars.iter().position(|&x| x == i) {
                Some(p) => p,
                None => {
                    vars.push(i);
                    vars.len() - 1
                }
            };
            Term::Var(id)
        }
        Value::Atom(a) => Term::Atom(a.to_string()),
        Value::Num(x) => {
            if x.fract() == 0.0 && x.abs() < 9.0e15 {
                Term::Int(x as i64)
            } else {
                Term::Float(x)
            }
        }
        Value::Str(s) => Term::Str(s.to_string()),
        Value::Struct(c) => Term::Compound(
            c.name.to_string(),
            c.args.iter().map(|a| to_term(store, a, vars)).collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::OpTable;
    use crate::parser::parse_str;
    use crate::term::VarNumbering;

    fn value(store: &mut Store, src: &str) -> Value {
        let ast = parse_str(src, &OpTable::iso()).unwrap();
        let t = VarNumbering::new().convert(&ast);
        store.instantiate(&t, &mut Vec::new())
    }

    #[test]
    fn unify_binds_and_undoes() {
        let mut s = Store::new();
        let a = value(&mut s, "f(X, b)");
        let b = value(&mut s, "f(a, Y)");
        let m = s.mark();
        assert!(s.unify(&a, &b));
        assert_eq!(s.mark() - m, 2);
        assert_eq!(s.show(&a, true), "f(a,b)");
        s.undo(m);
        assert_eq!(s.show(&a, true), "f(_0,b)");
    }

    #[test]
    fn younger_variable_points_to_older() {
        let mut s = Store::new();
        let x = s.new_var();
        let y = s.new_var();
        assert!(s.unify(&x, &y));
        assert!(s.is_unbound(&x));
        assert!(matches!(s.deref(&y), Value::Var(0)));
    }

    #[test]
    fn arithmetic() {
        let mut s = Store::new();
        let t = value(&mut s, "2+3*4");
        assert_eq!(s.eval(&t).unwrap(), 14.0);
        let t = value(&mut s, "-7 // 2");
        assert_eq!(s.eval(&t).unwrap(), -3.0);
        let t = value(&mut s, "-7 mod 2");
        assert_eq!(s.eval(&t).unwrap(), 1.0);
        let t = value(&mut s, "7 / 2");
        assert_eq!(s.eval(&t).unwrap(), 3.5);
        let t = value(&mut s, "foo + 1");
        assert!(s.eval(&t).is_err());
    }

    #[test]
    fn standard_order() {
        let mut s = Store::new();
        let items = value(&mut s, "[_, 1, \"s\", a, f(x)]");
        let mut xs = Vec::new();
        let mut cur = items;
        while let Value::Struct(c) = s.deref(&cur) {
            xs.push(c.args[0].clone());
            cur = c.args[1].clone();
        }
        for w in xs.windows(2) {
            assert_eq!(s.compare(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn output_uses_operators_and_lists() {
        let mut s = Store::new();
        for (src, want) in [
            ("a+b*c", "a+b*c"),
            ("(a+b)*c", "(a+b)*c"),
            ("a-(-1)", "a- -1"),
            ("a-(b-c)", "a-(b-c)"),
            ("[1,2|T]", "[1,2|_0]"),
            ("f(a,(b,c))", "f(a,(b,c))"),
            ("X is 1+2", "_0 is 1+2"),
            ("- 1", "- 1"),
            ("-(a)", "-a"),
            ("\\+a", "\\+a"),
            ("1.5", "1.5"),
            ("2.0", "2"),
            ("'hello world'", "'hello world'"),
            ("{a,b}", "{a,b}"),
            ("(a:-b,c)", "a:-b,c"), ("f((a:-b))", "f((a:-b))"),
        ] {
            let mut st = Store::new();
            let v = value(&mut st, src);
            assert_eq!(st.show(&v, true), want, "{src}");
        }
        let v = value(&mut s, "'hello world'");
        assert_eq!(s.show(&v, false), "hello world");
    }

    #[test]
    fn js_number_text() {
        assert_eq!(fmt_num(3.0), "3");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.1), "0.1");
        assert_eq!(fmt_num(1e21), "1e+21");
        assert_eq!(fmt_num(1.5e-7), "1.5e-7");
        assert_eq!(fmt_num(123456.789), "123456.789");
    }
}
