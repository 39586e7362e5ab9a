//! Deterministic built-in predicates over a [`Store`], shared by the
//! reference interpreter and the IR executor. Control built-ins (`call/N`,
//! `between/3`, `halt/0`, cut) are left to the executors.

use std::cmp::Ordering;
use std::rc::Rc;

use crate::builtins::InlineOp;
use crate::store::{RunError, RunResult, Store, Value};

fn type_error<T>(what: &str, culprit: &str) -> RunResult<T> {
    Err(RunError(format!("type error: {what} expected, found {culprit}")))
}

fn list_items(store: &Store, v: &Value) -> RunResult<Vec<Value>> {
    let mut out = Vec::new();
    let mut cur = store.deref(v);
    loop {
        match &cur {
            Value::Atom(a) if &**a == "[]" => return Ok(out),
            Value::Struct(c) if &*c.name == "." && c.args.len() == 2 => {
                out.push(c.args[0].clone());
                cur = store.deref(&c.args[1]);
            }
            Value::Var(_) => return Err(RunError("instantiation error: partial list".into())),
            _ => return type_error("list", &store.show(&cur, true)),
        }
    }
}

fn int_of(store: &Store, v: &Value) -> RunResult<Option<i64>> {
    match store.deref(v) {
        Value::Var(_) => Ok(None),
        Value::Num(x) if x.fract() == 0.0 => Ok(Some(x as i64)),
        other => type_error("integer", &store.show(&other, true)),
    }
}

fn is_integer(v: &Value) -> bool {
    matches!(v, Value::Num(x) if x.fract() == 0.0 && x.is_finite())
}

/// Runs an inline built-in.
pub fn inline(store: &mut Store, op: InlineOp, args: &[Value]) -> RunResult<bool> {
    call_det(store, op.name(), args).expect("inline ops are deterministic built-ins")
}

/// Runs a deterministic built-in; `None` if `name/arity` is not one.
/// Failed unifications leave no bindings.
pub fn call_det(store: &mut Store, name: &str, args: &[Value]) -> Option<RunResult<bool>> {
    run(store, name, args)
}

fn cmp_num(store: &Store, args: &[Value]) -> RunResult<Ordering> {
    let x = store.eval(&args[0])?;
    let y = store.eval(&args[1])?;
    Ok(x.partial_cmp(&y).unwrap_or(Ordering::Equal))
}

fn run(store: &mut Store, name: &str, args: &[Value]) -> Option<RunResult<bool>> {
    let d = |i: usize| store.deref(&args[i]);
    let r: RunResult<bool> = match (name, args.len()) {
        ("=", 2) => Ok(store.unify_or_undo(&args[0], &args[1])),
        ("\\=", 2) => {
            let m = store.mark();
            let ok = store.unify(&args[0], &args[1]);
            store.undo(m);
            Ok(!ok)
        }
        ("==", 2) => Ok(store.compare(&args[0], &args[1]) == Ordering::Equal),
        ("\\==", 2) => Ok(store.compare(&args[0], &args[1]) != Ordering::Equal),
        ("@<", 2) => Ok(store.compare(&args[0], &args[1]) == Ordering::Less),
        ("@>", 2) => Ok(store.compare(&args[0], &args[1]) == Ordering::Greater),
        ("@=<", 2) => Ok(store.compare(&args[0], &args[1]) != Ordering::Greater),
        ("@>=", 2) => Ok(store.compare(&args[0], &args[1]) != Ordering::Less),
        ("compare", 3) => {
            let o = match store.compare(&args[1], &args[2]) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            Ok(store.unify_or_undo(&args[0], &Value::atom(o)))
        }
        ("var", 1) => Ok(matches!(d(0), Value::Var(_))),
        ("nonvar", 1) => Ok(!matches!(d(0), Value::Var(_))),
        ("atom", 1) => Ok(matches!(d(0), Value::Atom(_))),
        ("number", 1) => Ok(matches!(d(0), Value::Num(_))),
        ("integer", 1) => Ok(is_integer(&d(0))),
        ("float", 1) => Ok(matches!(d(0), Value::Num(_)) && !is_integer(&d(0))),
        ("atomic", 1) => Ok(matches!(d(0), Value::Atom(_) | Value::Num(_) | Value::Str(_))),
        ("compound", 1) => Ok(matches!(d(0), Value::Struct(_))),
        ("callable", 1) => Ok(matches!(d(0), Value::Atom(_) | Value::Struct(_))),
        ("string", 1) => Ok(matches!(d(0), Value::Str(_))),
        ("is_list", 1) => Ok(list_items(store, &args[0]).is_ok()),
        ("true", 0) => Ok(true),
        ("fail", 0) | ("false", 0) => Ok(false),
        ("is", 2) => store
            .eval(&args[1])
            .map(|x| store.unify_or_undo(&args[0], &Value::Num(x))),
        ("<", 2) => cmp_num(store, args).map(|o| o == Ordering::Less),
        (">", 2) => cmp_num(store, args).map(|o| o == Ordering::Greater),
        ("=<", 2) => cmp_num(store, args).map(|o| o != Ordering::Greater),
        (">=", 2) => cmp_num(store, args).map(|o| o != Ordering::Less),
        ("=:=", 2) => cmp_num(store, args).map(|o| o == Ordering::Equal),
        ("=\\=", 2) => cmp_num(store, args).map(|o| o != Ordering::Equal),
        ("succ", 2) => match int_of(store, &args[0]) {
            Ok(Some(x)) if x >= 0 => Ok(store.unify_or_undo(&args[1], &Value::int(x + 1))),
            Ok(Some(_)) => type_error("not_less_than_zero", "negative"),
            Ok(None) => match int_of(store, &args[1]) {
                Ok(Some(y)) if y > 0 => Ok(store.unify_or_undo(&args[0], &Value::int(y - 1))),
                Ok(Some(_)) => Ok(false),
                Ok(None) => Err(RunError("instantiation error in succ/2".into())),
                Err(e) => Err(e),
            },
            Err(e) => Err(e),
        },
        ("plus", 3) => {
            let (x, y, z) = (d(0), d(1), d(2));
            match (x, y, z) {
                (Value::Num(x), Value::Num(y), z) => Ok(store.unify_or_undo(&z, &Value::Num(x + y))),
                (Value::Num(x), y, Value::Num(z)) => Ok(store.unify_or_undo(&y, &Value::Num(z - x))),
                (x, Value::Num(y), Value::Num(z)) => Ok(store.unify_or_undo(&x, &Value::Num(z - y))),
                _ => Err(RunError("instantiation error in plus/3".into())),
            }
        }
        ("functor", 3) => functor(store, args),
        ("arg", 3) => match (int_of(store, &args[0]), d(1)) {
            (Ok(Some(n)), Value::Struct(c)) => {
                if n >= 1 && (n as usize) <= c.args.len() {
                    Ok(store.unify_or_undo(&args[2], &c.args[n as usize - 1]))
                } else {
                    Ok(false)
                }
            }
            (Ok(Some(_)), other) => type_error("compound", &store.show(&other, true)),
            (Ok(None), _) => Err(RunError("instantiation error in arg/3".into())),
            (Err(e), _) => Err(e),
        },
        ("=..", 2) => univ(store, args),
        ("copy_term", 2) => {
            let c = store.copy_term(&args[0]);
            Ok(store.unify_or_undo(&args[1], &c))
        }
        ("write", 1) | ("print", 1) => {
            let s = store.show(&args[0], false);
            store.out.push_str(&s);
            Ok(true)
        }
        ("writeq", 1) => {
            let s = store.show(&args[0], true);
            store.out.push_str(&s);
            Ok(true)
        }
        ("nl", 0) => {
            store.out.push('\n');
            Ok(true)
        }
        ("put_attr", 3) | ("get_attr", 3) | ("del_attr", 2) => Err(RunError(
            "attributed variables are not supported by this executor".into(),
        )),
        _ => return None,
    };
    Some(r)
}

fn functor(store: &mut Store, args: &[Value]) -> RunResult<bool> {
    match store.deref(&args[0]) {
        Value::Var(_) => {
            let name = store.deref(&args[1]);
            let arity = match int_of(store, &args[2])? {
                Some(a) => a,
                None => return Err(RunError("instantiation error in functor/3".into())),
            };
            let t = if arity == 0 {
                name
            } else {
                match name {
                    Value::Atom(a) => {
                        let vars = (0..arity).map(|_| store.new_var()).collect();
                        Value::compound(&a, vars)
                    }
                    Value::Var(_) => return Err(RunError("instantiation error in functor/3".into())),
                    other => return type_error("atom", &store.show(&other, true)),
                }
            };
            Ok(store.unify_or_undo(&args[0], &t))
        }
        Value::Struct(c) => {
            let m = store.mark();
            let ok = store.unify(&args[1], &Value::Atom(c.name.clone()))
                && store.unify(&args[2], &Value::int(c.args.len() as i64));
            if !ok {
                store.undo(m);
            }
            Ok(ok)
        }
        atomic => {
            let m = store.mark();
            let ok = store.unify(&args[1], &atomic) && store.unify(&args[2], &Value::int(0));
            if !ok {
                store.undo(m);
            }
            Ok(ok)
        }
    }
}

fn univ(store: &mut Store, args: &[Value]) -> RunResult<bool> {
    match store.deref(&args[0]) {
        Value::Var(_) => {
            let items = list_items(store, &args[1])?;
            let Some((head, rest)) = items.split_first() else {
                return Err(RunError("domain error: non_empty_list".into()));
            };
            let t = match store.deref(head) {
                Value::Atom(a) => Value::compound(&a, rest.to_vec()),
                h if rest.is_empty() => h,
                Value::Var(_) => return Err(RunError("instantiation error in =../2".into())),
                other => return type_error("atom", &store.show(&other, true)),
            };
            Ok(store.unify_or_undo(&args[0], &t))
        }
        Value::Struct(c) => {
            let mut items = vec![Value::Atom(Rc::clone(&c.name))];
            items.extend(c.args.iter().cloned());
            let l = Value::list(items, Value::atom("[]"));
            Ok(store.unify_or_undo(&args[1], &l))
        }
        atomic => {
            let l = Value::list(vec![atomic], Value::atom("[]"));
            Ok(store.unify_or_undo(&args[1], &l))
        }
    }
}

/// Goal term with `extra` arguments appended, as `call/N` builds it.
pub fn add_args(store: &Store, goal: &Value, extra: &[Value]) -> RunResult<Value> {
    match store.deref(goal) {
        Value::Var(_) => Err(RunError("instantiation error: unbound goal".into())),
        Value::Atom(a) => Ok(Value::compound(&a, extra.to_vec())),
        Value::Struct(c) if &*c.name == ":" && c.args.len() == 2 && !extra.is_empty() => {
            let inner = add_args(store, &c.args[1], extra)?;
            Ok(Value::compound(":", vec![c.args[0].clone(), inner]))
        }
        Value::Struct(c) => {
            let mut args = c.args.clone();
            args.extend(extra.iter().cloned());
            Ok(Value::compound(&c.name, args))
        }
        other => type_error("callable", &store.show(&other, true)),
    }
}
