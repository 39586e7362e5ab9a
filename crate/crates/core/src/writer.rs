//! Canonical term printing (quoted, no operator notation, list sugar).

use std::borrow::Cow;
use std::fmt::Write as _;

use crate::term::{AstKind, Term, TermAst, VarId};

fn is_symbol_char(c: char) -> bool {
    "+-*/\\^<>=~:.?@#&$".contains(c)
}

/// Whether `name` can be written without quotes.
pub fn atom_needs_quotes(name: &str) -> bool {
    if matches!(name, "[]" | "{}" | "!" | ";") {
        return false;
    }
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    if first.is_lowercase() {
        return !name.chars().all(|c| c.is_alphanumeric() || c == '_');
    }
    if is_symbol_char(first) {
        return name == "." || name.starts_with("/*") || !name.chars().all(is_symbol_char);
    }
    true
}

fn escape_into(out: &mut String, text: &str, quote: char) {
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c == quote => {
                out.push('\\');
                out.push(c);
            }
            c if c.is_control() => {
                let _ = write!(out, "\\x{:x}\\", c as u32);
            }
            c => out.push(c),
        }
    }
}

/// Atom text as `writeq` would print it.
pub fn quote_atom(name: &str) -> Cow<'_, str> {
    if !atom_needs_quotes(name) {
        return Cow::Borrowed(name);
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    escape_into(&mut out, name, '\'');
    out.push('\'');
    Cow::Owned(out)
}

pub fn quote_string(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    escape_into(&mut out, text, '"');
    out.push('"');
    out
}

/// Float text that always reads back as a float (`1.0`, `1.0e20`).
pub fn fmt_float(f: f64) -> String {
    if f.is_nan() {
        return "nan".into();
    }
    if f.is_infinite() {
        return if f > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{f:?}");
    match s.find('e') {
        Some(i) if !s[..i].contains('.') => format!("{}.0{}", &s[..i], &s[i..]),
        _ => s,
    }
}

/// Uniform view over the two term types so one printer serves both.
enum Node<'a, T> {
    Var(String),
    Atom(&'a str),
    Int(i64),
    Float(f64),
    Str(&'a str),
    Compound(&'a str, &'a [T]),
}

trait Printable: Sized {
    fn node(&self, var: &dyn Fn(VarId) -> String) -> Node<'_, Self>;
}

impl Printable for TermAst {
    fn node(&self, _var: &dyn Fn(VarId) -> String) -> Node<'_, Self> {
        match &self.kind {
            AstKind::Var(v) => Node::Var(v.clone()),
            AstKind::Atom(a) => Node::Atom(a),
            AstKind::Int(i) => Node::Int(*i),
            AstKind::Float(f) => Node::Float(*f),
            AstKind::Str(s) => Node::Str(s),
            AstKind::Compound(f, args) => Node::Compound(f, args),
        }
    }
}

impl Printable for Term {
    fn node(&self, var: &dyn Fn(VarId) -> String) -> Node<'_, Self> {
        match self {
            Term::Var(v) => Node::Var(var(*v)),
            Term::Atom(a) => Node::Atom(a),
            Term::Int(i) => Node::Int(*i),
            Term::Float(f) => Node::Float(*f),
            Term::Str(s) => Node::Str(s),
            Term::Compound(f, args) => Node::Compound(f, args),
        }
    }
}

fn write_canonical<T: Printable>(t: &T, var: &dyn Fn(VarId) -> String, out: &mut String) {
    match t.node(var) {
        Node::Var(v) => out.push_str(&v),
        Node::Atom(a) => out.push_str(&quote_atom(a)),
        Node::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Node::Float(f) => out.push_str(&fmt_float(f)),
        Node::Str(s) => out.push_str(&quote_string(s)),
        Node::Compound(".", [head, tail]) => {
            out.push('[');
            write_canonical(head, var, out);
            let mut cur = tail;
            loop {
                match cur.node(var) {
                    Node::Atom("[]") => break,
                    Node::Compound(".", [h, t]) => {
                        out.push(',');
                        write_canonical(h, var, out);
                        cur = t;
                    }
                    _ => {
                        out.push('|');
                        write_canonical(cur, var, out);
                        break;
                    }
                }
            }
            out.push(']');
        }
        Node::Compound(f, args) => {
            out.push_str(&quote_atom(f));
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(a, var, out);
            }
            out.push(')');
        }
    }
}

/// Canonical text of a reader term; variables print under their source names.
pub fn canonical_ast(t: &TermAst) -> String {
    let mut out = String::new();
    write_canonical(t, &|_| String::new(), &mut out);
    out
}

/// Canonical text of a clause term; variable `i` prints as `_i` unless
/// `names` supplies a name for it.
pub fn canonical_term(t: &Term, names: &[String]) -> String {
    let mut out = String::new();
    let var = |v: VarId| match names.get(v) {
        Some(n) if !n.is_empty() && !n.starts_with('_') => n.clone(),
        _ => format!("_{v}"),
    };
    write_canonical(t, &var, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_quoting() {
        assert_eq!(quote_atom("abc"), "abc");
        assert_eq!(quote_atom("[]"), "[]");
        assert_eq!(quote_atom("+"), "+");
        assert_eq!(quote_atom("=.."), "=..");
        assert_eq!(quote_atom(","), "','");
        assert_eq!(quote_atom("."), "'.'");
        assert_eq!(quote_atom("p q"), "'p q'");
        assert_eq!(quote_atom("Abc"), "'Abc'");
        assert_eq!(quote_atom("it's"), "'it\\'s'");
        assert_eq!(quote_atom(""), "''");
        assert_eq!(quote_atom("p/1$d0"), "'p/1$d0'");
    }

    #[test]
    fn floats_keep_a_fraction() {
        assert_eq!(fmt_float(1.0), "1.0");
        assert_eq!(fmt_float(1e20), "1.0e20");
        assert_eq!(fmt_float(-2.5), "-2.5");
        assert_eq!(fmt_float(1.5e-7), "1.5e-7");
    }

    #[test]
    fn clause_terms() {
        let t = Term::compound(
            "f",
            vec![Term::Var(0), Term::list(vec![Term::Int(1)], Term::Var(1)), Term::Str("a\"b".into())],
        );
        assert_eq!(canonical_term(&t, &["X".into()]), "f(X,[1|_1],\"a\\\"b\")");
    }
}
