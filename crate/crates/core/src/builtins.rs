//! Built-in predicates known to the compiler: which ones compile inline,
//! which runtime module provides the callable ones, and the bundled library
//! modules written in Prolog.

/// Built-ins compiled to inline steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InlineOp {
    Unify,
    Is,
    Lt,
    Gt,
    Le,
    Ge,
    NumEq,
    NumNe,
    Var,
    Nonvar,
    Fail,
}

impl InlineOp {
    pub fn from_goal(name: &str, arity: usize) -> Option<InlineOp> {
        use InlineOp::*;
        Some(match (name, arity) {
            ("=", 2) => Unify,
            ("is", 2) => Is,
            ("<", 2) => Lt,
            (">", 2) => Gt,
            ("=<", 2) => Le,
            (">=", 2) => Ge,
            ("=:=", 2) => NumEq,
            ("=\\=", 2) => NumNe,
            ("var", 1) => Var,
            ("nonvar", 1) => Nonvar,
            ("fail", 0) | ("false", 0) => Fail,
            _ => return None,
        })
    }

    /// Source-level name, used in IR dumps.
    pub fn name(self) -> &'static str {
        use InlineOp::*;
        match self {
            Unify => "=",
            Is => "is",
            Lt => "<",
            Gt => ">",
            Le => "=<",
            Ge => ">=",
            NumEq => "=:=",
            NumNe => "=\\=",
            Var => "var",
            Nonvar => "nonvar",
            Fail => "fail",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            InlineOp::Var | InlineOp::Nonvar => 1,
            InlineOp::Fail => 0,
            _ => 2,
        }
    }
}

/// Highest `N` for which `call/N` is provided.
pub const MAX_CALL_ARITY: usize = 8;

const TERM_BASIC: &[(&str, usize)] = &[
    ("=", 2),
    ("\\=", 2),
    ("==", 2),
    ("\\==", 2),
    ("@<", 2),
    ("@>", 2),
    ("@=<", 2),
    ("@>=", 2),
    ("compare", 3),
    ("var", 1),
    ("nonvar", 1),
    ("atom", 1),
    ("number", 1),
    ("integer", 1),
    ("float", 1),
    ("atomic", 1),
    ("compound", 1),
    ("callable", 1),
    ("is_list", 1),
    ("string", 1),
    ("functor", 3),
    ("arg", 3),
    ("=..", 2),
    ("copy_term", 2),
    ("true", 0),
    ("fail", 0),
    ("false", 0),
    ("halt", 0),
];

const ARITHMETIC: &[(&str, usize)] = &[
    ("is", 2),
    ("<", 2),
    (">", 2),
    ("=<", 2),
    (">=", 2),
    ("=:=", 2),
    ("=\\=", 2),
    ("between", 3),
    ("succ", 2),
    ("plus", 3),
];

const IO: &[(&str, usize)] = &[("write", 1), ("writeq", 1), ("print", 1), ("nl", 0)];

const ATTR: &[(&str, usize)] = &[("put_attr", 3), ("get_attr", 3), ("del_attr", 2)];

/// Runtime modules providing callable built-ins, in lookup order.
pub const BUILTIN_MODULES: &[(&str, &[(&str, usize)])] = &[
    ("term_basic", TERM_BASIC),
    ("arithmetic", ARITHMETIC),
    ("io", IO),
    ("attr", ATTR),
];

/// Whether `name/arity` is `call/N`.
pub fn is_call(name: &str, arity: usize) -> bool {
    name == "call" && (1..=MAX_CALL_ARITY).contains(&arity)
}

/// Runtime module that provides `name/arity`, if it is a callable built-in.
pub fn builtin_module(name: &str, arity: usize) -> Option<&'static str> {
    if is_call(name, arity) {
        return Some("term_basic");
    }
    BUILTIN_MODULES
        .iter()
        .find(|(_, preds)| preds.contains(&(name, arity)))
        .map(|(m, _)| *m)
}

pub fn is_builtin_module(name: &str) -> bool {
    BUILTIN_MODULES.iter().any(|(m, _)| *m == name)
}

/// Library modules shipped as Prolog source, available to `use_module`.
pub const LIBRARY: &[(&str, &str)] = &[
    ("lists", include_str!("../lib/lists.pl")),
    ("freeze", include_str!("../lib/freeze.pl")),
];

pub fn library_source(name: &str) -> Option<&'static str> {
    LIBRARY.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(builtin_module("functor", 3), Some("term_basic"));
        assert_eq!(builtin_module("between", 3), Some("arithmetic"));
        assert_eq!(builtin_module("call", 4), Some("term_basic"));
        assert_eq!(builtin_module("nl", 0), Some("io"));
        assert_eq!(builtin_module("append", 3), None);
        assert_eq!(InlineOp::from_goal("=<", 2), Some(InlineOp::Le));
        assert_eq!(InlineOp::from_goal("==", 2), None);
    }

    #[test]
    fn library_modules_read() {
        for (name, src) in LIBRARY {
            let (m, w) = crate::reader::read_module(src).unwrap();
            assert_eq!(&m.name, name);
            assert!(w.is_empty(), "{w:?}");
        }
    }
}
