//! Foreign declarations: `pred` assertions carrying a `js:foreign(Body)`
//! property, `js:foreign_class` blocks, receiver-class inference for
//! `Obj:method(...)` goals, and stub emission.
//!
//! A foreign class is exposed as a module named after the class whose
//! predicates are the class methods, each taking the receiver as its first
//! argument.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result, Warning};
use crate::term::{AstKind, Pos, TermAst};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForeignType {
    Number,
    String,
    Atom,
    /// Passed through without boxing.
    Term,
    /// Wrapper kind declared by a `foreign_class` block.
    Class(String),
}

impl ForeignType {
    fn from_name(name: &str) -> ForeignType {
        match name {
            "number" | "num" | "int" | "integer" | "float" => ForeignType::Number,
            "string" => ForeignType::String,
            "atom" => ForeignType::Atom,
            "term" | "any" => ForeignType::Term,
            other => ForeignType::Class(other.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ForeignType::Number => "number",
            ForeignType::String => "string",
            ForeignType::Atom => "atom",
            ForeignType::Term => "term",
            ForeignType::Class(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForeignArg {
    pub mode: Mode,
    pub ty: ForeignType,
    /// Variable name from the declaration (`+X`); inputs are visible to the
    /// foreign body under this name.
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForeignDecl {
    pub name: String,
    /// Declared arguments; a method's receiver is not included.
    pub args: Vec<ForeignArg>,
    /// Target-language function body, verbatim.
    pub body: String,
    /// Owning foreign class for methods.
    pub class: Option<String>,
    pub pos: Pos,
}

impl ForeignDecl {
    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// Arity of the generated predicate (methods gain the receiver).
    pub fn pred_arity(&self) -> usize {
        self.args.len() + usize::from(self.class.is_some())
    }

    pub fn output(&self) -> Option<(usize, &ForeignArg)> {
        self.args.iter().enumerate().find(|(_, a)| a.mode == Mode::Out)
    }

    pub fn modes(&self) -> Vec<Mode> {
        self.args.iter().map(|a| a.mode).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForeignClassDecl {
    pub name: String,
    pub methods: Vec<ForeignDecl>,
    pub pos: Pos,
}

impl ForeignClassDecl {
    pub fn method(&self, name: &str, arity: usize) -> Option<&ForeignDecl> {
        self.methods.iter().find(|m| m.name == name && m.arity() == arity)
    }
}

fn text_of(t: &TermAst) -> Option<&str> {
    match &t.kind {
        AstKind::Str(s) | AstKind::Atom(s) => Some(s),
        _ => None,
    }
}

fn conjuncts<'a>(t: &'a TermAst, out: &mut Vec<&'a TermAst>) {
    if t.is_functor(",", 2) {
        conjuncts(&t.args()[0], out);
        conjuncts(&t.args()[1], out);
    } else {
        out.push(t);
    }
}

fn product<'a>(t: &'a TermAst, out: &mut Vec<&'a TermAst>) {
    if t.is_functor("*", 2) {
        product(&t.args()[0], out);
        product(&t.args()[1], out);
    } else {
        out.push(t);
    }
}

/// Parses the argument of a `pred` directive. Returns `Ok(None)` for
/// assertions that carry no `js:foreign` property.
pub fn parse_foreign_decl(
    assertion: &TermAst,
    class: Option<&str>,
    warnings: &mut Vec<Warning>,
) -> Result<Option<ForeignDecl>> {
    let (head, types, comp) = if assertion.is_functor("::", 2) {
        let rest = &assertion.args()[1];
        if rest.is_functor("+", 2) {
            (&assertion.args()[0], Some(&rest.args()[0]), Some(&rest.args()[1]))
        } else {
            (&assertion.args()[0], Some(rest), None)
        }
    } else if assertion.is_functor("+", 2) {
        (&assertion.args()[0], None, Some(&assertion.args()[1]))
    } else {
        (assertion, None, None)
    };

    let Some(comp) = comp else { return Ok(None) };
    let mut props = Vec::new();
    conjuncts(comp, &mut props);
    let mut body = None;
    for p in props {
        if p.is_functor(":", 2) && p.args()[0].atom_name() == Some("js") && p.args()[1].is_functor("foreign", 1) {
            let text = &p.args()[1].args()[0];
            match text_of(text) {
                Some(s) => body = Some(s.to_string()),
                None => return Err(Error::foreign(text.pos, "js:foreign body must be a string")),
            }
            continue;
        }
        match p.atom_name() {
            Some("det" | "is_det" | "semidet" | "not_fails" | "no_choicepoints") => {}
            Some(nd @ ("nondet" | "non_det" | "multi" | "possibly_nondet")) => {
                return Err(Error::foreign(
                    p.pos,
                    format!("nondeterministic foreign predicates are not supported (`{nd}`)"),
                ))
            }
            _ => warnings.push(Warning::new(Some(p.pos), "unsupported assertion property ignored")),
        }
    }
    let Some(body) = body else { return Ok(None) };

    let Some((name, _)) = head.functor() else {
        return Err(Error::foreign(head.pos, "foreign declaration head must be callable"));
    };
    let mut args = Vec::new();
    for a in head.args() {
        let (mode, spec) = if a.is_functor("+", 1) {
            (Mode::In, &a.args()[0])
        } else if a.is_functor("-", 1) {
            (Mode::Out, &a.args()[0])
        } else {
            warnings.push(Warning::new(Some(a.pos), "argument mode missing; assuming `+`"));
            (Mode::In, a)
        };
        let arg = match &spec.kind {
            AstKind::Var(v) => ForeignArg {
                mode,
                ty: ForeignType::Term,
                name: Some(v.clone()),
            },
            AstKind::Atom(t) => ForeignArg {
                mode,
                ty: ForeignType::from_name(t),
                name: None,
            },
            _ => return Err(Error::foreign(spec.pos, "expected a variable or a type name")),
        };
        args.push(arg);
    }
    if let Some(types) = types {
        let mut tys = Vec::new();
        product(types, &mut tys);
        if tys.len() != args.len() {
            return Err(Error::foreign(
                types.pos,
                format!("`::` lists {} types for {} arguments", tys.len(), args.len()),
            ));
        }
        for (arg, t) in args.iter_mut().zip(tys) {
            let Some(tn) = t.atom_name() else {
                return Err(Error::foreign(t.pos, "type must be an atom"));
            };
            arg.ty = ForeignType::from_name(tn);
        }
    }
    if args.iter().filter(|a| a.mode == Mode::Out).count() > 1 {
        return Err(Error::foreign(head.pos, "at most one output argument is supported"));
    }
    Ok(Some(ForeignDecl {
        name: name.to_string(),
        args,
        body,
        class: class.map(str::to_string),
        pos: assertion.pos,
    }))
}

/// Looks up the foreign declaration a goal resolves to, given the optional
/// explicit module qualifier, name and arity.
pub trait ForeignLookup {
    fn foreign_pred(&self, module: Option<&str>, name: &str, arity: usize) -> Option<&ForeignDecl>;
    fn foreign_class(&self, name: &str) -> Option<&ForeignClassDecl>;
}

/// Rewrites `Obj:method(Args)` goals in a clause body into
/// `Class:method(Obj, Args)`, inferring each receiver's class from earlier
/// `-Class` outputs in the same clause.
pub fn resolve_method_calls(body: &TermAst, lookup: &dyn ForeignLookup) -> Result<TermAst> {
    let mut env = HashMap::new();
    rewrite(body, lookup, &mut env)
}

fn record_outputs(
    decl: &ForeignDecl,
    args: &[TermAst],
    offset: usize,
    env: &mut HashMap<String, String>,
) {
    for (i, a) in decl.args.iter().enumerate() {
        if let (Mode::Out, ForeignType::Class(c)) = (a.mode, &a.ty) {
            if let Some(AstKind::Var(v)) = args.get(i + offset).map(|t| &t.kind) {
                env.insert(v.clone(), c.clone());
            }
        }
    }
}

fn rewrite(
    goal: &TermAst,
    lookup: &dyn ForeignLookup,
    env: &mut HashMap<String, String>,
) -> Result<TermAst> {
    let pos = goal.pos;
    if let Some((f, 2)) = goal.functor() {
        if matches!(f, "," | ";" | "->") {
            let l = rewrite(&goal.args()[0], lookup, env)?;
            let r = rewrite(&goal.args()[1], lookup, env)?;
            return Ok(TermAst::compound(f, vec![l, r], pos));
        }
    }
    if goal.is_functor("\\+", 1) {
        let g = rewrite(&goal.args()[0], lookup, env)?;
        return Ok(TermAst::compound("\\+", vec![g], pos));
    }
    if goal.is_functor(":", 2) {
        let (recv, call) = (&goal.args()[0], &goal.args()[1]);
        if let AstKind::Var(v) = &recv.kind {
            let Some((mname, marity)) = call.functor() else {
                return Err(Error::foreign(pos, "method call must be callable"));
            };
            let class = env.get(v).cloned().ok_or_else(|| {
                Error::foreign(
                    pos,
                    format!(
                        "receiver class of `{}` not statically known",
                        crate::writer::canonical_ast(goal)
                    ),
                )
            })?;
            let decl = lookup
                .foreign_class(&class)
                .and_then(|c| c.method(mname, marity))
                .ok_or_else(|| {
                    Error::foreign(pos, format!("class `{class}` has no method {mname}/{marity}"))
                })?;
            let mut args = vec![recv.clone()];
            args.extend(call.args().iter().cloned());
            record_outputs(decl, &args, 1, env);
            let inner = TermAst::compound(mname, args, call.pos);
            return Ok(TermAst::compound(":", vec![TermAst::atom(class, recv.pos), inner], pos));
        }
        if let (Some(m), Some((n, a))) = (recv.atom_name(), call.functor()) {
            if let Some(decl) = lookup.foreign_pred(Some(m), n, a) {
                let offset = usize::from(decl.class.is_some());
                record_outputs(decl, call.args(), offset, env);
            }
        }
        return Ok(goal.clone());
    }
    if let Some((n, a)) = goal.functor() {
        if let Some(decl) = lookup.foreign_pred(None, n, a) {
            let offset = usize::from(decl.class.is_some());
            record_outputs(decl, goal.args(), offset, env);
        }
    }
    Ok(goal.clone())
}

/// Local identifier fragments for the emitted stub.
pub struct StubNames<'a> {
    /// Constructor-valued expression for each foreign class used in boxing or
    /// receiver checks.
    pub class_ctor: &'a dyn Fn(&str) -> String,
    /// Name of the local variable holding the foreign function.
    pub function: &'a str,
}

/// Emits the JavaScript `execute` body of a foreign stub: unbox inputs,
/// call the foreign function, box and unify the output, then succeed
/// deterministically.
pub fn emit_foreign_stub(decl: &ForeignDecl, names: &StubNames<'_>) -> String {
    let mut out = String::new();
    let offset = usize::from(decl.class.is_some());
    out.push_str("    var g = w.goal;\n");
    let receiver = match &decl.class {
        Some(c) => format!("$rt.unbox_obj(g.a0, {})", (names.class_ctor)(c)),
        None => "null".to_string(),
    };
    let mut params = Vec::new();
    for (i, a) in decl.args.iter().enumerate() {
        if a.mode == Mode::In {
            let src = format!("g.a{}", i + offset);
            let v = match &a.ty {
                ForeignType::Number => format!("$rt.unbox_num({src})"),
                ForeignType::String => format!("$rt.unbox_str({src})"),
                ForeignType::Atom => format!("$rt.unbox_atom({src})"),
                ForeignType::Term => format!("{src}.deref()"),
                ForeignType::Class(c) => format!("$rt.unbox_obj({src}, {})", (names.class_ctor)(c)),
            };
            params.push(v);
        }
    }
    let call = format!("{}.call({}{}{})", names.function, receiver, if params.is_empty() { "" } else { ", " }, params.join(", "));
    match decl.output() {
        Some((i, a)) => {
            let _ = writeln!(out, "    var r = {call};");
            let boxed = match &a.ty {
                ForeignType::Number => "new $num(r)".to_string(),
                ForeignType::String => "new $str(r)".to_string(),
                ForeignType::Atom => "$rt.atom(r)".to_string(),
                ForeignType::Term => "r".to_string(),
                ForeignType::Class(c) => format!("new ({})(r)", (names.class_ctor)(c)),
            };
            let _ = writeln!(out, "    if (!$unify(w, g.a{}, {boxed})) return $fail;", i + offset);
        }
        None => {
            let _ = writeln!(out, "    {call};");
        }
    }
    out.push_str("    return w.cont;\n");
    out
}

/// Parameter list of the foreign function: the names of the input
/// arguments, in order.
pub fn foreign_params(decl: &ForeignDecl) -> Vec<String> {
    decl.args
        .iter()
        .enumerate()
        .filter(|(_, a)| a.mode == Mode::In)
        .map(|(i, a)| a.name.clone().unwrap_or_else(|| format!("_{i}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::OpTable;
    use crate::parser::parse_str;

    fn decl(src: &str) -> (Option<ForeignDecl>, Vec<Warning>) {
        let t = parse_str(src, &OpTable::with_assertions()).unwrap();
        let mut w = Vec::new();
        let d = parse_foreign_decl(&t.args()[0].args()[0], None, &mut w).unwrap();
        (d, w)
    }

    #[test]
    fn document_declaration() {
        let (d, w) = decl(":- pred document(-element) + js:foreign(\"return document;\").");
        let d = d.unwrap();
        assert!(w.is_empty());
        assert_eq!(d.name, "document");
        assert_eq!(
            d.args,
            vec![ForeignArg {
                mode: Mode::Out,
                ty: ForeignType::Class("element".into()),
                name: None
            }]
        );
        assert_eq!(d.body, "return document;");
    }

    #[test]
    fn typed_input() {
        let (d, _) = decl(":- pred set_innerHtml(+X) :: string + js:foreign(\"this.innerHtml=X;\").");
        let d = d.unwrap();
        assert_eq!(d.args[0].mode, Mode::In);
        assert_eq!(d.args[0].ty, ForeignType::String);
        assert_eq!(d.args[0].name.as_deref(), Some("X"));
        assert_eq!(foreign_params(&d), vec!["X".to_string()]);
    }

    #[test]
    fn two_inputs_one_output() {
        let (d, _) = decl(":- pred add(+A, +B, -C) :: number * number * number + js:foreign(\"return A+B;\").");
        assert_eq!(d.unwrap().modes(), vec![Mode::In, Mode::In, Mode::Out]);
    }

    #[test]
    fn missing_mode_defaults_to_input_with_warning() {
        let (d, w) = decl(":- pred log(X) + js:foreign(\"console.log(X);\").");
        assert_eq!(d.unwrap().modes(), vec![Mode::In]);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn assertion_without_foreign_is_not_a_decl() {
        let (d, _) = decl(":- pred p(+int).");
        assert!(d.is_none());
    }

    #[test]
    fn rejects_non_text_body_and_nondeterminism() {
        let ops = OpTable::with_assertions();
        let mut w = Vec::new();
        let t = parse_str(":- pred p(+X) + js:foreign(42).", &ops).unwrap();
        assert!(parse_foreign_decl(&t.args()[0].args()[0], None, &mut w).is_err());
        let t = parse_str(":- pred p(+X) + (js:foreign(\"x\"), nondet).", &ops).unwrap();
        assert!(parse_foreign_decl(&t.args()[0].args()[0], None, &mut w).is_err());
    }
}
