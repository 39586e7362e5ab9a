//! Module reader: turns a source file into clauses plus module metadata
//! (name, exports, imports, operator declarations, foreign declarations).

use std::collections::BTreeSet;

use crate::error::{Error, Result, Warning};
use crate::ffi::{parse_foreign_decl, ForeignClassDecl, ForeignDecl};
use crate::lexer::{tokenize, TokenKind};
use crate::ops::{OpTable, OpType};
use crate::parser::TermReader;
use crate::term::{AstKind, Functor, Pos, TermAst};

#[derive(Clone, Debug, PartialEq)]
pub enum ImportList {
    All,
    Only(Vec<Functor>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Import {
    pub module: String,
    pub preds: ImportList,
    pub pos: Pos,
}

impl Import {
    pub fn includes(&self, f: &Functor) -> bool {
        match &self.preds {
            ImportList::All => true,
            ImportList::Only(fs) => fs.contains(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SourceClause {
    pub head: TermAst,
    pub body: TermAst,
    pub pos: Pos,
}

impl SourceClause {
    pub fn functor(&self) -> Functor {
        let (n, a) = self.head.functor().expect("clause heads are callable");
        Functor::new(n, a)
    }
}

#[derive(Clone, Debug)]
pub struct ModuleAst {
    pub name: String,
    /// `None` for the implicit `user` module, which exports everything.
    pub exports: Option<Vec<Functor>>,
    pub imports: Vec<Import>,
    pub clauses: Vec<SourceClause>,
    pub foreign_decls: Vec<ForeignDecl>,
    pub foreign_classes: Vec<ForeignClassDecl>,
    /// Operator table in effect at the end of the file.
    pub ops: OpTable,
}

impl ModuleAst {
    /// Predicates defined in this module, in order of first definition.
    pub fn defined(&self) -> Vec<Functor> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let all = self
            .clauses
            .iter()
            .map(|c| c.functor())
            .chain(self.foreign_decls.iter().map(|d| Functor::new(&d.name, d.arity())));
        for f in all {
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
        out
    }

    pub fn exported(&self) -> Vec<Functor> {
        match &self.exports {
            Some(e) => e.clone(),
            None => self.defined(),
        }
    }

    pub fn exports_pred(&self, f: &Functor) -> bool {
        match &self.exports {
            Some(e) => e.contains(f),
            None => self.defined().contains(f),
        }
    }

    pub fn foreign_class(&self, name: &str) -> Option<&ForeignClassDecl> {
        self.foreign_classes.iter().find(|c| c.name == name)
    }
}

fn functor_spec(t: &TermAst) -> Result<Functor> {
    if t.is_functor("/", 2) {
        if let (Some(n), AstKind::Int(a)) = (t.args()[0].atom_name(), &t.args()[1].kind) {
            if *a >= 0 {
                return Ok(Functor::new(n, *a as usize));
            }
        }
    }
    Err(Error::module(t.pos, "expected a predicate indicator Name/Arity"))
}

fn functor_list(t: &TermAst) -> Result<Vec<Functor>> {
    let items = t
        .list_items()
        .ok_or_else(|| Error::module(t.pos, "expected a list of predicate indicators"))?;
    items.into_iter().map(functor_spec).collect()
}

fn module_spec(t: &TermAst) -> Result<String> {
    if let Some(a) = t.atom_name() {
        return Ok(a.to_string());
    }
    if t.is_functor("library", 1) {
        if let Some(a) = t.args()[0].atom_name() {
            return Ok(a.to_string());
        }
    }
    Err(Error::module(t.pos, "expected a module name or library(Name)"))
}

fn op_directive(args: &[TermAst], ops: &mut OpTable) -> Result<()> {
    let pos = args[0].pos;
    let prio = match &args[0].kind {
        AstKind::Int(p) if (0..=1200).contains(p) => *p as u16,
        _ => return Err(Error::module(pos, "operator priority must be an integer in 0..1200")),
    };
    let typ = args[1]
        .atom_name()
        .and_then(OpType::parse)
        .ok_or_else(|| Error::module(args[1].pos, "invalid operator type"))?;
    let names: Vec<&TermAst> = match args[2].list_items() {
        Some(items) if args[2].atom_name() != Some("[]") => items,
        _ => vec![&args[2]],
    };
    for n in names {
        let name = n
            .atom_name()
            .ok_or_else(|| Error::module(n.pos, "operator name must be an atom"))?;
        if name == "," {
            return Err(Error::module(n.pos, "cannot redefine `,`"));
        }
        ops.add(prio, typ, name);
    }
    Ok(())
}

struct ModuleBuilder {
    module: Option<(String, Vec<Functor>, Pos)>,
    imports: Vec<Import>,
    clauses: Vec<SourceClause>,
    foreign_decls: Vec<ForeignDecl>,
    foreign_classes: Vec<ForeignClassDecl>,
    ops: OpTable,
    warnings: Vec<Warning>,
    seen_items: bool,
}

impl ModuleBuilder {
    fn directive(&mut self, d: &TermAst) -> Result<()> {
        let pos = d.pos;
        match d.functor() {
            Some(("module", 2)) => {
                if self.seen_items || self.module.is_some() {
                    return Err(Error::module(pos, "module/2 must be the first directive"));
                }
                let name = d.args()[0]
                    .atom_name()
                    .ok_or_else(|| Error::module(pos, "module name must be an atom"))?;
                let exports = functor_list(&d.args()[1])?;
                self.module = Some((name.to_string(), exports, pos));
            }
            Some(("use_module", 1)) => self.imports.push(Import {
                module: module_spec(&d.args()[0])?,
                preds: ImportList::All,
                pos,
            }),
            Some(("use_module", 2)) => self.imports.push(Import {
                module: module_spec(&d.args()[0])?,
                preds: ImportList::Only(functor_list(&d.args()[1])?),
                pos,
            }),
            Some(("op", 3)) => op_directive(d.args(), &mut self.ops)?,
            Some(("pred", 1)) => {
                match parse_foreign_decl(&d.args()[0], None, &mut self.warnings)? {
                    Some(decl) => self.foreign_decls.push(decl),
                    None => self
                        .warnings
                        .push(Warning::new(Some(pos), "assertion without js:foreign ignored")),
                }
            }
            _ => {
                let what = match d.functor() {
                    Some((n, a)) => format!("{}/{a}", crate::writer::quote_atom(n)),
                    None => crate::writer::canonical_ast(d),
                };
                self.warnings
                    .push(Warning::new(Some(pos), format!("unsupported directive {what} ignored")));
            }
        }
        if !d.is_functor("module", 2) {
            self.seen_items = true;
        }
        Ok(())
    }

    fn clause(&mut self, t: TermAst) -> Result<()> {
        let pos = t.pos;
        let (head, body) = if t.is_functor(":-", 2) {
            let mut args = match t.kind {
                AstKind::Compound(_, args) => args,
                _ => unreachable!(),
            };
            let body = args.pop().unwrap();
            (args.pop().unwrap(), body)
        } else if t.is_functor("-->", 2) {
            return Err(Error::module(pos, "grammar rules are not supported"));
        } else {
            (t, TermAst::atom("true", pos))
        };
        if !head.is_callable() {
            return Err(Error::module(head.pos, "clause head must be callable"));
        }
        if head.is_functor(":", 2) {
            return Err(Error::module(head.pos, "module-qualified clause heads are not supported"));
        }
        if matches!(body.kind, AstKind::Int(_) | AstKind::Float(_) | AstKind::Str(_)) {
            return Err(Error::module(body.pos, "clause body must be callable"));
        }
        self.seen_items = true;
        self.clauses.push(SourceClause { head, body, pos });
        Ok(())
    }

    /// `:- js:foreign_class Name { :- pred ... . ... }.`, read token by token
    /// since the braces do not form a term.
    fn foreign_class_block(&mut self, r: &mut TermReader) -> Result<()> {
        let pos = r.peek().unwrap().pos;
        let name = match r.peek_n(4).map(|t| &t.kind) {
            Some(TokenKind::Atom(n)) => n.clone(),
            _ => return Err(Error::module(pos, "expected a class name after js:foreign_class")),
        };
        if !r.peek_n(5).is_some_and(|t| t.is_punct('{')) {
            return Err(Error::module(pos, "expected `{` after the class name"));
        }
        r.advance(6);
        let mut methods: Vec<ForeignDecl> = Vec::new();
        loop {
            match r.peek() {
                None => return Err(Error::module(pos, "unterminated foreign_class block")),
                Some(t) if t.is_punct('}') => {
                    r.advance(1);
                    break;
                }
                _ => {}
            }
            let item = r.next_clause(&self.ops)?.expect("not at eof");
            let ok = item.is_functor(":-", 1) && item.args()[0].is_functor("pred", 1);
            if !ok {
                return Err(Error::module(item.pos, "only `:- pred` declarations may appear in a foreign_class block"));
            }
            let decl = parse_foreign_decl(&item.args()[0].args()[0], Some(&name), &mut self.warnings)?
                .ok_or_else(|| Error::foreign(item.pos, "method declaration lacks js:foreign"))?;
            if methods.iter().any(|m| m.name == decl.name && m.arity() == decl.arity()) {
                return Err(Error::foreign(item.pos, format!("duplicate method {}/{}", decl.name, decl.arity())));
            }
            methods.push(decl);
        }
        match r.peek() {
            Some(t) if t.kind == TokenKind::End => r.advance(1),
            Some(t) => return Err(Error::syntax(t.pos, "expected `.` after foreign_class block")),
            None => return Err(Error::syntax(pos, "expected `.` after foreign_class block")),
        }
        if self.foreign_classes.iter().any(|c| c.name == name) {
            return Err(Error::foreign(pos, format!("foreign class `{name}` declared twice")));
        }
        self.seen_items = true;
        self.foreign_classes.push(ForeignClassDecl { name, methods, pos });
        Ok(())
    }
}

fn at_foreign_class(r: &TermReader) -> bool {
    let tok = |i: usize, s: &str| r.peek_n(i).is_some_and(|t| t.is_atom(s));
    tok(0, ":-") && tok(1, "js") && tok(2, ":") && tok(3, "foreign_class")
}

/// Reads one module. Returns the module and any non-fatal diagnostics.
pub fn read_module(source: &str) -> Result<(ModuleAst, Vec<Warning>)> {
    let mut r = TermReader::new(tokenize(source)?);
    let mut b = ModuleBuilder {
        module: None,
        imports: Vec::new(),
        clauses: Vec::new(),
        foreign_decls: Vec::new(),
        foreign_classes: Vec::new(),
        ops: OpTable::with_assertions(),
        warnings: Vec::new(),
        seen_items: false,
    };
    let mut ended = false;
    loop {
        if at_foreign_class(&r) {
            if ended {
                return Err(Error::module(r.peek().unwrap().pos, "clause after end_of_file"));
            }
            b.foreign_class_block(&mut r)?;
            continue;
        }
        let Some(t) = r.next_clause(&b.ops)? else { break };
        if ended {
            return Err(Error::module(t.pos, "clause after end_of_file"));
        }
        if t.atom_name() == Some("end_of_file") {
            ended = true;
        } else if t.is_functor(":-", 1) {
            b.directive(&t.args()[0])?;
        } else if t.is_functor("?-", 1) {
            b.warnings.push(Warning::new(Some(t.pos), "queries in source files are ignored"));
        } else {
            b.clause(t)?;
        }
    }

    let (name, exports) = match b.module {
        Some((n, mut e, pos)) => {
            let mut seen = BTreeSet::new();
            e.retain(|f| {
                let fresh = seen.insert(f.clone());
                if !fresh {
                    b.warnings.push(Warning::new(Some(pos), format!("{f} exported twice")));
                }
                fresh
            });
            (n, Some(e))
        }
        None => ("user".to_string(), None),
    };
    let module = ModuleAst {
        name,
        exports,
        imports: b.imports,
        clauses: b.clauses,
        foreign_decls: b.foreign_decls,
        foreign_classes: b.foreign_classes,
        ops: b.ops,
    };
    if let Some(ex) = &module.exports {
        let defined = module.defined();
        for f in ex {
            if !defined.contains(f) {
                return Err(Error::Resolve(format!(
                    "module `{}` exports {f}, which it does not define",
                    module.name
                )));
            }
        }
    }
    Ok((module, b.warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_with_imports() {
        let (m, w) = read_module(
            ":- module(app, [main/0]).\n:- use_module(library(lists), [append/3]).\n:- use_module(util).\nmain :- append([], [], _).\n",
        )
        .unwrap();
        assert!(w.is_empty());
        assert_eq!(m.name, "app");
        assert_eq!(m.exports, Some(vec![Functor::new("main", 0)]));
        assert_eq!(m.imports.len(), 2);
        assert_eq!(m.imports[0].module, "lists");
        assert_eq!(m.imports[0].preds, ImportList::Only(vec![Functor::new("append", 3)]));
        assert_eq!(m.imports[1].preds, ImportList::All);
        assert_eq!(m.clauses.len(), 1);
    }

    #[test]
    fn implicit_user_module_exports_everything() {
        let (m, _) = read_module("p(1).\nq :- p(_).\n").unwrap();
        assert_eq!(m.name, "user");
        assert_eq!(m.exported(), vec![Functor::new("p", 1), Functor::new("q", 0)]);
    }

    #[test]
    fn undefined_export_is_an_error() {
        assert!(read_module(":- module(m, [p/1]).\nq.\n").is_err());
    }

    #[test]
    fn op_directive_affects_later_clauses() {
        let (m, _) = read_module(":- module(m, [p/1]).\n:- op(700, xfx, ===>).\np(a ===> b).\n").unwrap();
        assert_eq!(crate::writer::canonical_ast(&m.clauses[0].head), "p(===>(a,b))");
    }

    #[test]
    fn end_of_file_stops_reading() {
        assert!(read_module("p.\nend_of_file.\nq.\n").is_err());
        let (m, _) = read_module("p.\nend_of_file.\n").unwrap();
        assert_eq!(m.clauses.len(), 1);
    }

    #[test]
    fn unknown_directive_warns() {
        let (_, w) = read_module(":- dynamic(foo/1).\np.\n").unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].message.contains("dynamic/1"));
    }

    #[test]
    fn late_module_directive_is_an_error() {
        assert!(read_module("p.\n:- module(m, []).\n").is_err());
    }

    #[test]
    fn foreign_class_block() {
        let src = r#":- module(dom, [document/1]).
:- pred document(-element) + js:foreign("return document;").
:- js:foreign_class element {
  :- pred body(-element) + js:foreign("return this.body;").
  :- pred set_innerHtml(+X) :: string + js:foreign("this.innerHTML = X;").
}.
"#;
        let (m, w) = read_module(src).unwrap();
        assert!(w.is_empty(), "{w:?}");
        assert_eq!(m.foreign_decls.len(), 1);
        let c = m.foreign_class("element").unwrap();
        assert_eq!(c.methods.len(), 2);
        assert_eq!(c.methods[1].pred_arity(), 2);
        assert_eq!(c.methods[1].class.as_deref(), Some("element"));
        assert_eq!(m.exported(), vec![Functor::new("document", 1)]);
    }

    #[test]
    fn foreign_class_block_rejects_clauses() {
        let src = ":- js:foreign_class c {\n p.\n}.\n";
        assert!(read_module(src).is_err());
    }

    #[test]
    fn non_callable_head() {
        assert!(read_module("1 :- true.\n").is_err());
    }
}
