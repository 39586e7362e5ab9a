//! Whole-program compilation: sources in, emitted modules out.

use crate::builtins::library_source;
use crate::codegen::{compile_predicate, ChunkIR, Options};
use crate::emit::{emit_module, load_order, EmittedModule};
use crate::error::{Error, Result, Warning};
use crate::reader::{read_module, ModuleAst, SourceClause};
use crate::resolve::{resolve_program, ResolvedModule};
use crate::term::{TermAst, Pos};

/// Name of the predicate added to the entry module for `run`.
pub const QUERY_PRED: &str = "$query";

#[derive(Debug)]
pub struct Compiled {
    pub modules: Vec<EmittedModule>,
    /// Compiled predicates per module, in module order.
    pub irs: Vec<(String, Vec<ChunkIR>)>,
    pub warnings: Vec<Warning>,
    /// Emitted files in dependency order.
    pub load_order: Vec<String>,
    pub resolved: Vec<ResolvedModule>,
}

impl Compiled {
    /// Stable text of every predicate's IR.
    pub fn ir_dump(&self) -> String {
        let mut out = String::new();
        for (_, irs) in &self.irs {
            for ir in irs {
                out.push_str(&ir.to_string());
            }
        }
        out
    }

    pub fn module(&self, name: &str) -> Option<&EmittedModule> {
        self.modules.iter().find(|m| m.module_name == name)
    }
}

/// Appends the library modules imported by `mods` and not already present.
pub fn with_libraries(mut mods: Vec<ModuleAst>) -> Result<(Vec<ModuleAst>, Vec<Warning>)> {
    let mut warnings = Vec::new();
    let mut i = 0;
    while i < mods.len() {
        let wanted: Vec<String> = mods[i].imports.iter().map(|im| im.module.clone()).collect();
        for name in wanted {
            if mods.iter().any(|m| m.name == name) {
                continue;
            }
            if let Some(src) = library_source(&name) {
                let (m, w) = read_module(src)?;
                warnings.extend(w);
                mods.push(m);
            }
        }
        i += 1;
    }
    Ok((mods, warnings))
}

/// Compiles parsed modules, library imports included.
pub fn compile_modules(mods: Vec<ModuleAst>, opts: Options) -> Result<Compiled> {
    let (mods, mut warnings) = with_libraries(mods)?;
    for (i, m) in mods.iter().enumerate() {
        if mods[..i].iter().any(|n| n.name == m.name) {
            return Err(Error::Resolve(format!("module `{}` defined twice", m.name)));
        }
    }
    let (resolved, w) = resolve_program(&mods)?;
    warnings.extend(w);
    let mut modules = Vec::new();
    let mut irs = Vec::new();
    for r in &resolved {
        let compiled: Vec<ChunkIR> = r.preds.iter().map(|p| compile_predicate(&r.name, p, opts)).collect();
        modules.push(emit_module(r, &compiled)?);
        irs.push((r.name.clone(), compiled));
    }
    let order = load_order(&modules);
    Ok(Compiled {
        modules,
        irs,
        warnings,
        load_order: order,
        resolved,
    })
}

/// Reads and compiles source texts. Errors carry the label of the source
/// they come from.
pub fn compile_sources(sources: &[(String, String)], opts: Options) -> std::result::Result<Compiled, String> {
    let mut mods = Vec::new();
    let mut warnings = Vec::new();
    for (label, src) in sources {
        let (m, w) = read_module(src).map_err(|e| format!("{label}:{e}"))?;
        warnings.extend(w.into_iter().map(|mut w| {
            w.message = format!("{label}: {}", w.message);
            w
        }));
        mods.push(m);
    }
    let mut c = compile_modules(mods, opts).map_err(|e| e.to_string())?;
    warnings.append(&mut c.warnings);
    c.warnings = warnings;
    Ok(c)
}

/// Adds `'$query'(V1, ..., Vn) :- Goal` to `module`, where the `Vi` are the
/// named variables of `goal`. Returns the variable names.
pub fn add_query(module: &mut ModuleAst, goal: &TermAst) -> Vec<String> {
    let names: Vec<String> = goal.var_names().into_iter().filter(|n| !n.starts_with('_')).collect();
    let pos = Pos::new(0, 0);
    let head = TermAst::compound(QUERY_PRED, names.iter().map(|n| TermAst::var(n.clone(), pos)).collect(), pos);
    module.clauses.push(SourceClause {
        head,
        body: goal.clone(),
        pos,
    });
    names
}

/// Entry query compiled into a program.
#[derive(Debug)]
pub struct Entry {
    pub module: String,
    /// Variables shown in answers, in order of appearance.
    pub names: Vec<String>,
}

/// Reads `sources`, adds the query `entry` (`M:G`, or `G` for the first
/// module) and compiles the result.
pub fn compile_entry(sources: &[(String, String)], entry: &str, opts: Options) -> std::result::Result<(Compiled, Entry), String> {
    let mut mods = Vec::new();
    let mut warnings = Vec::new();
    for (label, src) in sources {
        let (m, w) = read_module(src).map_err(|e| format!("{label}:{e}"))?;
        warnings.extend(w);
        mods.push(m);
    }
    if mods.is_empty() {
        mods.push(read_module("").map_err(|e| e.to_string())?.0);
    }
    let goal = crate::parser::parse_str(entry, &crate::ops::OpTable::with_assertions()).map_err(|e| format!("entry: {e}"))?;
    let (target, goal) = match goal.functor() {
        Some((":", 2)) => match goal.args()[0].functor() {
            Some((m, 0)) => (m.to_string(), goal.args()[1].clone()),
            _ => return Err("entry: module name must be an atom".to_string()),
        },
        _ => (mods[0].name.clone(), goal),
    };
    let Some(m) = mods.iter_mut().find(|m| m.name == target) else {
        return Err(format!("entry: no module `{target}` among the inputs"));
    };
    let names = add_query(m, &goal);
    let mut c = compile_modules(mods, opts).map_err(|e| e.to_string())?;
    warnings.append(&mut c.warnings);
    c.warnings = warnings;
    Ok((c, Entry { module: target, names }))
}
