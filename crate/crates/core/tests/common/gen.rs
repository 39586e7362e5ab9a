//! Random programs and the checks shared by the property and acceptance
//! suites.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pljs::codegen::{compile_predicate, ChunkIR, Options};
use pljs::interp::{Interp, Limits, Program};
use pljs::machine::Machine;
use pljs::ops::OpTable;
use pljs::parser::parse_str;
use pljs::reader::read_module;
use pljs::resolve::{resolve_program, ResolvedModule};
use pljs::term::PredKey;

pub const MAX_DEPTH: u32 = 4;
pub const MAX_PREDS: usize = 6;

const CONSTS: [&str; 3] = ["a", "b", "c"];
const VARS: [&str; 3] = ["X", "Y", "Z"];

/// A layered, non-recursive program: `p<i>` calls only `p<j>` with `j < i`.
/// Every predicate has arity one.
pub struct Generated {
    pub npreds: usize,
    pub source: String,
}

pub fn program(seed: u64) -> Generated {
    let mut rng = StdRng::seed_from_u64(seed);
    let npreds = rng.gen_range(1..=MAX_PREDS);
    let mut source = String::from(":- module(gen, []).\n");
    for i in 0..npreds {
        for _ in 0..rng.gen_range(1..=4) {
            let head = if rng.gen_bool(0.5) { "X".to_string() } else { konst(&mut rng).to_string() };
            if i == 0 || rng.gen_bool(0.25) {
                source.push_str(&format!("p{i}({head}).\n"));
            } else {
                let depth = rng.gen_range(1..=MAX_DEPTH);
                let body = goal(&mut rng, i, depth);
                source.push_str(&format!("p{i}({head}) :- {body}.\n"));
            }
        }
    }
    Generated { npreds, source }
}

fn konst(rng: &mut StdRng) -> &'static str {
    CONSTS[rng.gen_range(0..CONSTS.len())]
}

fn arg(rng: &mut StdRng) -> &'static str {
    if rng.gen_bool(0.6) {
        VARS[rng.gen_range(0..VARS.len())]
    } else {
        konst(rng)
    }
}

fn leaf(rng: &mut StdRng, level: usize) -> String {
    match rng.gen_range(0..10) {
        0..=4 => format!("p{}({})", rng.gen_range(0..level), arg(rng)),
        5 | 6 => format!("{} = {}", arg(rng), arg(rng)),
        7 => "true".to_string(),
        8 => "fail".to_string(),
        _ => "!".to_string(),
    }
}

/// A body of nesting depth at most `depth`.
fn goal(rng: &mut StdRng, level: usize, depth: u32) -> String {
    if depth <= 1 {
        return leaf(rng, level);
    }
    let sub = |rng: &mut StdRng| {
        let d = rng.gen_range(1..depth);
        goal(rng, level, d)
    };
    match rng.gen_range(0..6) {
        0 => leaf(rng, level),
        1 => format!("({}, {})", sub(rng), sub(rng)),
        2 => format!("({} ; {})", sub(rng), sub(rng)),
        3 => format!("({} -> {})", sub(rng), sub(rng)),
        4 => format!("({} -> {} ; {})", sub(rng), sub(rng), sub(rng)),
        _ => format!("\\+ {}", sub(rng)),
    }
}

pub fn limits() -> Limits {
    Limits {
        max_answers: 2_000,
        max_steps: 2_000_000,
    }
}

/// Answers of `p<i>(X)` for every predicate, from the reference
/// interpreter. Errors are reported as a single `error` answer.
fn all_answers(p: &Program, npreds: usize) -> Vec<Vec<String>> {
    let ops = OpTable::with_assertions();
    (0..npreds)
        .map(|i| {
            let q = parse_str(&format!("p{i}(X)"), &ops).unwrap();
            match Interp::new(p, limits()).solve("gen", &q) {
                Ok(o) => o.answers,
                Err(_) => vec!["error".to_string()],
            }
        })
        .collect()
}

/// Runs every predicate of `g` on the source program and on its
/// normalized form. Returns the two answer lists, sorted when `multiset`.
pub fn normalization_answers(g: &Generated, multiset: bool) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let mut before = Program::new();
    before.load_source(&g.source).unwrap();
    let (m, _) = read_module(&g.source).unwrap();
    let (resolved, _) = resolve_program(std::slice::from_ref(&m)).unwrap();
    let mut after = Program::new();
    after.load_source(&g.source).unwrap();
    after.add_normalized("gen", &resolved[0].normalized);
    let mut a = all_answers(&before, g.npreds);
    let mut b = all_answers(&after, g.npreds);
    if multiset {
        a.iter_mut().for_each(|v| v.sort());
        b.iter_mut().for_each(|v| v.sort());
    }
    (a, b)
}

/// One clause of `p/2` in the exhaustive universe: the first argument is a
/// constant or a variable, the second is the clause number, and the body
/// optionally filters the first argument through `q/1` before calling
/// `r/1`.
#[derive(Clone, Copy, Debug)]
pub struct ClauseShape {
    pub key: Option<usize>,
    pub guarded: bool,
}

pub const SHAPES: usize = (CONSTS.len() + 1) * 2;

impl ClauseShape {
    pub fn nth(n: usize) -> Self {
        let k = n % (CONSTS.len() + 1);
        ClauseShape {
            key: (k < CONSTS.len()).then_some(k),
            guarded: n / (CONSTS.len() + 1) == 1,
        }
    }

    fn text(&self, i: usize) -> String {
        let head = match self.key {
            Some(k) => CONSTS[k],
            None => "K",
        };
        let body = if self.guarded {
            format!(" :- q({head}), r({i})")
        } else if self.key.is_none() {
            " :- true".to_string()
        } else {
            String::new()
        };
        format!("p({head}, {i}){body}.\n")
    }
}

/// Every database of `0..=max` clauses over the shape universe.
pub fn databases(max: usize) -> impl Iterator<Item = Vec<ClauseShape>> {
    (0..=max).flat_map(|n| {
        (0..SHAPES.pow(n as u32)).map(move |mut code| {
            let mut db = Vec::with_capacity(n);
            for _ in 0..n {
                db.push(ClauseShape::nth(code % SHAPES));
                code /= SHAPES;
            }
            db
        })
    })
}

/// Query predicates: an unbound first argument, each constant, and a
/// constant outside the universe.
pub const QUERIES: [(&str, &str); 5] = [
    ("qv", "qv(K, N) :- p(K, N).\n"),
    ("qa", "qa(N) :- p(a, N).\n"),
    ("qb", "qb(N) :- p(b, N).\n"),
    ("qc", "qc(N) :- p(c, N).\n"),
    ("qd", "qd(N) :- p(d, N).\n"),
];

pub fn database_source(db: &[ClauseShape]) -> String {
    let mut s = String::from(":- module(db, []).\nq(a).\nq(c).\nr(_).\n");
    for (i, c) in db.iter().enumerate() {
        s.push_str(&c.text(i));
    }
    for (_, q) in QUERIES {
        s.push_str(q);
    }
    s
}

/// Outcome of one database: the chunk invariant violations and, per query,
/// the solution sequences without and with indexing.
pub struct DbCheck {
    pub chunk_violations: Vec<String>,
    pub mismatches: Vec<String>,
}

/// Every non-final chunk ends in a call; the final one has at most one.
pub fn chunk_violations_in(irs: &[ChunkIR]) -> Vec<String> {
    let mut out = Vec::new();
    for ir in irs {
        for (ci, c) in ir.clauses.iter().enumerate() {
            let n = c.chunks.len();
            for (k, ch) in c.chunks.iter().enumerate() {
                if k + 1 < n && ch.call.is_none() {
                    out.push(format!("{} clause {ci} chunk {k} has no call", ir.pred));
                }
            }
        }
    }
    out
}

fn compile_ir(resolved: &[ResolvedModule], opts: Options) -> Vec<(String, Vec<ChunkIR>)> {
    resolved
        .iter()
        .map(|r| (r.name.clone(), r.preds.iter().map(|p| compile_predicate(&r.name, p, opts)).collect()))
        .collect()
}

pub fn chunk_violations(src: &str, opts: Options) -> Vec<String> {
    let (m, _) = read_module(src).unwrap();
    let (resolved, _) = resolve_program(std::slice::from_ref(&m)).unwrap();
    compile_ir(&resolved, opts).iter().flat_map(|(_, irs)| chunk_violations_in(irs)).collect()
}

/// Chunk invariant violations and per-query solution sequences.
fn solutions(resolved: &[ResolvedModule], opts: Options) -> (Vec<String>, Vec<Vec<String>>) {
    let irs = compile_ir(resolved, opts);
    let chunks = irs.iter().flat_map(|(_, irs)| chunk_violations_in(irs)).collect();
    let m = Machine::from_ir(resolved, &irs);
    let answers = QUERIES
        .iter()
        .map(|(name, _)| {
            let names: Vec<String> = if *name == "qv" { vec!["K".into(), "N".into()] } else { vec!["N".into()] };
            let key = PredKey::new("db", *name, names.len());
            m.solve(&key, &names, limits()).unwrap().0.answers
        })
        .collect();
    (chunks, answers)
}

pub fn check_database(db: &[ClauseShape]) -> DbCheck {
    let src = database_source(db);
    let (m, _) = read_module(&src).unwrap();
    let (resolved, _) = resolve_program(std::slice::from_ref(&m)).unwrap();
    let (mut chunk, linear) = solutions(&resolved, Options { index: false });
    let (more, switched) = solutions(&resolved, Options { index: true });
    chunk.extend(more);
    let mismatches = QUERIES
        .iter()
        .zip(linear.iter().zip(&switched))
        .filter(|(_, (a, b))| a != b)
        .map(|((q, _), (a, b))| format!("{q}: linear {a:?} vs indexed {b:?}\n{src}"))
        .collect();
    DbCheck {
        chunk_violations: chunk,
        mismatches,
    }
}
