//! Load bundles: runtime, emitted modules and a driver script in one file
//! that a host engine runs as a script.

use crate::emit::js_str;
use crate::pipeline::{Compiled, QUERY_PRED};

/// Reference runtime used when no other runtime is supplied.
pub const RUNTIME_JS: &str = include_str!("../js/runtime.js");

/// What the driver prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Report {
    /// Program output as written, one line per answer with bindings.
    Text,
    /// A single JSON object `{answers, output, halted}` at the end.
    Json,
}

/// Driver that solves `'$query'(Vars)` in `module` and reports answers.
pub fn run_driver(module: &str, names: &[String], report: Report, max_answers: usize) -> String {
    let names_js = js_names(names);
    let (out, emit, finish) = match report {
        Report::Text => (
            "",
            "if (a !== \"\") w.out(a + \"\\n\");\n      answers.push(a);",
            "",
        ),
        Report::Json => (
            "  var text = \"\";\n  w.out = function(s) { text += s; };\n",
            "answers.push(a);",
            "  process.stdout.write(JSON.stringify({ answers: answers, output: text, halted: s.halted }) + \"\\n\");\n",
        ),
    };
    format!(
        "(function() {{\n  var rt = $r.query(\"$rt\").prepare().exports;\n  var w = new rt.Worker();\n{out}  \
         var names = {names_js};\n  var vars = [];\n  for (var i = 0; i < names.length; i++) vars.push(rt.new_var(w));\n  \
         var s = rt.solve(w, rt.mk({q}, vars), {m});\n  var answers = [];\n  try {{\n    \
         while (answers.length < {max_answers} && s.next()) {{\n      var a = rt.answer(names, vars);\n      {emit}\n    }}\n  }} catch (e) {{\n    \
         process.stderr.write(\"error: \" + (e && e.message ? e.message : String(e)) + \"\\n\");\n    \
         process.exitCode = 2;\n    return;\n  }}\n{finish}  process.exitCode = answers.length > 0 || s.halted ? 0 : 1;\n}})();\n",
        q = js_str(QUERY_PRED),
        m = js_str(module),
    )
}

/// Driver that solves the query `reps` times, keeping the first answer of
/// each run. Prints the first run's output and answer, then a final line
/// `time_ms <total>` measured with the engine's monotonic clock.
pub fn bench_driver(module: &str, names: &[String], reps: u64) -> String {
    let names_js = js_names(names);
    format!(
        "(function() {{\n  var rt = $r.query(\"$rt\").prepare().exports;\n  var names = {names_js};\n  var text = \"\";\n  \
         var t0 = process.hrtime.bigint();\n  try {{\n    for (var r = 0; r < {reps}; r++) {{\n      \
         var w = new rt.Worker(r === 0 ? function(s) {{ text += s; }} : function() {{}});\n      var vars = [];\n      \
         for (var i = 0; i < names.length; i++) vars.push(rt.new_var(w));\n      \
         var s = rt.solve(w, rt.mk({q}, vars), {m});\n      var ok = s.next();\n      \
         if (r === 0) text += ok ? (names.length ? rt.answer(names, vars) : \"true\") + \"\\n\" : \"false\\n\";\n    }}\n  \
         }} catch (e) {{\n    process.stderr.write(\"error: \" + (e && e.message ? e.message : String(e)) + \"\\n\");\n    \
         process.exitCode = 2;\n    return;\n  }}\n  var ms = Number(process.hrtime.bigint() - t0) / 1e6;\n  \
         process.stdout.write(text + \"time_ms \" + ms.toFixed(3) + \"\\n\");\n}})();\n",
        q = js_str(QUERY_PRED),
        m = js_str(module),
    )
}

fn js_names(names: &[String]) -> String {
    let items: Vec<String> = names.iter().map(|n| js_str(n)).collect();
    format!("[{}]", items.join(", "))
}

/// Concatenates runtime, modules in load order and the driver.
pub fn bundle(runtime: &str, compiled: &Compiled, driver: &str) -> String {
    let mut out = String::with_capacity(runtime.len() + driver.len());
    out.push_str(runtime);
    out.push('\n');
    for file in &compiled.load_order {
        if let Some(m) = compiled.modules.iter().find(|m| &m.file == file) {
            out.push_str(&m.source);
            out.push('\n');
        }
    }
    out.push_str(driver);
    out
}
