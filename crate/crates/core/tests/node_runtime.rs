//! Behavior only the JS runtime provides: attributed variables, freeze/2
//! and foreign calls.

mod common;

use common::{node_available, node_query, query_bundle, run_js};
use pljs::bundle::Report;
use pljs::codegen::Options;

fn answers(sources: &[&str], query: &str) -> Vec<String> {
    node_query(sources, query, Options::default()).unwrap().answers
}

const FREEZE_USER: &str = ":- use_module(freeze).\n\
    p(X, Y) :- freeze(X, Y = woke), X = 1.\n\
    q(X, Y) :- freeze(X, Y = woke).\n\
    r(X) :- freeze(X, fail), X = 1.\n";

#[test]
fn freeze_wakes_on_binding() {
    if !node_available() {
        return;
    }
    assert_eq!(answers(&[FREEZE_USER], "p(X, Y)"), vec!["X = 1, Y = woke"]);
    assert_eq!(answers(&[FREEZE_USER], "q(X, Y), var(Y)"), vec!["X = _A, Y = _B"]);
    assert_eq!(answers(&[FREEZE_USER], "q(X, Y), X = a"), vec!["X = a, Y = woke"]);
}

#[test]
fn failing_hook_fails_the_binding() {
    if !node_available() {
        return;
    }
    assert!(answers(&[FREEZE_USER], "r(X)").is_empty());
    assert_eq!(answers(&[FREEZE_USER], "r(X) ; X = 2"), vec!["X = 2"]);
}

#[test]
fn attrvar_attrvar_merges_goals() {
    if !node_available() {
        return;
    }
    assert_eq!(answers(&[FREEZE_USER], "freeze(X, A = 1), freeze(Y, B = 2), X = Y, Y = go"), vec!["X = go, A = 1, Y = go, B = 2"]);
}

#[test]
fn bindings_are_undone_on_backtracking() {
    if !node_available() {
        return;
    }
    let src = ":- use_module(freeze).\nt(X, L) :- freeze(X, L = [hit]), ( X = 1, fail ; true ).\n";
    assert_eq!(answers(&[src], "t(X, L), var(L), frozen(X, G)"), vec!["X = _A, L = _B, G = _B=[hit]"]);
}

#[test]
fn put_get_attr_and_custom_hook() {
    if !node_available() {
        return;
    }
    let dom = ":- module(dom, [dom/2]).\n\
        dom(X, D) :- put_attr(X, dom, D).\n\
        attr_unify_hook(D, Y) :- nonvar(Y), member_(Y, D).\n\
        member_(X, [X|_]).\n\
        member_(X, [_|T]) :- member_(X, T).\n";
    assert_eq!(answers(&[dom], "dom(X, [a,b]), X = b"), vec!["X = b"]);
    assert!(answers(&[dom], "dom(X, [a,b]), X = c").is_empty());
    assert_eq!(answers(&[dom], "dom(X, [a]), get_attr(X, dom, D)"), vec!["X = _A, D = [a]"]);
}

const HELLO: &str = ":- module(hello, [main/0]).\n\
    :- pred document(-element) + js:foreign(\"return document;\").\n\
    :- js:foreign_class element {\n\
      :- pred body(-element) + js:foreign(\"return this.body;\").\n\
      :- pred set_innerHtml(+X) :: string + js:foreign(\"this.innerHtml=X;\").\n\
    }.\n\
    main :- document(D), D:body(B), B:set_innerHtml(\"Hello World\").\n";

#[test]
fn hello_world_sets_the_body_text() {
    if !node_available() {
        return;
    }
    let b = query_bundle(&[HELLO], "main", Options::default(), Report::Text);
    let script = format!(
        "var document = {{ body: {{ innerHtml: \"\" }} }};\n{b}\nprocess.on(\"exit\", function() {{ process.stdout.write(\"body=\" + document.body.innerHtml + \"\\n\"); }});\n"
    );
    let (out, err, code) = run_js(&script);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "body=Hello World\n");
}

#[test]
fn foreign_type_errors_are_reported() {
    if !node_available() {
        return;
    }
    let b = query_bundle(&[HELLO], "document(D), D:set_innerHtml(42)", Options::default(), Report::Text);
    let (_, err, code) = run_js(&format!("var document = {{ body: {{}} }};\n{b}"));
    assert_eq!(code, 2);
    assert!(err.contains("string expected"), "{err}");
}
