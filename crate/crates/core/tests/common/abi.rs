//! Static scan of emitted JavaScript for free identifiers.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Punct(char),
    Lit,
}

const KEYWORDS: &[&str] = &[
    "break", "case", "catch", "continue", "default", "delete", "do", "else", "false", "finally", "for", "function",
    "if", "in", "instanceof", "new", "null", "return", "switch", "this", "throw", "true", "try", "typeof", "var",
    "void", "while",
];

/// Globals emitted code may reference besides the symbol layer.
pub const ALLOWED: &[&str] = &["$r", "$s", "$extends", "Object", "Array", "Math", "String", "Number", "Error", "undefined", "NaN", "Infinity"];

fn tokenize(src: &str) -> Vec<Tok> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && cs.get(i + 1) == Some(&'/') {
            while i < cs.len() && cs[i] != '\n' {
                i += 1;
            }
        } else if c == '/' && cs.get(i + 1) == Some(&'*') {
            i += 2;
            while i + 1 < cs.len() && !(cs[i] == '*' && cs[i + 1] == '/') {
                i += 1;
            }
            i += 2;
        } else if c == '"' || c == '\'' {
            i += 1;
            while i < cs.len() && cs[i] != c {
                if cs[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
            out.push(Tok::Lit);
        } else if c.is_ascii_digit() {
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '.') {
                i += 1;
            }
            out.push(Tok::Lit);
        } else if c.is_alphabetic() || c == '_' || c == '$' {
            let s = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '$') {
                i += 1;
            }
            out.push(Tok::Ident(cs[s..i].iter().collect()));
        } else {
            out.push(Tok::Punct(c));
            i += 1;
        }
    }
    out
}

fn ident(t: Option<&Tok>) -> Option<&str> {
    match t {
        Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => Some(s),
        _ => None,
    }
}

/// Identifiers referenced but never declared anywhere in `src`. Scopes are
/// not tracked: a name declared anywhere counts as declared everywhere.
pub fn free_identifiers(src: &str) -> BTreeSet<String> {
    let toks = tokenize(src);
    let mut declared = BTreeSet::new();
    let mut i = 0;
    while i < toks.len() {
        match &toks[i] {
            Tok::Ident(k) if k == "function" => {
                let mut j = i + 1;
                if let Some(n) = ident(toks.get(j)) {
                    declared.insert(n.to_string());
                    j += 1;
                }
                if toks.get(j) == Some(&Tok::Punct('(')) {
                    j += 1;
                    while let Some(p) = ident(toks.get(j)) {
                        declared.insert(p.to_string());
                        j += 1;
                        if toks.get(j) == Some(&Tok::Punct(',')) {
                            j += 1;
                        }
                    }
                }
            }
            Tok::Ident(k) if k == "var" => {
                let mut j = i + 1;
                'decls: while let Some(n) = ident(toks.get(j)) {
                    declared.insert(n.to_string());
                    j += 1;
                    let mut depth = 0i32;
                    while let Some(t) = toks.get(j) {
                        match t {
                            Tok::Punct('(' | '[' | '{') => depth += 1,
                            Tok::Punct(')' | ']' | '}') => depth -= 1,
                            Tok::Punct(',') if depth == 0 => {
                                j += 1;
                                continue 'decls;
                            }
                            Tok::Punct(';') if depth == 0 => break 'decls,
                            _ => {}
                        }
                        j += 1;
                    }
                }
            }
            Tok::Ident(k) if k == "catch" => {
                if let Some(n) = ident(toks.get(i + 2)) {
                    declared.insert(n.to_string());
                }
            }
            _ => {}
        }
        i += 1;
    }
    let mut free = BTreeSet::new();
    for (i, t) in toks.iter().enumerate() {
        if let Some(n) = ident(Some(t)) {
            let after_dot = i > 0 && toks[i - 1] == Tok::Punct('.');
            if !after_dot && !declared.contains(n) {
                free.insert(n.to_string());
            }
        }
    }
    free
}

/// Free identifiers outside the allowed set.
pub fn abi_violations(src: &str) -> Vec<String> {
    free_identifiers(src).into_iter().filter(|n| !ALLOWED.contains(&n.as_str())).collect()
}

#[test]
fn scanner_sees_through_declarations() {
    let js = "var a = f(1, 2), b; function g(x, y) { return x + y + a + b + window.z + \"q\" + zz; } // c\n";
    let free: Vec<String> = free_identifiers(js).into_iter().collect();
    assert_eq!(free, vec!["f", "window", "zz"]);
}
