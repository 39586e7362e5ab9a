//! Operator-precedence reader for Prolog terms.

use crate::error::{Error, Result};
use crate::lexer::{tokenize, Token, TokenKind};
use crate::ops::OpTable;
use crate::term::{AstKind, Pos, TermAst};

/// Parses the tokens of one clause (up to and including its `end` token).
pub fn parse_term(tokens: &[Token], ops: &OpTable) -> Result<TermAst> {
    let mut r = TermReader::new(tokens.to_vec());
    match r.next_clause(ops)? {
        Some(t) => {
            if let Some(extra) = r.peek() {
                return Err(Error::syntax(extra.pos, "tokens after end of clause"));
            }
            Ok(t)
        }
        None => Err(Error::syntax(Pos::default(), "empty input")),
    }
}

/// Tokenizes and parses a single term; a trailing period is optional.
pub fn parse_str(src: &str, ops: &OpTable) -> Result<TermAst> {
    let mut tokens = tokenize(src)?;
    if tokens.last().map(|t| &t.kind) != Some(&TokenKind::End) {
        let pos = tokens.last().map(|t| t.pos).unwrap_or_default();
        tokens.push(Token {
            kind: TokenKind::End,
            text: ".".into(),
            pos,
            span: src.len()..src.len(),
            layout_before: true,
            quoted: false,
        });
    }
    parse_term(&tokens, ops)
}

/// Cursor over a token stream that yields one clause term at a time. The
/// operator table is passed per call so directives can change it between
/// clauses.
#[derive(Debug, Clone)]
pub struct TermReader {
    tokens: Vec<Token>,
    at: usize,
}

impl TermReader {
    pub fn new(tokens: Vec<Token>) -> Self {
        TermReader { tokens, at: 0 }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    pub fn peek_n(&self, n: usize) -> Option<&Token> {
        self.tokens.get(self.at + n)
    }

    pub fn advance(&mut self, n: usize) {
        self.at = (self.at + n).min(self.tokens.len());
    }

    pub fn at_eof(&self) -> bool {
        self.at >= self.tokens.len()
    }

    /// Reads the next clause, or `None` at end of input.
    pub fn next_clause(&mut self, ops: &OpTable) -> Result<Option<TermAst>> {
        if self.at_eof() {
            return Ok(None);
        }
        let mut p = Parser {
            toks: &self.tokens,
            at: self.at,
            ops,
        };
        let (t, _) = p.parse(1200)?;
        match p.toks.get(p.at) {
            Some(tok) if tok.kind == TokenKind::End => {
                self.at = p.at + 1;
                Ok(Some(t))
            }
            Some(tok) => Err(Error::syntax(tok.pos, format!("operator expected, found `{}`", tok.text))),
            None => {
                let pos = p.toks.last().map(|t| t.pos).unwrap_or_default();
                Err(Error::syntax(pos, "missing `.` at end of clause"))
            }
        }
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    at: usize,
    ops: &'a OpTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.at)
    }

    fn peek2(&self) -> Option<&'a Token> {
        self.toks.get(self.at + 1)
    }

    fn eof_pos(&self) -> Pos {
        self.toks.last().map(|t| t.pos).unwrap_or_default()
    }

    fn next(&mut self) -> Result<&'a Token> {
        let t = self
            .toks
            .get(self.at)
            .ok_or_else(|| Error::syntax(self.eof_pos(), "unexpected end of input"))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next()?;
        if t.is_punct(c) {
            Ok(())
        } else {
            Err(Error::syntax(t.pos, format!("expected `{c}`, found `{}`", t.text)))
        }
    }

    fn parse(&mut self, max: u16) -> Result<(TermAst, u16)> {
        let (left, lp) = self.parse_primary(max)?;
        self.parse_infix(left, lp, max)
    }

    fn infix_name(tok: &Token) -> Option<&str> {
        match &tok.kind {
            TokenKind::Atom(a) => Some(a),
            TokenKind::Punct(',') => Some(","),
            TokenKind::Punct('|') => Some("|"),
            _ => None,
        }
    }

    fn parse_infix(&mut self, mut left: TermAst, mut lp: u16, max: u16) -> Result<(TermAst, u16)> {
        loop {
            let Some(tok) = self.peek() else { break };
            let Some(name) = Self::infix_name(tok) else { break };
            if let Some(op) = self.ops.infix(name) {
                let (la, ra) = op.arg_max();
                if op.priority <= max && lp <= la {
                    let save = self.at;
                    self.at += 1;
                    match self.parse(ra) {
                        Ok((right, _)) => {
                            let f = if name == "|" { ";" } else { name };
                            let pos = left.pos;
                            left = TermAst::compound(f, vec![left, right], pos);
                            lp = op.priority;
                            continue;
                        }
                        Err(e) => {
                            if self.ops.postfix(name).is_none() {
                                return Err(e);
                            }
                            self.at = save;
                        }
                    }
                }
            }
            if let Some(op) = self.ops.postfix(name) {
                let (la, _) = op.arg_max();
                if op.priority <= max && lp <= la {
                    self.at += 1;
                    let pos = left.pos;
                    left = TermAst::compound(name, vec![left], pos);
                    lp = op.priority;
                    continue;
                }
            }
            break;
        }
        Ok((left, lp))
    }

    /// Whether the next token cannot begin an operand, so a preceding
    /// prefix operator must be read as an atom.
    fn at_operand_end(&self) -> bool {
        let Some(t) = self.peek() else { return true };
        match &t.kind {
            TokenKind::End => true,
            TokenKind::Punct(c) => matches!(c, ')' | ']' | '}' | ',' | '|'),
            TokenKind::Atom(a) => {
                let functional = self.peek2().is_some_and(|n| n.is_punct('(') && !n.layout_before);
                (self.ops.infix(a).is_some() || self.ops.postfix(a).is_some())
                    && self.ops.prefix(a).is_none()
                    && !functional
            }
            _ => false,
        }
    }

    fn parse_primary(&mut self, max: u16) -> Result<(TermAst, u16)> {
        let tok = self.next()?;
        let pos = tok.pos;
        match &tok.kind {
            TokenKind::Int(i) => Ok((TermAst::new(AstKind::Int(*i), pos), 0)),
            TokenKind::Float(f) => Ok((TermAst::new(AstKind::Float(*f), pos), 0)),
            TokenKind::Str(s) => Ok((TermAst::new(AstKind::Str(s.clone()), pos), 0)),
            TokenKind::Var(v) => Ok((TermAst::var(v.clone(), pos), 0)),
            TokenKind::Punct('(') => {
                let (t, _) = self.parse(1200)?;
                self.expect(')')?;
                Ok((t, 0))
            }
            TokenKind::Punct('[') => {
                if self.peek().is_some_and(|t| t.is_punct(']')) {
                    self.at += 1;
                    return self.after_name("[]", tok, max);
                }
                let mut items = Vec::new();
                loop {
                    let (t, _) = self.parse(999)?;
                    items.push(t);
                    let sep = self.next()?;
                    match sep.kind {
                        TokenKind::Punct(',') => continue,
                        TokenKind::Punct('|') => {
                            let (tail, _) = self.parse(999)?;
                            self.expect(']')?;
                            return Ok((list(items, tail), 0));
                        }
                        TokenKind::Punct(']') => {
                            let nil = TermAst::atom("[]", sep.pos);
                            return Ok((list(items, nil), 0));
                        }
                        _ => {
                            return Err(Error::syntax(
                                sep.pos,
                                format!("expected `,`, `|` or `]` in list, found `{}`", sep.text),
                            ))
                        }
                    }
                }
            }
            TokenKind::Punct('{') => {
                if self.peek().is_some_and(|t| t.is_punct('}')) {
                    self.at += 1;
                    return self.after_name("{}", tok, max);
                }
                let (t, _) = self.parse(1200)?;
                self.expect('}')?;
                Ok((TermAst::compound("{}", vec![t], pos), 0))
            }
            TokenKind::Atom(name) => self.after_name(name, tok, max),
            TokenKind::Punct(_) | TokenKind::End => {
                Err(Error::syntax(pos, format!("unexpected `{}`", tok.text)))
            }
        }
    }

    fn after_name(&mut self, name: &str, tok: &'a Token, max: u16) -> Result<(TermAst, u16)> {
        let pos = tok.pos;
        if let Some(next) = self.peek() {
            if next.is_punct('(') && !next.layout_before {
                self.at += 1;
                let mut args = Vec::new();
                loop {
                    let (a, _) = self.parse(999)?;
                    args.push(a);
                    let sep = self.next()?;
                    match sep.kind {
                        TokenKind::Punct(',') => continue,
                        TokenKind::Punct(')') => break,
                        _ => {
                            return Err(Error::syntax(
                                sep.pos,
                                format!("expected `,` or `)` in arguments, found `{}`", sep.text),
                            ))
                        }
                    }
                }
                return Ok((TermAst::compound(name, args, pos), 0));
            }
            if name == "-" && !tok.quoted && !next.layout_before {
                match next.kind {
                    TokenKind::Int(i) => {
                        self.at += 1;
                        return Ok((TermAst::new(AstKind::Int(-i), pos), 0));
                    }
                    TokenKind::Float(f) => {
                        self.at += 1;
                        return Ok((TermAst::new(AstKind::Float(-f), pos), 0));
                    }
                    _ => {}
                }
            }
        }
        if !tok.quoted {
            if let Some(op) = self.ops.prefix(name) {
                if !self.at_operand_end() {
                    let (mut p, mut arg_max) = (op.priority, op.arg_max().1);
                    if p > max {
                        p = max;
                        arg_max = arg_max.min(max);
                    }
                    let save = self.at;
                    match self.parse(arg_max) {
                        Ok((arg, _)) => return Ok((TermAst::compound(name, vec![arg], pos), p)),
                        Err(e) => {
                            // `- (=)`-style inputs: retry as a plain atom operand.
                            self.at = save;
                            if !self.at_operand_end() {
                                return Err(e);
                            }
                        }
                    }
                }
            }
        }
        Ok((TermAst::atom(name, pos), 0))
    }
}

fn list(items: Vec<TermAst>, tail: TermAst) -> TermAst {
    items.into_iter().rev().fold(tail, |acc, x| {
        let pos = x.pos;
        TermAst::compound(".", vec![x, acc], pos)
    })
}
