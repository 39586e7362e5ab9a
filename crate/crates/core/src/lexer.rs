//! Prolog tokenizer.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::term::Pos;

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    /// Name token; the payload is the atom text with quotes and escapes resolved.
    Atom(String),
    Var(String),
    Int(i64),
    Float(f64),
    Str(String),
    /// One of `( ) [ ] { } , |`.
    Punct(char),
    /// Clause-terminating period.
    End,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Source lexeme, exactly as written.
    pub text: String,
    pub pos: Pos,
    /// Byte range of `text` in the source.
    pub span: Range<usize>,
    /// Whitespace or a comment precedes the token.
    pub layout_before: bool,
    /// The atom was written with quotes.
    pub quoted: bool,
}

impl Token {
    pub fn is_punct(&self, c: char) -> bool {
        self.kind == TokenKind::Punct(c)
    }

    pub fn is_atom(&self, name: &str) -> bool {
        matches!(&self.kind, TokenKind::Atom(a) if a == name)
    }
}

const SYMBOL_CHARS: &str = "+-*/\\^<>=~:.?@#&$";

fn is_symbol_char(c: char) -> bool {
    SYMBOL_CHARS.contains(c)
}

fn is_alnum(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

struct Lexer<'a> {
    src: &'a str,
    /// Byte offset of the next char.
    at: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.at..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.at..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn err(&self, pos: Pos, msg: impl Into<String>) -> Error {
        Error::Lex {
            pos,
            msg: msg.into(),
        }
    }

    /// Skips whitespace and comments; returns whether anything was skipped.
    fn skip_layout(&mut self) -> Result<bool> {
        let start = self.at;
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('/') if self.peek_at(1) == Some('*') => {
                    let pos = self.pos();
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            None => return Err(self.err(pos, "unterminated block comment")),
                            Some('*') if self.peek() == Some('/') => {
                                self.bump();
                                break;
                            }
                            Some(_) => {}
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(self.at > start)
    }

    fn next_token(&mut self, layout_before: bool) -> Result<Option<Token>> {
        let start = self.at;
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let mut quoted = false;
        let kind = if c.is_ascii_digit() {
            self.number(pos)?
        } else if c == '_' || c.is_uppercase() {
            while self.peek().is_some_and(is_alnum) {
                self.bump();
            }
            TokenKind::Var(self.src[start..self.at].to_string())
        } else if c.is_alphabetic() {
            while self.peek().is_some_and(is_alnum) {
                self.bump();
            }
            TokenKind::Atom(self.src[start..self.at].to_string())
        } else if c == '\'' {
            quoted = true;
            TokenKind::Atom(self.quoted('\'', pos)?)
        } else if c == '"' {
            TokenKind::Str(self.quoted('"', pos)?)
        } else if c == '[' && self.peek_at(1) == Some(']') {
            self.bump();
            self.bump();
            TokenKind::Atom("[]".into())
        } else if c == '{' && self.peek_at(1) == Some('}') {
            self.bump();
            self.bump();
            TokenKind::Atom("{}".into())
        } else if "()[]{},|".contains(c) {
            self.bump();
            TokenKind::Punct(c)
        } else if c == '!' || c == ';' {
            self.bump();
            TokenKind::Atom(c.to_string())
        } else if is_symbol_char(c) {
            if c == '.' {
                let next = self.peek_at(1);
                if next.is_none() || next.is_some_and(|n| n.is_whitespace() || n == '%') {
                    self.bump();
                    return Ok(Some(Token {
                        kind: TokenKind::End,
                        text: ".".into(),
                        pos,
                        span: start..self.at,
                        layout_before,
                        quoted: false,
                    }));
                }
            }
            while self.peek().is_some_and(is_symbol_char) {
                self.bump();
            }
            TokenKind::Atom(self.src[start..self.at].to_string())
        } else {
            return Err(self.err(pos, format!("unexpected character {c:?}")));
        };
        Ok(Some(Token {
            kind,
            text: self.src[start..self.at].to_string(),
            pos,
            span: start..self.at,
            layout_before,
            quoted,
        }))
    }

    fn digits(&mut self, radix: u32) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_digit(radix) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn number(&mut self, pos: Pos) -> Result<TokenKind> {
        if self.peek() == Some('0') {
            match self.peek_at(1) {
                Some('\'') => {
                    self.bump();
                    self.bump();
                    let c = match self.bump() {
                        None => return Err(self.err(pos, "unterminated character code")),
                        Some('\\') => self.escape(pos)?,
                        Some('\'') if self.peek() == Some('\'') => {
                            self.bump();
                            '\''
                        }
                        Some(c) => c,
                    };
                    return Ok(TokenKind::Int(c as i64));
                }
                Some(r @ ('x' | 'o' | 'b')) => {
                    let radix = match r {
                        'x' => 16,
                        'o' => 8,
                        _ => 2,
                    };
                    if self.peek_at(2).is_some_and(|d| d.is_digit(radix)) {
                        self.bump();
                        self.bump();
                        let ds = self.digits(radix);
                        return i64::from_str_radix(&ds, radix)
                            .map(TokenKind::Int)
                            .map_err(|_| self.err(pos, "integer literal out of range"));
                    }
                }
                _ => {}
            }
        }
        let mut text = self.digits(10);
        let mut float = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
            float = true;
            self.bump();
            text.push('.');
            text.push_str(&self.digits(10));
        }
        if float && matches!(self.peek(), Some('e' | 'E')) {
            let sign = self.peek_at(1);
            let has_exp = match sign {
                Some('+' | '-') => self.peek_at(2).is_some_and(|d| d.is_ascii_digit()),
                Some(d) => d.is_ascii_digit(),
                None => false,
            };
            if has_exp {
                self.bump();
                text.push('e');
                if matches!(sign, Some('+' | '-')) {
                    text.push(self.bump().unwrap());
                }
                text.push_str(&self.digits(10));
            }
        }
        if float {
            text.parse::<f64>()
                .map(TokenKind::Float)
                .map_err(|_| self.err(pos, "malformed float"))
        } else {
            text.parse::<i64>()
                .map(TokenKind::Int)
                .map_err(|_| self.err(pos, "integer literal out of range"))
        }
    }

    fn escape(&mut self, pos: Pos) -> Result<char> {
        let c = self
            .bump()
            .ok_or_else(|| self.err(pos, "unterminated escape sequence"))?;
        Ok(match c {
            'n' => '\n',
            't' => '\t',
            'r' => '\r',
            'a' => '\x07',
            'b' => '\x08',
            'f' => '\x0c',
            'v' => '\x0b',
            '0'..='7' => {
                let mut s = c.to_string();
                s.push_str(&self.digits(8));
                if self.peek() == Some('\\') {
                    self.bump();
                }
                let code = u32::from_str_radix(&s, 8).map_err(|_| self.err(pos, "bad octal escape"))?;
                char::from_u32(code).ok_or_else(|| self.err(pos, "bad octal escape"))?
            }
            'x' => {
                let s = self.digits(16);
                if self.peek() == Some('\\') {
                    self.bump();
                }
                let code = u32::from_str_radix(&s, 16).map_err(|_| self.err(pos, "bad hex escape"))?;
                char::from_u32(code).ok_or_else(|| self.err(pos, "bad hex escape"))?
            }
            '\\' | '\'' | '"' | '`' => c,
            other => return Err(self.err(pos, format!("unknown escape \\{other}"))),
        })
    }

    fn quoted(&mut self, q: char, pos: Pos) -> Result<String> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => {
                    let what = if q == '"' { "string" } else { "quoted atom" };
                    return Err(self.err(pos, format!("unterminated {what}")));
                }
                Some(c) if c == q => {
                    if self.peek() == Some(q) {
                        self.bump();
                        out.push(q);
                    } else {
                        return Ok(out);
                    }
                }
                Some('\\') => {
                    if self.peek() == Some('\n') {
                        self.bump();
                        continue;
                    }
                    out.push(self.escape(pos)?);
                }
                Some(c) => out.push(c),
            }
        }
    }
}

/// Splits `source` into tokens. Layout and comments are dropped; each
/// token keeps its exact lexeme and byte span.
pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut lx = Lexer {
        src: source,
        at: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        let layout = lx.skip_layout()?;
        match lx.next_token(layout || out.is_empty())? {
            Some(t) => out.push(t),
            None => return Ok(out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn simple_clause() {
        assert_eq!(
            kinds("p(X)."),
            vec![
                TokenKind::Atom("p".into()),
                TokenKind::Punct('('),
                TokenKind::Var("X".into()),
                TokenKind::Punct(')'),
                TokenKind::End
            ]
        );
    }

    #[test]
    fn empty_list_is_one_atom() {
        assert_eq!(kinds("[]"), vec![TokenKind::Atom("[]".into())]);
    }

    #[test]
    fn operators_split_at_iso_boundaries() {
        // `:-` and `;` are separate name tokens; `;` is a solo char.
        assert_eq!(
            kinds("a:-b;c."),
            vec![
                TokenKind::Atom("a".into()),
                TokenKind::Atom(":-".into()),
                TokenKind::Atom("b".into()),
                TokenKind::Atom(";".into()),
                TokenKind::Atom("c".into()),
                TokenKind::End
            ]
        );
        assert_eq!(
            kinds("X=..Y"),
            vec![
                TokenKind::Var("X".into()),
                TokenKind::Atom("=..".into()),
                TokenKind::Var("Y".into())
            ]
        );
    }

    #[test]
    fn numbers() {
        assert_eq!(
            kinds("12 1.5 2.0e3 0'a 0x1F 1.e"),
            vec![
                TokenKind::Int(12),
                TokenKind::Float(1.5),
                TokenKind::Float(2000.0),
                TokenKind::Int(97),
                TokenKind::Int(31),
                TokenKind::Int(1),
                TokenKind::Atom(".".into()),
                TokenKind::Atom("e".into()),
            ]
        );
    }

    #[test]
    fn quoted_and_strings() {
        assert_eq!(
            kinds(r#"'it''s' "a\nb" 'p q'"#),
            vec![
                TokenKind::Atom("it's".into()),
                TokenKind::Str("a\nb".into()),
                TokenKind::Atom("p q".into())
            ]
        );
    }

    #[test]
    fn comments_skipped() {
        let toks = tokenize("a % line\n /* block */ b.").unwrap();
        assert_eq!(toks.len(), 3);
        assert!(toks[1].layout_before);
        assert_eq!(toks[1].pos, Pos::new(2, 14));
    }

    #[test]
    fn unterminated_inputs_report_position() {
        for (src, line, col) in [("a 'abc", 1, 3), ("\n \"x", 2, 2), ("/* x", 1, 1)] {
            match tokenize(src) {
                Err(Error::Lex { pos, .. }) => assert_eq!(pos, Pos::new(line, col), "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn end_token_requires_layout() {
        assert_eq!(
            kinds("a.b"),
            vec![
                TokenKind::Atom("a".into()),
                TokenKind::Atom(".".into()),
                TokenKind::Atom("b".into()),
            ]
        );
        assert_eq!(kinds("a.%c"), vec![TokenKind::Atom("a".into()), TokenKind::End]);
    }
}
