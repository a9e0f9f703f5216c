//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive, `^` binds tighter than `*`, which binds
//! tighter than `+`/`-`; unary minus allowed):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := integer | variable | '(' expr ')'
//! ```

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::RingPresentation;
use crate::error::{Error, Result};

/// Parses `text` into a polynomial of `ring`, coefficients reduced mod p.
pub fn parse_polynomial(text: &str, ring: &RingPresentation) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
    };
    let poly = parser.expr()?;
    match parser.peek() {
        Some(tok) => Err(parser.unexpected(tok.clone())),
        None => Ok(poly),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let kind = match c {
            '+' => {
                advance(&mut chars);
                TokenKind::Plus
            }
            '-' => {
                advance(&mut chars);
                TokenKind::Minus
            }
            '*' => {
                advance(&mut chars);
                TokenKind::Star
            }
            '^' => {
                advance(&mut chars);
                TokenKind::Caret
            }
            '(' => {
                advance(&mut chars);
                TokenKind::LParen
            }
            ')' => {
                advance(&mut chars);
                TokenKind::RParen
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                let mut overflow = false;
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    advance(&mut chars);
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64 - '0' as u64))
                        .unwrap_or_else(|| {
                            overflow = true;
                            value
                        });
                }
                if overflow {
                    return Err(Error::Parse {
                        line: tline,
                        col: tcol,
                        msg: "integer literal too large".into(),
                    });
                }
                TokenKind::Int(value)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        advance(&mut chars);
                    } else {
                        break;
                    }
                }
                TokenKind::Ident(name)
            }
            other => {
                return Err(Error::Parse {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        tokens.push(Token {
            kind,
            line: tline,
            col: tcol,
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    ring: &'a RingPresentation,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_position(&self) -> (usize, usize) {
        self.tokens
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1))
    }

    fn unexpected(&self, tok: Token) -> Error {
        Error::Parse {
            line: tok.line,
            col: tok.col,
            msg: format!("unexpected token {:?}", tok.kind),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&TokenKind::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&TokenKind::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(&TokenKind::Star) {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(&TokenKind::Minus) {
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if self.eat(&TokenKind::Caret) {
            let tok = self.bump().ok_or_else(|| {
                let (line, col) = self.end_position();
                Error::Parse {
                    line,
                    col,
                    msg: "expected exponent after '^'".into(),
                }
            })?;
            match tok.kind {
                TokenKind::Int(n) => {
                    Monomial::check_exponent(n)?;
                    return Ok(base.pow(n));
                }
                _ => return Err(self.unexpected(tok)),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let tok = self.bump().ok_or_else(|| {
            let (line, col) = self.end_position();
            Error::Parse {
                line,
                col,
                msg: "unexpected end of input".into(),
            }
        })?;
        match tok.kind {
            TokenKind::Int(n) => Ok(Polynomial::constant(
                self.ring.field(),
                self.ring.nvars(),
                n,
            )),
            TokenKind::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(self.ring.variable(i)),
                None => Err(Error::UnknownVariable {
                    name,
                    line: tok.line,
                    col: tok.col,
                }),
            },
            TokenKind::LParen => {
                let inner = self.expr()?;
                if self.eat(&TokenKind::RParen) {
                    Ok(inner)
                } else {
                    let (line, col) = match self.peek() {
                        Some(t) => (t.line, t.col),
                        None => self.end_position(),
                    };
                    Err(Error::Parse {
                        line,
                        col,
                        msg: "expected ')'".into(),
                    })
                }
            }
            _ => Err(self.unexpected(tok)),
        }
    }
}
