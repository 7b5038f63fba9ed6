//! Textual formula language.
//!
//! The grammar accepts canonical call syntax (`MOD(SUB(h,1),3)`) plus infix
//! `+`, `-`, `*` with conventional precedence, parenthesized grouping, and a
//! unary minus. Infix operators are lowered onto `ADD`/`SUB`/`TIMES`, so the
//! printed form of any parsed tree is always call syntax.

use super::{Expr, Primitive, Vars};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownIdentifier(String),
    ArityMismatch { name: &'static str, expected: usize, found: usize },
    IntegerOverflow,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected {found}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier {name:?}"),
            ParseErrorKind::ArityMismatch { name, expected, found } => {
                write!(f, "{name} takes {expected} argument(s), found {found}")
            }
            ParseErrorKind::IntegerOverflow => write!(f, "integer literal out of range"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
            Tok::Comma => "','".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut value: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(i64::from(bytes[i] - b'0')))
                        .ok_or(ParseError {
                            kind: ParseErrorKind::IntegerOverflow,
                            offset: start,
                        })?;
                    i += 1;
                }
                toks.push((Tok::Int(value), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(text[i..].chars().next().unwrap()),
                    offset: i,
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn advance(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        let offset = self.offset();
        match self.advance() {
            Some(tok) if tok == want => Ok(()),
            Some(tok) => Err(ParseError {
                kind: ParseErrorKind::UnexpectedToken { found: tok.describe(), expected },
                offset,
            }),
            None => Err(ParseError {
                kind: ParseErrorKind::UnexpectedEnd { expected },
                offset,
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let prim = match self.peek() {
                Some(Tok::Plus) => Primitive::Add,
                Some(Tok::Minus) => Primitive::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Prim(prim, vec![lhs, rhs]);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.advance();
            let rhs = self.factor()?;
            lhs = Expr::Prim(Primitive::Times, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.advance() {
            Some(Tok::Int(n)) => Ok(Expr::Const(n)),
            Some(Tok::Minus) => match self.factor()? {
                Expr::Const(c) => Ok(Expr::Const(-c)),
                other => Ok(Expr::Prim(Primitive::Sub, vec![Expr::Const(0), other])),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => self.ident(name, offset),
            Some(tok) => Err(ParseError {
                kind: ParseErrorKind::UnexpectedToken {
                    found: tok.describe(),
                    expected: "an expression",
                },
                offset,
            }),
            None => Err(ParseError {
                kind: ParseErrorKind::UnexpectedEnd { expected: "an expression" },
                offset,
            }),
        }
    }

    fn ident(&mut self, name: String, offset: usize) -> Result<Expr, ParseError> {
        if let Some(prim) = Primitive::from_name(&name) {
            if self.peek() != Some(&Tok::LParen) {
                return Err(ParseError {
                    kind: ParseErrorKind::ArityMismatch {
                        name: prim.name(),
                        expected: prim.arity(),
                        found: 0,
                    },
                    offset,
                });
            }
            self.advance();
            let mut args = vec![self.expr()?];
            while self.peek() == Some(&Tok::Comma) {
                self.advance();
                args.push(self.expr()?);
            }
            self.expect(Tok::RParen, "')' or ','")?;
            if args.len() != prim.arity() {
                return Err(ParseError {
                    kind: ParseErrorKind::ArityMismatch {
                        name: prim.name(),
                        expected: prim.arity(),
                        found: args.len(),
                    },
                    offset,
                });
            }
            return Ok(Expr::Prim(prim, args));
        }
        match self.vars.index_of(&name) {
            Some(i) => Ok(Expr::Var(i)),
            None => Err(ParseError {
                kind: ParseErrorKind::UnknownIdentifier(name),
                offset,
            }),
        }
    }
}

/// Parses a formula against a variable space.
pub fn parse(text: &str, vars: &Vars) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, vars, end: text.len() };
    let expr = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(ParseError {
            kind: ParseErrorKind::UnexpectedToken {
                found: parser.toks[parser.pos].0.describe(),
                expected: "end of input",
            },
            offset: parser.offset(),
        });
    }
    Ok(expr)
}
