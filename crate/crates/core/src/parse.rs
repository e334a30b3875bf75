//! Recursive-descent parser for C-style boolean decisions.
//!
//! Grammar (precedence `!` > `&&` > `||`):
//!
//! ```text
//! or    := and ("||" and)*
//! and   := unary ("&&" unary)*
//! unary := "!" unary | "(" or ")" | IDENT
//! IDENT := [A-Za-z_][A-Za-z0-9_]*
//! ```

use std::fmt;

use thiserror::Error;

use crate::expr::{Connective, Expr};

/// Token kinds a parser position can accept, reported on syntax errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expected {
    Identifier,
    Not,
    LParen,
    RParen,
    And,
    Or,
    End,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Identifier => "identifier",
            Expected::Not => "`!`",
            Expected::LParen => "`(`",
            Expected::RParen => "`)`",
            Expected::And => "`&&`",
            Expected::Or => "`||`",
            Expected::End => "end of input",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}{}", fmt_expected(.expected), fmt_found(.found))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<Expected>,
    pub found: Option<String>,
}

fn fmt_expected(expected: &[Expected]) -> String {
    expected.iter().map(ToString::to_string).collect::<Vec<_>>().join(" or ")
}

fn fmt_found(found: &Option<String>) -> String {
    match found {
        Some(tok) => format!(", found `{tok}`"),
        None => ", found end of input".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Not => "!".into(),
            Tok::And => "&&".into(),
            Tok::Or => "||".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b if b.is_ascii_whitespace() => i += 1,
            b'!' => {
                toks.push((i, Tok::Not));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'&' | b'|' => {
                if bytes.get(i + 1) != Some(&b) {
                    let expected = if b == b'&' { Expected::And } else { Expected::Or };
                    return Err(SyntaxError {
                        offset: i,
                        expected: vec![expected],
                        found: Some((b as char).to_string()),
                    });
                }
                toks.push((i, if b == b'&' { Tok::And } else { Tok::Or }));
                i += 2;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                let ch = input[i..].chars().next().unwrap();
                return Err(SyntaxError {
                    offset: i,
                    expected: vec![Expected::Identifier, Expected::Not, Expected::LParen],
                    found: Some(ch.to_string()),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: Vec<Expected>) -> SyntaxError {
        SyntaxError { offset: self.offset(), expected, found: self.peek().map(Tok::text) }
    }

    fn parse_nary(&mut self, op: Connective) -> Result<Expr, SyntaxError> {
        let (tok, sub) = match op {
            Connective::Or => (Tok::Or, Some(Connective::And)),
            Connective::And => (Tok::And, None),
        };
        let next = |p: &mut Parser| match sub {
            Some(c) => p.parse_nary(c),
            None => p.parse_unary(),
        };
        let mut operands = vec![next(self)?];
        while self.peek() == Some(&tok) {
            self.pos += 1;
            operands.push(next(self)?);
        }
        Ok(Expr::nary(op, operands))
    }

    fn parse_unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::not(self.parse_unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_nary(Connective::Or)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error(vec![Expected::RParen, Expected::And, Expected::Or]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            _ => Err(self.error(vec![Expected::Identifier, Expected::Not, Expected::LParen])),
        }
    }
}

/// Parses a decision string into a flattened AST.
pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let mut parser = Parser { toks: tokenize(input)?, pos: 0, end: input.len() };
    let expr = parser.parse_nary(Connective::Or)?;
    if parser.peek().is_some() {
        return Err(parser.error(vec![Expected::And, Expected::Or, Expected::End]));
    }
    Ok(expr)
}

impl std::str::FromStr for Expr {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
