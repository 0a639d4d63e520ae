//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers match `[a-zA-Z][a-zA-Z0-9]*`. Division is only allowed by a
//! nonzero constant, which is how rational coefficients such as `1/4*eps` are
//! written.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{BaseField, Rational};

use super::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("digit run parses"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        column += i - start;
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    field: BaseField,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek().tok == Tok::Sym('/') {
                let slash = self.bump();
                let divisor = self.unary()?;
                let inv = divisor
                    .as_constant()
                    .and_then(|c| c.inv())
                    .ok_or_else(|| self.error_at(&slash, "can only divide by a nonzero constant"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let t = self.bump();
            let Tok::Int(n) = &t.tok else {
                return Err(self.error_at(&t, "expected a non-negative integer exponent"));
            };
            let e: u32 = n
                .try_into()
                .map_err(|_| self.error_at(&t, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => {
                let c = self
                    .field
                    .from_rational(&Rational::from_integer(n.clone()))
                    .map_err(|e| self.error_at(&t, e.to_string()))?;
                Ok(MultiPoly::constant(self.field, c))
            }
            Tok::Ident(name) => Ok(MultiPoly::var(self.field, name)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::Sym(')') {
                    return Err(self.error_at(&close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error_at(&t, "unexpected end of input")),
            Tok::Sym(c) => Err(self.error_at(&t, format!("unexpected {c:?}"))),
        }
    }
}

/// Parse polynomial text with coefficients in `field`.
pub fn parse_poly(text: &str, field: BaseField) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, field };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, "trailing input"));
    }
    Ok(out)
}
