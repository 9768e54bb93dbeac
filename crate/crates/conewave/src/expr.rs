//! Recursive-descent parser for forcing expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)? | '-' factor
//! base   := rational | var | '(' expr ')'
//! ```
//! Variables are `x1..xd` and `t`; rational literals accept `p/q`, integers,
//! and decimal strings (converted exactly). Implicit multiplication is
//! rejected. Unary minus binds the whole factor (`-x1^2` is `-(x1^2)`),
//! which keeps printing and reparsing a fixed point. Lowering to
//! [`MultiPoly`] is exact.

use thiserror::Error;

use crate::arith::{parse_rational, Rational};
use crate::polyalg::{MultiPoly, Var};

/// Parse error with a byte position into the source text.
#[derive(Debug, Error, PartialEq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Expression AST. Exponents are literal non-negative integers.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Number(Rational),
    Variable(Var),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    /// Exact lowering to a polynomial in dimension `d`.
    pub fn to_poly(&self, d: usize) -> MultiPoly {
        match self {
            ExprAst::Number(r) => MultiPoly::constant(d, r.clone()),
            ExprAst::Variable(v) => MultiPoly::var(d, *v),
            ExprAst::Add(a, b) => a.to_poly(d).add(&b.to_poly(d)),
            ExprAst::Sub(a, b) => a.to_poly(d).sub(&b.to_poly(d)),
            ExprAst::Mul(a, b) => a.to_poly(d).mul(&b.to_poly(d)),
            ExprAst::Neg(a) => a.to_poly(d).neg(),
            ExprAst::Pow(a, e) => a.to_poly(d).pow(*e),
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    acc = ExprAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.error("expected a non-negative integer exponent after '^'");
            }
            let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
            let e: u32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.error("exponent out of range"),
            };
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => self.number(),
            Some(b) if b == b't' || b == b'x' => self.variable(),
            Some(b) => self.error(format!("unexpected character '{}'", b as char)),
        }
    }

    fn number(&mut self) -> Result<ExprAst, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        // optional exact decimal part or rational denominator
        if self.text.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        } else if self.text.get(self.pos) == Some(&b'/') {
            let save = self.pos;
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                self.pos = save;
                return self.error("expected digits after '/' in rational literal");
            }
        }
        let lit = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        match parse_rational(lit) {
            Some(r) => Ok(ExprAst::Number(r)),
            None => {
                self.pos = start;
                self.error(format!("invalid numeric literal '{lit}'"))
            }
        }
    }

    fn variable(&mut self) -> Result<ExprAst, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let b = self.bump().unwrap();
        if b == b't' {
            return Ok(ExprAst::Variable(Var::T));
        }
        // b == 'x': read the index digits
        let dstart = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if dstart == self.pos {
            self.pos = start;
            return self.error("variables are x1..xd and t");
        }
        let digits = std::str::from_utf8(&self.text[dstart..self.pos]).unwrap();
        let i: usize = match digits.parse() {
            Ok(i) => i,
            Err(_) => {
                self.pos = start;
                return self.error("variable index out of range");
            }
        };
        if i == 0 || i > self.dim {
            self.pos = start;
            return self.error(format!("unknown variable x{i}: dimension is {}", self.dim));
        }
        Ok(ExprAst::Variable(Var::X(i - 1)))
    }
}

/// Parse an expression in dimension `d`.
pub fn parse_expr(text: &str, d: usize) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        dim: d,
    };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(ast)
}

/// Parse and lower to a polynomial in one step.
pub fn parse_poly(text: &str, d: usize) -> Result<MultiPoly, ParseError> {
    Ok(parse_expr(text, d)?.to_poly(d))
}
