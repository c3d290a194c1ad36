//! Recursive-descent parser for the element grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Positions are character offsets into the input. The parsed tree is
//! evaluated into any [`Algebra`]: the coefficient field, or the skew
//! polynomial ring where products keep their order.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn is_operator(c: char) -> bool {
    matches!(c, '+' | '-' | '−' | '*' | '·' | '/' | '^' | '(' | ')')
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !is_operator(c) && (c.is_alphanumeric() || c == '_' || !c.is_ascii())
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Token::Int(digits.parse().unwrap()), start));
                continue;
            }
            c if is_ident_char(c) => {
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return Err(Error::parse(start, format!("unexpected character '{}'", other))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, chars.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Int(BigInt),
    Ident(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {}", what)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    let pos = self.bump().1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        let pos = self.bump().1;
        let parenthesised = *self.peek() == Token::LParen;
        if parenthesised {
            self.bump();
        }
        let negative = *self.peek() == Token::Minus;
        if negative {
            self.bump();
        }
        let exp_pos = self.pos();
        let e = match self.bump().0 {
            Token::Int(n) => n
                .to_i64()
                .ok_or_else(|| Error::parse(exp_pos, "exponent too large"))?,
            _ => return Err(Error::parse(exp_pos, "expected integer exponent")),
        };
        if parenthesised {
            self.expect(Token::RParen, "')'")?;
        }
        if *self.peek() == Token::Caret {
            return Err(Error::parse(self.pos(), "chained exponents need parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }, pos))
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, pos) = self.bump();
        match tok {
            Token::Int(n) => Ok(Expr::Int(n)),
            Token::Ident(name) => Ok(Expr::Ident(name, pos)),
            Token::LParen => {
                let e = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(e)
            }
            Token::End => Err(Error::parse(pos, "unexpected end of input")),
            other => Err(Error::parse(pos, format!("unexpected token {:?}", other))),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Target of expression evaluation.
pub(crate) trait Algebra {
    type Value;

    fn int(&self, n: &BigInt) -> Self::Value;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    /// `pos` locates the '/' for error reporting.
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, e: i64, pos: usize) -> Result<Self::Value>;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        Ok(match e {
            Expr::Int(n) => self.int(n),
            Expr::Ident(name, pos) => self.ident(name, *pos)?,
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                self.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(a, b)
            }
            Expr::Div(a, b, pos) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.div(a, b, *pos)?
            }
            Expr::Pow(a, n, pos) => {
                let a = self.eval(a)?;
                self.pow(a, *n, *pos)?
            }
        })
    }
}
