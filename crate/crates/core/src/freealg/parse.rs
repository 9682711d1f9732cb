//! Expression grammar shared by noncommutative and commutative polynomials.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | name | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! `*` is mandatory between factors; juxtaposition is a syntax error.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Alphabet, NcJet};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Expr {
    Num(Rational),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

/// Interprets an [`Expr`] in some ring.
pub(crate) trait Evaluator {
    type Value;

    fn constant(&self, q: &Rational) -> Self::Value;
    fn variable(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, e: u32) -> Self::Value;

    fn eval(&self, expr: &Expr) -> Result<Self::Value> {
        Ok(match expr {
            Expr::Num(q) => self.constant(q),
            Expr::Var { name, pos } => self.variable(name, *pos)?,
            Expr::Neg(inner) => {
                let v = self.eval(inner)?;
                self.neg(v)
            }
            Expr::Sum(items) => {
                let mut acc = self.constant(&Rational::zero());
                for item in items {
                    let v = self.eval(item)?;
                    acc = self.add(acc, v);
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = self.constant(&Rational::one());
                for item in items {
                    let v = self.eval(item)?;
                    acc = self.mul(acc, v);
                }
                acc
            }
            Expr::Pow(base, e) => {
                let v = self.eval(base)?;
                self.pow(v, *e)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let value = text[start..i].parse::<BigInt>().expect("digits");
            tokens.push((Token::Int(value), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push((Token::Name(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            tokens.push((Token::Sym(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Token::Sym(sym)) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut items = Vec::new();
        let first = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        items.push(first);
        loop {
            if self.eat('+') {
                items.push(self.term()?);
            } else if self.eat('-') {
                items.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Sum(items)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut items = vec![self.factor()?];
        while self.eat('*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Product(items)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat('^') {
            match self.peek() {
                Some(Token::Int(n)) => {
                    let Ok(e) = u32::try_from(n) else {
                        return self.error("exponent too large");
                    };
                    self.next += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.error("expected a natural number after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.next += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            self.next += 1;
                            Ok(Expr::Num(Rational::new(n, d)))
                        }
                        _ => self.error("expected a positive denominator"),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Some(Token::Name(name)) => {
                self.next += 1;
                Ok(Expr::Var { name, pos })
            }
            Some(Token::Sym('(')) => {
                self.next += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.error("expected a number, a variable or `(`"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        next: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.next < parser.tokens.len() {
        let msg = match parser.peek() {
            Some(Token::Name(_)) | Some(Token::Int(_)) | Some(Token::Sym('(')) => {
                "missing `*` between factors"
            }
            _ => "unexpected token",
        };
        return parser.error(msg);
    }
    Ok(expr)
}

struct JetEvaluator<'a> {
    alphabet: &'a Arc<Alphabet>,
    cap: usize,
    truncated: std::cell::Cell<bool>,
}

impl Evaluator for JetEvaluator<'_> {
    type Value = NcJet;

    fn constant(&self, q: &Rational) -> NcJet {
        NcJet::monomial(self.alphabet, self.cap, super::Word::one(), q.clone())
    }

    fn variable(&self, name: &str, _pos: usize) -> Result<NcJet> {
        let index = self.alphabet.index_of(name)?;
        Ok(NcJet::var(self.alphabet, self.cap, index))
    }

    fn add(&self, mut a: NcJet, b: NcJet) -> NcJet {
        a.add_scaled(&b, &Rational::one());
        a
    }

    fn neg(&self, a: NcJet) -> NcJet {
        a.neg()
    }

    fn mul(&self, a: NcJet, b: NcJet) -> NcJet {
        let (out, dropped) = a.mul_tracked(&b);
        if dropped {
            self.truncated.set(true);
        }
        out
    }

    fn pow(&self, a: NcJet, e: u32) -> NcJet {
        if e > 1 && a.order().is_some_and(|o| o > 0 && (o as u64) * (e as u64) > self.cap as u64)
        {
            self.truncated.set(true);
            return NcJet::zero(self.alphabet, self.cap);
        }
        let mut acc = NcJet::one(self.alphabet, self.cap);
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base.clone());
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base.clone(), base);
            }
        }
        acc
    }
}

/// Parses an expression into a jet truncated at `cap`.
pub fn parse_poly(text: &str, alphabet: &Arc<Alphabet>, cap: usize) -> Result<NcJet> {
    parse_poly_checked(text, alphabet, cap).map(|(jet, _)| jet)
}

/// Like [`parse_poly`], also reporting whether truncation discarded terms.
pub fn parse_poly_checked(
    text: &str,
    alphabet: &Arc<Alphabet>,
    cap: usize,
) -> Result<(NcJet, bool)> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let expr = parse_expr(text)?;
    let eval = JetEvaluator {
        alphabet,
        cap,
        truncated: std::cell::Cell::new(false),
    };
    let jet = eval.eval(&expr)?;
    Ok((jet, eval.truncated.get()))
}
