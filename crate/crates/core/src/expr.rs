// Copyright 2026 the lorentz-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Minimal closed-form expression grammar for declarative potential configs.
//!
//! Supported: `+ - * / ^`, `pow(a,b)`, `sin cos exp log sqrt abs`, `|e|`,
//! the coordinates `t x1 x2 x3`, and the constants `pi` and `T`.

use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Var {
    T,
    X1,
    X2,
    X3,
    Pi,
    Period,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Unary(UnaryFn, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = lex(src)?;
        let mut p = Parser { tokens, pos: 0, src };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Expr(format!(
                "unexpected trailing input at token {} in `{}`",
                p.pos, src
            )));
        }
        Ok(e)
    }

    pub fn eval(&self, t: f64, x: Vec3, period: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::T) => t,
            Expr::Var(Var::X1) => x[0],
            Expr::Var(Var::X2) => x[1],
            Expr::Var(Var::X3) => x[2],
            Expr::Var(Var::Pi) => std::f64::consts::PI,
            Expr::Var(Var::Period) => period,
            Expr::Unary(f, a) => {
                let v = a.eval(t, x, period);
                match f {
                    UnaryFn::Sin => v.sin(),
                    UnaryFn::Cos => v.cos(),
                    UnaryFn::Exp => v.exp(),
                    UnaryFn::Log => v.ln(),
                    UnaryFn::Sqrt => v.sqrt(),
                    UnaryFn::Abs => v.abs(),
                    UnaryFn::Neg => -v,
                }
            }
            Expr::Bin(op, a, b) => {
                let va = a.eval(t, x, period);
                let vb = b.eval(t, x, period);
                match op {
                    BinOp::Add => va + vb,
                    BinOp::Sub => va - vb,
                    BinOp::Mul => va * vb,
                    BinOp::Div => va / vb,
                    BinOp::Pow => va.powf(vb),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Bar,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '×' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' | '÷' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            '|' => {
                out.push(Token::Bar);
                i += 1;
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_digit()
                        || bytes[i] == '.'
                        || bytes[i] == 'e'
                        || bytes[i] == 'E'
                        || ((bytes[i] == '+' || bytes[i] == '-')
                            && i > start
                            && (bytes[i - 1] == 'e' || bytes[i - 1] == 'E')))
                {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let v: f64 = text
                    .parse()
                    .map_err(|_| Error::Expr(format!("bad number `{text}` in `{src}`")))?;
                out.push(Token::Num(v));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(bytes[start..i].iter().collect()));
            }
            _ => return Err(Error::Expr(format!("unexpected character `{c}` in `{src}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> Result<()> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Expr(format!("expected {t:?} in `{}`", self.src)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    e = Expr::Bin(BinOp::Add, Box::new(e), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    e = Expr::Bin(BinOp::Sub, Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    e = Expr::Bin(BinOp::Mul, Box::new(e), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    e = Expr::Bin(BinOp::Div, Box::new(e), Box::new(self.unary()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Unary(UnaryFn::Neg, Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            // right-associative; `-` binds tighter than `^` on the exponent
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(&Token::RParen)?;
                Ok(e)
            }
            Some(Token::Bar) => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(&Token::Bar)?;
                Ok(Expr::Unary(UnaryFn::Abs, Box::new(e)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Token::LParen) {
                    self.pos += 1;
                    let first = self.expr()?;
                    if name == "pow" {
                        self.eat(&Token::Comma)?;
                        let second = self.expr()?;
                        self.eat(&Token::RParen)?;
                        return Ok(Expr::Bin(BinOp::Pow, Box::new(first), Box::new(second)));
                    }
                    self.eat(&Token::RParen)?;
                    let f = match name.as_str() {
                        "sin" => UnaryFn::Sin,
                        "cos" => UnaryFn::Cos,
                        "exp" => UnaryFn::Exp,
                        "log" => UnaryFn::Log,
                        "sqrt" => UnaryFn::Sqrt,
                        "abs" => UnaryFn::Abs,
                        _ => return Err(Error::Expr(format!("unknown function `{name}`"))),
                    };
                    return Ok(Expr::Unary(f, Box::new(first)));
                }
                let v = match name.as_str() {
                    "t" => Var::T,
                    "x1" => Var::X1,
                    "x2" => Var::X2,
                    "x3" => Var::X3,
                    "pi" => Var::Pi,
                    "T" => Var::Period,
                    _ => return Err(Error::Expr(format!("unknown identifier `{name}`"))),
                };
                Ok(Expr::Var(v))
            }
            other => Err(Error::Expr(format!(
                "unexpected token {other:?} in `{}`",
                self.src
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates_pulse() {
        let e = Expr::parse("sin(2*pi*t/T) * exp(-(x1^2 + x2^2 + x3^2))").unwrap();
        let v = e.eval(0.25, Vec3::zeros(), 1.0);
        assert!((v - 1.0).abs() < 1e-15);
        let v = e.eval(0.25, Vec3::new(1.0, 0.0, 0.0), 1.0);
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn abs_bars_and_pow_call() {
        let e = Expr::parse("pow(|0 - x1|, 3) + sqrt(4)").unwrap();
        assert!((e.eval(0.0, Vec3::new(-2.0, 0.0, 0.0), 1.0) - 10.0).abs() < 1e-14);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = Expr::parse("-2^2 + 3*2").unwrap();
        // unary minus applies to the whole power: -(2^2) + 6 = 2
        assert!((e.eval(0.0, Vec3::zeros(), 1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_identifier() {
        assert!(Expr::parse("y + 1").is_err());
        assert!(Expr::parse("sin(1").is_err());
        assert!(Expr::parse("1 2").is_err());
    }
}
