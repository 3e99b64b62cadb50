//! Recursive-descent parser for the textual expression grammar shared by
//! parameter fractions and Laurent polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := number | ident | '(' expr ')'
//! ```
//!
//! Identifiers are `q1`, `q2` and `z1, z2, ...`.

use num_traits::{One, Zero};

use super::param_rat::ParamRat;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i32 = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => n
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        self.pos += 1;
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Num(parse_rational(&n)?)),
            Tok::Ident(name) => Ok(Expr::Var(name)),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// Evaluates an expression tree in `ℚ(q1, q2)`; `z` variables are rejected.
pub fn eval_param(e: &Expr) -> Result<ParamRat> {
    Ok(match e {
        Expr::Num(r) => ParamRat::constant(r.clone()),
        Expr::Var(v) => match v.as_str() {
            "q1" => ParamRat::q1(),
            "q2" => ParamRat::q2(),
            other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
        },
        Expr::Add(a, b) => &eval_param(a)? + &eval_param(b)?,
        Expr::Sub(a, b) => &eval_param(a)? - &eval_param(b)?,
        Expr::Mul(a, b) => &eval_param(a)? * &eval_param(b)?,
        Expr::Div(a, b) => {
            let d = eval_param(b)?;
            if d.is_zero() {
                return Err(Error::Parse("division by zero".into()));
            }
            &eval_param(a)? / &d
        }
        Expr::Neg(a) => -eval_param(a)?,
        Expr::Pow(a, k) => {
            let base = eval_param(a)?;
            if *k < 0 && base.is_zero() {
                return Err(Error::Parse("zero to a negative power".into()));
            }
            if *k == 0 {
                ParamRat::one()
            } else {
                base.pow(*k)
            }
        }
    })
}

pub fn parse_param_rat(s: &str) -> Result<ParamRat> {
    eval_param(&parse_expr(s)?)
}
