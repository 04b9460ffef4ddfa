//! Expression parsing for elements of F_q(t) and its parametrized families.
//!
//! Grammar: `+ - * / ^` with integer literals (reduced mod p), parentheses,
//! implicit multiplication (`3t^2`, `t(t+1)`), and identifiers. `t` is the
//! variable, `z` the generator of F_q over F_p; other identifiers are left
//! to the caller's evaluator.

use super::fq::Fq;
use super::place::Place;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Evaluation target for [`Expr`].
pub trait ExprOps {
    type Value: Clone;
    fn int(&self, n: i64) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: &Self::Value, n: i64) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<O: ExprOps>(&self, ops: &O) -> Result<O::Value> {
        Ok(match self {
            Expr::Int(n) => ops.int(*n)?,
            Expr::Var(v) => ops.var(v)?,
            Expr::Neg(a) => ops.neg(&a.eval(ops)?),
            Expr::Add(a, b) => ops.add(&a.eval(ops)?, &b.eval(ops)?),
            Expr::Sub(a, b) => ops.sub(&a.eval(ops)?, &b.eval(ops)?),
            Expr::Mul(a, b) => ops.mul(&a.eval(ops)?, &b.eval(ops)?),
            Expr::Div(a, b) => ops.div(&a.eval(ops)?, &b.eval(ops)?)?,
            Expr::Pow(a, n) => ops.pow(&a.eval(ops)?, *n)?,
        })
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Int(txt.parse().map_err(|_| Error::Parse(format!("integer literal too large: {txt}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }
    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }
    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    base = Expr::Pow(Box::new(base), if neg { -n } else { n });
                }
                _ => return Err(Error::Parse("exponent must be an integer literal".into())),
            }
        }
        Ok(base)
    }
    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in \"{s}\"")));
    }
    Ok(e)
}

/// Evaluates expressions in F_q(t).
pub struct RatFuncOps {
    pub f: Fq,
}

impl ExprOps for RatFuncOps {
    type Value = RatFunc;
    fn int(&self, n: i64) -> Result<RatFunc> {
        Ok(RatFunc::constant(self.f, self.f.from_int(n)))
    }
    fn var(&self, name: &str) -> Result<RatFunc> {
        match name {
            "t" | "T" => Ok(RatFunc::t(self.f)),
            "z" if self.f.e() > 1 => Ok(RatFunc::constant(self.f, self.f.gen())),
            _ => Err(Error::Parse(format!("unknown identifier '{name}'"))),
        }
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        a.div(b).map_err(|_| Error::Parse("division by zero".into()))
    }
    fn pow(&self, a: &RatFunc, n: i64) -> Result<RatFunc> {
        a.pow(n).map_err(|_| Error::Parse("negative power of zero".into()))
    }
}

pub fn parse_ratfunc(f: Fq, s: &str) -> Result<RatFunc> {
    parse_expr(s)?.eval(&RatFuncOps { f })
}

pub fn parse_poly(f: Fq, s: &str) -> Result<Poly> {
    let x = parse_ratfunc(f, s)?;
    if !x.is_poly() {
        return Err(Error::Parse(format!("\"{s}\" is not a polynomial")));
    }
    Ok(x.num().clone())
}

/// `inf` or a monic irreducible polynomial.
pub fn parse_place(f: Fq, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "oo" {
        return Ok(Place::Infinite);
    }
    let p = parse_poly(f, s)?;
    Place::finite(p).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ratfuncs() {
        let f = Fq::new(5).unwrap();
        let x = parse_ratfunc(f, "(t^2 + 1)/(t - 1)").unwrap();
        assert_eq!(x.to_string(), "(t^2 + 1)/(t + 4)");
        assert_eq!(parse_ratfunc(f, "7t^2").unwrap().to_string(), "2*t^2");
        assert_eq!(parse_ratfunc(f, "t(t+1) - t^2").unwrap(), RatFunc::t(f));
        assert_eq!(parse_ratfunc(f, "t^-1").unwrap(), RatFunc::t(f).inv().unwrap());
        assert!(parse_ratfunc(f, "1/(t-t)").is_err());
        assert!(parse_ratfunc(f, "t + ").is_err());
        assert!(parse_ratfunc(f, "t $ 1").is_err());
        let f4 = Fq::new(4).unwrap();
        let zt = parse_ratfunc(f4, "z*t + z^2").unwrap();
        assert_eq!(zt.num().coeff(1), f4.gen());
    }

    #[test]
    fn parses_places() {
        let f = Fq::new(3).unwrap();
        assert_eq!(parse_place(f, "inf").unwrap(), Place::Infinite);
        assert_eq!(parse_place(f, "t^2+1").unwrap().deg(), 2);
        assert!(parse_place(f, "t^2-1").is_err());
    }
}
