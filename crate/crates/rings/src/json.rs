//! JSON schema for series coefficient tables and a small expression parser.
//!
//! Coefficients are written as a pair of integer-coefficient polynomials in
//! `q` (`"num"`, `"den"`). The parser accepts `+ - * / ^`, parentheses,
//! non-negative integer literals and named variables, and evaluates into any
//! [`ExprField`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{RingError, RingResult};
use crate::logseries::LogSeries;
use crate::nilpotent::NilpotentElement;
use crate::ratfunc::RationalFunctionQ;
use crate::scalar::Scalar;

/// One stored coefficient: `Q^d ε^i L^m` with value `num/den`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub d: usize,
    pub i: usize,
    pub m: usize,
    pub num: String,
    pub den: String,
    /// Implied power of `z`, present only for cohomological tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zexp: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub coeffs: Vec<CoeffEntry>,
}

/// Scalars that can be written as an integer-polynomial pair in `q`.
pub trait JsonScalar: Scalar {
    fn to_pair(&self) -> (String, String);
    fn from_pair(num: &str, den: &str) -> RingResult<Self>;
}

impl JsonScalar for RationalFunctionQ {
    fn to_pair(&self) -> (String, String) {
        self.integer_strings("q")
    }

    fn from_pair(num: &str, den: &str) -> RingResult<Self> {
        let n: RationalFunctionQ = parse_expr(num)?.eval(&q_var)?;
        let d: RationalFunctionQ = parse_expr(den)?.eval(&q_var)?;
        d.inv().map(|di| &n * &di)
    }
}

impl JsonScalar for BigRational {
    fn to_pair(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }

    fn from_pair(num: &str, den: &str) -> RingResult<Self> {
        let n: BigRational = parse_expr(num)?.eval(&no_vars)?;
        let d: BigRational = parse_expr(den)?.eval(&no_vars)?;
        d.try_inv().map(|di| n * di).ok_or(RingError::DivisionByZero)
    }
}

fn q_var(name: &str) -> Option<RationalFunctionQ> {
    (name == "q").then(RationalFunctionQ::q)
}

fn no_vars(_: &str) -> Option<BigRational> {
    None
}

/// Serialize the nonzero coefficients of a log series, ordered by `(d, i, m)`.
pub fn log_series_to_json<S: JsonScalar>(s: &LogSeries<S>) -> SeriesJson {
    let mut coeffs = Vec::new();
    for d in 0..=s.truncation() {
        for i in 0..=s.order() {
            for m in 0..=s.logdegree() {
                let c = s.get(d, i, m);
                if c.is_zero() {
                    continue;
                }
                let (num, den) = c.to_pair();
                coeffs.push(CoeffEntry { d, i, m, num, den, zexp: None });
            }
        }
    }
    SeriesJson { n: s.order(), d: s.truncation(), coeffs }
}

/// Inverse of [`log_series_to_json`]; the log degree is the largest `m` present.
pub fn log_series_from_json<S: JsonScalar>(j: &SeriesJson) -> RingResult<LogSeries<S>> {
    let logdeg = j.coeffs.iter().map(|c| c.m).max().unwrap_or(0);
    let mut out = LogSeries::<S>::zero(j.n, j.d, logdeg);
    for c in &j.coeffs {
        if c.d > j.d || c.i > j.n {
            return Err(RingError::Parse(format!("entry (d={}, i={}) outside N={}, D={}", c.d, c.i, j.n, j.d)));
        }
        let v = S::from_pair(&c.num, &c.den)?;
        let mut coeffs = out.coeff(c.d, c.m).coeffs().to_vec();
        coeffs[c.i] = coeffs[c.i].add_ref(&v);
        out.set(c.d, c.m, NilpotentElement::new(j.n, coeffs));
    }
    Ok(out)
}

/// Field operations needed to evaluate a parsed expression.
pub trait ExprField: Sized + Clone {
    fn from_integer(n: BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` on division by zero.
    fn div(&self, other: &Self) -> Option<Self>;
}

impl ExprField for BigRational {
    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl ExprField for RationalFunctionQ {
    fn from_integer(n: BigInt) -> Self {
        RationalFunctionQ::constant(BigRational::from_integer(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().ok().map(|i| self * &i)
    }
}

/// Parsed arithmetic expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluate with `var` resolving variable names; unknown names are errors.
    pub fn eval<T: ExprField>(&self, var: &dyn Fn(&str) -> Option<T>) -> RingResult<T> {
        Ok(match self {
            Expr::Int(n) => T::from_integer(n.clone()),
            Expr::Var(v) => var(v).ok_or_else(|| RingError::Parse(format!("unknown variable `{v}`")))?,
            Expr::Neg(a) => T::from_integer(BigInt::zero()).sub(&a.eval(var)?),
            Expr::Add(a, b) => a.eval(var)?.add(&b.eval(var)?),
            Expr::Sub(a, b) => a.eval(var)?.sub(&b.eval(var)?),
            Expr::Mul(a, b) => a.eval(var)?.mul(&b.eval(var)?),
            Expr::Div(a, b) => a.eval(var)?.div(&b.eval(var)?).ok_or(RingError::DivisionByZero)?,
            Expr::Pow(a, e) => {
                let base = a.eval(var)?;
                let mut acc = T::from_integer(BigInt::one());
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> RingResult<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let lit: String = chars[start..k].iter().collect();
            out.push(Tok::Num(lit.parse().map_err(|_| RingError::Parse(lit.clone()))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(RingError::Parse(format!("unexpected character `{c}` in `{s}`")));
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

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> RingResult<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> RingResult<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> RingResult<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| RingError::Parse("exponent too large".into()))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(RingError::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> RingResult<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(RingError::Parse("unbalanced parenthesis".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            other => Err(RingError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(s: &str) -> RingResult<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(RingError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(RingError::Parse(format!("trailing input in `{s}`")));
    }
    Ok(e)
}

/// Parse a rational function of `q`.
pub fn parse_ratfunc_q(s: &str) -> RingResult<RationalFunctionQ> {
    parse_expr(s)?.eval(&q_var)
}
