//! Expressions with `+ - * / ^`, parentheses and juxtaposition, and their
//! evaluation into scalars, coefficient polynomials, free words or algebra elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use spbw_core::{Algebra, CoeffPoly, Scalar, SkewPoly, Symbols};

use super::lexer::{Tok, Token};
use super::{Code, Diagnostic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, col: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(Code::Syntax, msg, self.line, self.col())
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var { name, col })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected {}", describe(&t)))),
            None => Err(self.err("unexpected end of line")),
        }
    }
}

pub fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Arrow => "`->`".into(),
    }
}

/// Parse a whole token slice as one expression.
pub fn parse_tokens(toks: &[Token], line: usize, end_col: usize) -> Result<Expr, Diagnostic> {
    let mut p = Parser { toks, pos: 0, line, end_col };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.err(format!("unexpected {} after expression", describe(t))));
    }
    Ok(e)
}

/// Parse standalone expression text, e.g. for `normalize`.
pub fn parse_expr(text: &str) -> Result<Expr, Diagnostic> {
    let toks = super::lexer::lex_line(text, 1)?;
    parse_tokens(&toks, 1, text.chars().count() + 1)
}

/// Target of evaluation.
pub(crate) trait Domain {
    type V: Clone;
    fn params(&self) -> &[String];
    fn line(&self) -> usize;
    fn constant(&self, s: Scalar) -> Self::V;
    fn var(&self, name: &str, col: usize) -> Result<Self::V, Diagnostic>;
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    fn neg(&self, a: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V, Diagnostic>;
    fn scale(&self, a: Self::V, s: &Scalar) -> Self::V;
}

pub(crate) fn eval<D: Domain>(e: &Expr, d: &D) -> Result<D::V, Diagnostic> {
    Ok(match e {
        Expr::Int(n) => d.constant(Scalar::from_rational(BigRational::from_integer(n.clone()))),
        Expr::Var { name, col } => d.var(name, *col)?,
        Expr::Neg(a) => d.neg(eval(a, d)?),
        Expr::Add(a, b) => d.add(eval(a, d)?, eval(b, d)?),
        Expr::Sub(a, b) => {
            let b = d.neg(eval(b, d)?);
            d.add(eval(a, d)?, b)
        }
        Expr::Mul(a, b) => d.mul(eval(a, d)?, eval(b, d)?)?,
        Expr::Div(a, b, col) => {
            let sd = ScalarDomain { params: d.params(), line: d.line() };
            let s = eval(b, &sd)?;
            let inv = s.inv().map_err(|_| Diagnostic::new(Code::Invalid, "division by zero", d.line(), *col))?;
            d.scale(eval(a, d)?, &inv)
        }
        Expr::Pow(a, k) => {
            let base = eval(a, d)?;
            let mut acc = d.constant(Scalar::one());
            for _ in 0..*k {
                acc = d.mul(acc, base.clone())?;
            }
            acc
        }
    })
}

fn lookup(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name)
}

fn undeclared(name: &str, line: usize, col: usize) -> Diagnostic {
    Diagnostic::new(Code::Undeclared, format!("undeclared parameter `{name}`"), line, col)
}

pub(crate) struct ScalarDomain<'a> {
    pub params: &'a [String],
    pub line: usize,
}

impl Domain for ScalarDomain<'_> {
    type V = Scalar;
    fn params(&self) -> &[String] {
        self.params
    }
    fn line(&self) -> usize {
        self.line
    }
    fn constant(&self, s: Scalar) -> Scalar {
        s
    }
    fn var(&self, name: &str, col: usize) -> Result<Scalar, Diagnostic> {
        lookup(self.params, name).map(Scalar::param).ok_or_else(|| undeclared(name, self.line, col))
    }
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        &a + &b
    }
    fn neg(&self, a: Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, Diagnostic> {
        Ok(&a * &b)
    }
    fn scale(&self, a: Scalar, s: &Scalar) -> Scalar {
        &a * s
    }
}

fn wrong_kind(name: &str, what: &str, line: usize, col: usize) -> Diagnostic {
    Diagnostic::new(Code::Invalid, format!("`{name}` is a {what} and cannot appear here"), line, col)
}

pub(crate) struct CoeffDomain<'a> {
    pub sym: &'a Symbols,
    pub line: usize,
}

impl Domain for CoeffDomain<'_> {
    type V = CoeffPoly;
    fn params(&self) -> &[String] {
        &self.sym.params
    }
    fn line(&self) -> usize {
        self.line
    }
    fn constant(&self, s: Scalar) -> CoeffPoly {
        CoeffPoly::constant(s)
    }
    fn var(&self, name: &str, col: usize) -> Result<CoeffPoly, Diagnostic> {
        if let Some(i) = lookup(&self.sym.params, name) {
            return Ok(CoeffPoly::constant(Scalar::param(i)));
        }
        if let Some(j) = lookup(&self.sym.coeffs, name) {
            return Ok(CoeffPoly::var(j));
        }
        if lookup(&self.sym.gens, name).is_some() {
            return Err(wrong_kind(name, "generator", self.line, col));
        }
        Err(undeclared(name, self.line, col))
    }
    fn add(&self, a: CoeffPoly, b: CoeffPoly) -> CoeffPoly {
        &a + &b
    }
    fn neg(&self, a: CoeffPoly) -> CoeffPoly {
        -&a
    }
    fn mul(&self, a: CoeffPoly, b: CoeffPoly) -> Result<CoeffPoly, Diagnostic> {
        Ok(&a * &b)
    }
    fn scale(&self, a: CoeffPoly, s: &Scalar) -> CoeffPoly {
        a.scale(s)
    }
}

/// Sums of `coefficient * word` with coefficients written to the left.
pub(crate) type Words = Vec<(CoeffPoly, Vec<usize>)>;

pub(crate) struct FreeDomain<'a> {
    pub sym: &'a Symbols,
    pub line: usize,
}

impl Domain for FreeDomain<'_> {
    type V = Words;
    fn params(&self) -> &[String] {
        &self.sym.params
    }
    fn line(&self) -> usize {
        self.line
    }
    fn constant(&self, s: Scalar) -> Words {
        vec![(CoeffPoly::constant(s), Vec::new())]
    }
    fn var(&self, name: &str, col: usize) -> Result<Words, Diagnostic> {
        if let Some(i) = lookup(&self.sym.gens, name) {
            return Ok(vec![(CoeffPoly::one(), vec![i])]);
        }
        let c = CoeffDomain { sym: self.sym, line: self.line }.var(name, col)?;
        Ok(vec![(c, Vec::new())])
    }
    fn add(&self, mut a: Words, b: Words) -> Words {
        a.extend(b);
        a
    }
    fn neg(&self, a: Words) -> Words {
        a.into_iter().map(|(c, w)| (-&c, w)).collect()
    }
    fn mul(&self, a: Words, b: Words) -> Result<Words, Diagnostic> {
        let mut out = Vec::new();
        for (c1, w1) in &a {
            for (c2, w2) in &b {
                if !w1.is_empty() && c2.constant_value().is_none() && !c2.is_zero() {
                    return Err(Diagnostic::new(
                        Code::RelationShape,
                        "coefficients must stand to the left of generators",
                        self.line,
                        1,
                    ));
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.push((c1 * c2, w));
            }
        }
        Ok(out)
    }
    fn scale(&self, a: Words, s: &Scalar) -> Words {
        a.into_iter().map(|(c, w)| (c.scale(s), w)).collect()
    }
}

pub(crate) struct SkewDomain<'a> {
    pub alg: &'a Algebra,
    pub line: usize,
}

impl Domain for SkewDomain<'_> {
    type V = SkewPoly;
    fn params(&self) -> &[String] {
        &self.alg.symbols().params
    }
    fn line(&self) -> usize {
        self.line
    }
    fn constant(&self, s: Scalar) -> SkewPoly {
        SkewPoly::scalar(s)
    }
    fn var(&self, name: &str, col: usize) -> Result<SkewPoly, Diagnostic> {
        let sym = self.alg.symbols();
        if let Some(i) = lookup(&sym.gens, name) {
            return Ok(SkewPoly::gen(i));
        }
        let c = CoeffDomain { sym, line: self.line }.var(name, col)?;
        Ok(SkewPoly::constant(c))
    }
    fn add(&self, a: SkewPoly, b: SkewPoly) -> SkewPoly {
        &a + &b
    }
    fn neg(&self, a: SkewPoly) -> SkewPoly {
        -&a
    }
    fn mul(&self, a: SkewPoly, b: SkewPoly) -> Result<SkewPoly, Diagnostic> {
        Ok(self.alg.mul(&a, &b))
    }
    fn scale(&self, a: SkewPoly, s: &Scalar) -> SkewPoly {
        a.scale(s)
    }
}

/// Evaluate standalone text in an algebra.
pub fn eval_in(alg: &Algebra, text: &str) -> Result<SkewPoly, Diagnostic> {
    eval(&parse_expr(text)?, &SkewDomain { alg, line: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Symbols {
        Symbols { params: vec!["q".into()], coeffs: vec!["t".into()], gens: vec!["x".into(), "y".into()] }
    }

    #[test]
    fn precedence_and_juxtaposition() {
        let s = sym();
        let d = CoeffDomain { sym: &s, line: 1 };
        let e = eval(&parse_expr("-t^2 + 2 t - 1/q*t").unwrap(), &d).unwrap();
        let two_minus = &Scalar::from_int(2) - &Scalar::param(0).inv().unwrap();
        let expect = &CoeffPoly::var(0).pow(2).scale(&Scalar::from_int(-1)) + &CoeffPoly::var(0).scale(&two_minus);
        assert_eq!(e, expect);
        let w = eval(&parse_expr("q*x y + (-1)").unwrap(), &FreeDomain { sym: &s, line: 1 }).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].1, vec![0, 1]);
    }

    #[test]
    fn diagnostics() {
        let s = sym();
        let d = CoeffDomain { sym: &s, line: 7 };
        let e = eval(&parse_expr("t + r").unwrap(), &d).unwrap_err();
        assert_eq!((e.code, e.column), (Code::Undeclared, 5));
        assert!(e.message.contains("undeclared parameter"));
        assert_eq!(eval(&parse_expr("x").unwrap(), &d).unwrap_err().code, Code::Invalid);
        assert_eq!(eval(&parse_expr("t/0").unwrap(), &d).unwrap_err().code, Code::Invalid);
        assert_eq!(parse_expr("(t + 1").unwrap_err().code, Code::Syntax);
        let f = eval(&parse_expr("x t").unwrap(), &FreeDomain { sym: &s, line: 1 }).unwrap_err();
        assert_eq!(f.code, Code::RelationShape);
    }
}
