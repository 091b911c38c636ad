//! Expression language shared by the command line and the bindings.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" [ "-" ] integer ] ;
//! atom    = integer
//!         | symbol
//!         | "(" expr ")"
//!         | "[" expr "," expr "]"          (* commutator *)
//!         | "{" expr "," expr "}" ;        (* Poisson bracket *)
//! symbol  = name [ "[" integer { "," integer } "]" ] { "'" } ;
//! name    = letter { letter | digit | "_" } ;
//! ```
//!
//! Whitespace is ignored between tokens. `d` denotes the derivation in
//! operator contexts; `u''` is the second derivative of the field `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{NcAlgebra, NcPoly};
use crate::psido::diff::{self, Alphabet, DiffPoly};
use crate::psido::PsiDO;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Sym {
        name: String,
        indices: Vec<usize>,
        primes: u32,
    },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    Commutator(Box<Expr>, Box<Expr>),
    Poisson(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Name(String),
    Op(char),
    Prime,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let advance = |ch: char, line: &mut usize, column: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut column);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                advance(d, &mut line, &mut column);
            }
            Tok::Int(s.parse().map_err(|_| Error::Syntax {
                line: l,
                column: col,
                message: format!("integer `{s}` is too large"),
            })?)
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                advance(d, &mut line, &mut column);
            }
            Tok::Name(s)
        } else {
            chars.next();
            advance(c, &mut line, &mut column);
            match c {
                '\'' => Tok::Prime,
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' | '{' | '}' | ',' => Tok::Op(c),
                _ => {
                    return Err(Error::Syntax {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token { tok, line: l, column: col });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column));
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        loop {
            if self.eat('+') {
                left = Expr::Add(Box::new(left), Box::new(self.term()?));
            } else if self.eat('-') {
                left = Expr::Sub(Box::new(left), Box::new(self.term()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.unary()?;
        loop {
            if self.eat('*') {
                left = Expr::Mul(Box::new(left), Box::new(self.unary()?));
            } else if self.eat('/') {
                left = Expr::Div(Box::new(left), Box::new(self.unary()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let n = self.integer()? as i64;
            return Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }));
        }
        Ok(base)
    }

    fn pair(&mut self, close: char) -> Result<(Box<Expr>, Box<Expr>)> {
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(close)?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Num(Scalar::from_integer(n.into())))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let mut indices = Vec::new();
                if self.eat('[') {
                    loop {
                        indices.push(self.integer()? as usize);
                        if !self.eat(',') {
                            break;
                        }
                    }
                    self.expect(']')?;
                }
                let mut primes = 0;
                while self.peek() == Some(&Tok::Prime) {
                    self.pos += 1;
                    primes += 1;
                }
                Ok(Expr::Sym { name, indices, primes })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op('[')) => {
                self.pos += 1;
                let (a, b) = self.pair(']')?;
                Ok(Expr::Commutator(a, b))
            }
            Some(Tok::Op('{')) => {
                self.pos += 1;
                let (a, b) = self.pair('}')?;
                Ok(Expr::Poisson(a, b))
            }
            Some(_) => Err(self.error("unexpected token")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) | Expr::Div(..) => PRODUCT,
            Expr::Neg(..) => UNARY,
            Expr::Pow(..) => 4,
            Expr::Num(n) if !n.is_integer() || n.is_negative() => PRODUCT,
            _ => ATOM,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let wrap = self.precedence() < min;
        if wrap {
            out.push('(');
        }
        match self {
            Expr::Num(n) => out.push_str(&scalar::to_string(n)),
            Expr::Sym { name, indices, primes } => {
                out.push_str(name);
                if !indices.is_empty() {
                    let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
                    out.push_str(&format!("[{}]", parts.join(",")));
                }
                for _ in 0..*primes {
                    out.push('\'');
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, SUM);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, PRODUCT);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(out, PRODUCT);
                out.push(if matches!(self, Expr::Mul(..)) { '*' } else { '/' });
                b.write(out, UNARY);
            }
            Expr::Neg(a) => {
                out.push('-');
                a.write(out, UNARY);
            }
            Expr::Pow(a, k) => {
                a.write(out, ATOM);
                out.push_str(&format!("^{k}"));
            }
            Expr::Commutator(a, b) | Expr::Poisson(a, b) => {
                let (open, close) = if matches!(self, Expr::Commutator(..)) { ('[', ']') } else { ('{', '}') };
                out.push(open);
                a.write(out, SUM);
                out.push_str(", ");
                b.write(out, SUM);
                out.push(close);
            }
        }
        if wrap {
            out.push(')');
        }
    }

    /// Names of symbols without indices, excluding `d`, sorted.
    pub fn field_names(&self) -> Vec<String> {
        fn go(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Num(_) => {}
                Expr::Sym { name, indices, .. } => {
                    if indices.is_empty() && name != "d" {
                        out.push(name.clone());
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => go(a, out),
                Expr::Add(a, b)
                | Expr::Sub(a, b)
                | Expr::Mul(a, b)
                | Expr::Div(a, b)
                | Expr::Commutator(a, b)
                | Expr::Poisson(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, SUM);
        f.write_str(&s)
    }
}

fn eval_error(msg: impl Into<String>) -> Error {
    Error::Evaluation(msg.into())
}

fn exponent(k: i64) -> Result<u32> {
    u32::try_from(k).map_err(|_| eval_error("negative powers are only defined for d"))
}

/// Evaluates an expression to an exact rational.
pub fn eval_scalar(e: &Expr) -> Result<Scalar> {
    Ok(match e {
        Expr::Num(n) => n.clone(),
        Expr::Sym { name, .. } => return Err(eval_error(format!("`{name}` is not a number"))),
        Expr::Add(a, b) => eval_scalar(a)? + eval_scalar(b)?,
        Expr::Sub(a, b) => eval_scalar(a)? - eval_scalar(b)?,
        Expr::Mul(a, b) => eval_scalar(a)? * eval_scalar(b)?,
        Expr::Div(a, b) => divide(eval_scalar(a)?, eval_scalar(b)?)?,
        Expr::Neg(a) => -eval_scalar(a)?,
        Expr::Pow(a, k) => {
            let base = eval_scalar(a)?;
            let p = scalar::pow(&base, k.unsigned_abs() as u32);
            if *k < 0 {
                divide(Scalar::one(), p)?
            } else {
                p
            }
        }
        Expr::Commutator(..) => Scalar::zero(),
        Expr::Poisson(..) => return Err(eval_error("Poisson bracket of numbers")),
    })
}

fn divide(a: Scalar, b: Scalar) -> Result<Scalar> {
    if b.is_zero() {
        return Err(eval_error("division by zero"));
    }
    Ok(a / b)
}

/// Symbols for evaluation in U(g): algebra labels such as `E[1,2]`, plus
/// named elements (for instance `e`, `f`, `h` of a triple).
pub struct NcContext<'a> {
    pub algebra: &'a NcAlgebra,
    pub named: BTreeMap<String, NcPoly>,
}

impl<'a> NcContext<'a> {
    pub fn new(algebra: &'a NcAlgebra) -> Self {
        NcContext {
            algebra,
            named: BTreeMap::new(),
        }
    }

    fn symbol(&self, name: &str, indices: &[usize], primes: u32) -> Result<NcPoly> {
        if primes > 0 {
            return Err(eval_error("derivatives are not defined in U(g)"));
        }
        let label = if indices.is_empty() {
            if let Some(p) = self.named.get(name) {
                return Ok(p.clone());
            }
            name.to_string()
        } else {
            let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
            format!("{name}[{}]", parts.join(","))
        };
        let spec = self.algebra.spec();
        match spec.index_of(&label) {
            Some(i) => self.algebra.generator(i),
            None if !indices.is_empty() && spec.labels().iter().any(|l| l.starts_with(&format!("{name}["))) => {
                Err(Error::IndexOutOfRange(format!("{label} in {}", spec.name())))
            }
            None => Err(Error::UnknownSymbol(label)),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<NcPoly> {
        let alg = self.algebra;
        Ok(match e {
            Expr::Num(n) => alg.constant(n.clone()),
            Expr::Sym { name, indices, primes } => self.symbol(name, indices, *primes)?,
            Expr::Add(a, b) => self.eval(a)?.try_add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.try_sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => alg.multiply(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Div(a, b) => {
                let d = eval_scalar(b)?;
                self.eval(a)?.scale(&divide(Scalar::one(), d)?)
            }
            Expr::Neg(a) => self.eval(a)?.scale(&-Scalar::one()),
            Expr::Pow(a, k) => alg.pow(&self.eval(a)?, exponent(*k)?)?,
            Expr::Commutator(a, b) => alg.commutator(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Poisson(..) => return Err(eval_error("Poisson brackets need a classical context")),
        })
    }
}

/// Evaluates an operator expression in `d` and the fields of the alphabet.
pub fn eval_psido(e: &Expr, alphabet: &Alphabet, trunc: i32) -> Result<PsiDO> {
    Ok(match e {
        Expr::Num(n) => PsiDO::function(diff::constant(n.clone())),
        Expr::Sym { name, indices, primes } => {
            if !indices.is_empty() {
                return Err(eval_error(format!("`{name}` takes no indices here")));
            }
            if name == "d" {
                if *primes > 0 {
                    return Err(eval_error("d cannot be differentiated"));
                }
                PsiDO::partial(1)
            } else {
                let f = alphabet
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                PsiDO::function(diff::jet(f, *primes as u16))
            }
        }
        Expr::Add(a, b) => eval_psido(a, alphabet, trunc)?.add(&eval_psido(b, alphabet, trunc)?),
        Expr::Sub(a, b) => eval_psido(a, alphabet, trunc)?.sub(&eval_psido(b, alphabet, trunc)?),
        Expr::Mul(a, b) => eval_psido(a, alphabet, trunc)?.compose(&eval_psido(b, alphabet, trunc)?, trunc)?,
        Expr::Div(a, b) => {
            let d = eval_scalar(b)?;
            eval_psido(a, alphabet, trunc)?.scale(&divide(Scalar::one(), d)?)
        }
        Expr::Neg(a) => eval_psido(a, alphabet, trunc)?.scale(&-Scalar::one()),
        Expr::Pow(a, k) => {
            if matches!(a.as_ref(), Expr::Sym { name, indices, primes: 0 } if name == "d" && indices.is_empty()) {
                let k = i32::try_from(*k).map_err(|_| eval_error("exponent is too large"))?;
                PsiDO::partial(k)
            } else {
                eval_psido(a, alphabet, trunc)?.power(exponent(*k)?, trunc)?
            }
        }
        Expr::Commutator(a, b) => eval_psido(a, alphabet, trunc)?.commutator(&eval_psido(b, alphabet, trunc)?, trunc)?,
        Expr::Poisson(..) => return Err(eval_error("Poisson brackets are not operators")),
    })
}

/// Evaluates a differential polynomial in the fields of the alphabet.
pub fn eval_diff(e: &Expr, alphabet: &Alphabet) -> Result<DiffPoly> {
    let op = eval_psido(e, alphabet, 0)?;
    if op.top_order().is_some_and(|k| k != 0) || op.coefficients().keys().any(|&k| k != 0) {
        return Err(eval_error("expression involves d"));
    }
    Ok(op.coeff(0))
}

/// Integer value of a numeric expression.
pub fn eval_integer(e: &Expr) -> Result<i64> {
    let v = eval_scalar(e)?;
    if !v.is_integer() {
        return Err(eval_error("expected an integer"));
    }
    v.to_integer().to_i64().ok_or_else(|| eval_error("integer is too large"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let e = parse("e + 1/4*h^2 - 1/2*h").unwrap();
        assert_eq!(e.to_string(), "e + 1/4*h^2 - 1/2*h");
        let c = parse("[E[1,2], E[2,1]]").unwrap();
        assert!(matches!(c, Expr::Commutator(..)));
        assert_eq!(parse("d^-1 * u''").unwrap().to_string(), "d^-1*u''");
        assert_eq!(parse("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse("-(a + b)^2").unwrap().to_string(), "-(a + b)^2");
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("u +\n  * v") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("u $ v"), Err(Error::Syntax { line: 1, column: 3, .. })));
        assert!(matches!(parse("(u"), Err(Error::Syntax { .. })));
    }
}
