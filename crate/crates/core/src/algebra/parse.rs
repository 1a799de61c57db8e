//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! poly   := ws ('+'|'-')? term (ws ('+'|'-') ws term)* ws
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' nat)? | '(' poly ')' ('^' nat)?
//! coeff  := int ('/' posint)?
//! ident  := letter (letter|digit)*
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraError, Context, Rational, SparsePolynomial};

/// How the variable context of parsed text is chosen.
#[derive(Clone, Debug)]
pub enum ContextSpec {
    Explicit(Context),
    /// All identifiers in the text, sorted by name with numeric suffixes
    /// compared as numbers (`x2` before `x10`).
    Infer,
}

impl From<Context> for ContextSpec {
    fn from(c: Context) -> Self {
        ContextSpec::Explicit(c)
    }
}

impl From<&Context> for ContextSpec {
    fn from(c: &Context) -> Self {
        ContextSpec::Explicit(c.clone())
    }
}

#[derive(Debug)]
enum Expr {
    Const(Rational),
    Var(String, usize),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn poly(&mut self) -> Result<Expr, AlgebraError> {
        self.skip_ws();
        let mut terms = Vec::new();
        let mut negative = false;
        if self.eat(b'-') {
            negative = true;
        } else {
            self.eat(b'+');
        }
        terms.push((negative, self.term()?));
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push((false, self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push((true, self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr, AlgebraError> {
        self.skip_ws();
        let mut factors = Vec::new();
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            factors.push(Expr::Const(self.coeff()?));
        } else {
            factors.push(self.factor()?);
        }
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok(Expr::Product(factors))
    }

    fn coeff(&mut self) -> Result<Rational, AlgebraError> {
        let num: BigInt = self.digits().expect("caller checked for a digit").parse().unwrap();
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den: BigInt = self
                .digits()
                .ok_or_else(|| self.error("expected denominator after '/'"))?
                .parse()
                .unwrap();
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::from_bigints(num, den));
        }
        self.pos = save;
        Ok(Rational::from(num))
    }

    fn factor(&mut self) -> Result<Expr, AlgebraError> {
        self.skip_ws();
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                inner
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                Expr::Var(name, start)
            }
            Some(_) => return Err(self.error("expected a variable, number or '('")),
            None => return Err(self.error("unexpected end of input")),
        };
        if self.eat(b'^') {
            self.skip_ws();
            let k = self
                .digits()
                .ok_or_else(|| self.error("expected exponent after '^'"))?
                .parse::<u32>()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Const(_) => {}
        Expr::Var(v, _) => {
            if !out.contains(v) {
                out.push(v.clone())
            }
        }
        Expr::Sum(ts) => ts.iter().for_each(|(_, t)| collect_vars(t, out)),
        Expr::Product(fs) => fs.iter().for_each(|f| collect_vars(f, out)),
        Expr::Pow(b, _) => collect_vars(b, out),
    }
}

/// Splits `x12` into `("x", Some(12))` for natural ordering.
fn natural_key(name: &str) -> (String, Option<u128>, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = name.split_at(split);
    (head.to_string(), tail.parse().ok(), name.to_string())
}

fn build(e: &Expr, ctx: &Context) -> Result<SparsePolynomial, AlgebraError> {
    match e {
        Expr::Const(c) => Ok(SparsePolynomial::constant(ctx, c.clone())),
        Expr::Var(v, offset) => SparsePolynomial::var(ctx, v)
            .map_err(|_| AlgebraError::UnknownVariable { name: v.clone(), offset: Some(*offset) }),
        Expr::Sum(ts) => {
            let mut acc = SparsePolynomial::zero(ctx);
            for (neg, t) in ts {
                let t = build(t, ctx)?;
                acc = if *neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = SparsePolynomial::one(ctx);
            for f in fs {
                acc = acc.try_mul(&build(f, ctx)?)?;
            }
            Ok(acc)
        }
        Expr::Pow(b, k) => build(b, ctx)?.pow(*k),
    }
}

/// Parses `text` into a canonical polynomial.
pub fn parse_polynomial(text: &str, context: impl Into<ContextSpec>) -> Result<SparsePolynomial, AlgebraError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let expr = parser.poly()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    let ctx = match context.into() {
        ContextSpec::Explicit(c) => c,
        ContextSpec::Infer => {
            let mut vars = Vec::new();
            collect_vars(&expr, &mut vars);
            vars.sort_by_key(|v| natural_key(v));
            Context::new(vars)?
        }
    };
    build(&expr, &ctx)
}

impl SparsePolynomial {
    /// Parses over an explicit context.
    pub fn parse(text: &str, ctx: &Context) -> Result<Self, AlgebraError> {
        parse_polynomial(text, ctx)
    }
}
