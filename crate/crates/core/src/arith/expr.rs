use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, FactoredInt, IntPoly};

/// Variable bindings for evaluation.
pub type Env = BTreeMap<String, i128>;

/// Parsed integer formula.
///
/// ```text
/// expr    := term (('+'|'-') term)*
/// term    := unary (('*'|'/') unary)*
/// unary   := '-' unary | power
/// power   := primary ('^' unary)?
/// primary := INT | IDENT | '(' expr ')'
///          | gcd(expr, expr) | sqrt(expr) | prod(IDENT = expr .. expr; expr)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i128),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Prod { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn exponent(k: i128) -> Result<u32, ArithError> {
    u32::try_from(k).map_err(|_| ArithError::Domain(k))
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self, ArithError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0, src };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    /// Exact integer value. A division that leaves a remainder is an error.
    pub fn eval_int(&self, env: &Env) -> Result<i128, ArithError> {
        use Expr::*;
        let ov = || ArithError::Overflow;
        Ok(match self {
            Int(c) => *c,
            Var(v) => *env.get(v).ok_or_else(|| ArithError::Unbound(v.clone()))?,
            Neg(a) => a.eval_int(env)?.checked_neg().ok_or_else(ov)?,
            Add(a, b) => a.eval_int(env)?.checked_add(b.eval_int(env)?).ok_or_else(ov)?,
            Sub(a, b) => a.eval_int(env)?.checked_sub(b.eval_int(env)?).ok_or_else(ov)?,
            Mul(a, b) => a.eval_int(env)?.checked_mul(b.eval_int(env)?).ok_or_else(ov)?,
            Div(a, b) => {
                let (x, y) = (a.eval_int(env)?, b.eval_int(env)?);
                if y == 0 || x % y != 0 {
                    return Err(ArithError::InexactDivision { dividend: x.to_string(), divisor: y.to_string() });
                }
                x / y
            }
            Pow(a, b) => {
                let base = a.eval_int(env)?;
                base.checked_pow(exponent(b.eval_int(env)?)?).ok_or_else(ov)?
            }
            Gcd(a, b) => gcd_i128(a.eval_int(env)?, b.eval_int(env)?),
            Sqrt(a) => {
                let x = a.eval_int(env)?;
                if x < 0 {
                    return Err(ArithError::NotSquare(x));
                }
                let r = isqrt(x);
                if r * r != x {
                    return Err(ArithError::NotSquare(x));
                }
                r
            }
            Prod { var, lo, hi, body } => {
                let (lo, hi) = (lo.eval_int(env)?, hi.eval_int(env)?);
                let mut inner = env.clone();
                let mut acc: i128 = 1;
                for i in lo..=hi {
                    inner.insert(var.clone(), i);
                    acc = acc.checked_mul(body.eval_int(&inner)?).ok_or_else(ov)?;
                }
                acc
            }
        })
    }

    /// Positive value kept in factored form, so products may exceed 128 bits.
    /// Sums and other non-multiplicative nodes must fit in 64 bits.
    pub fn eval_factored(&self, env: &Env) -> Result<FactoredInt, ArithError> {
        use Expr::*;
        match self {
            Mul(a, b) => Ok(a.eval_factored(env)?.mul(&b.eval_factored(env)?)),
            Div(a, b) => a.eval_factored(env)?.div_exact(&b.eval_factored(env)?),
            Pow(a, b) => Ok(a.eval_factored(env)?.pow(exponent(b.eval_int(env)?)?)),
            Prod { var, lo, hi, body } => {
                let (lo, hi) = (lo.eval_int(env)?, hi.eval_int(env)?);
                let mut inner = env.clone();
                let mut acc = FactoredInt::one();
                for i in lo..=hi {
                    inner.insert(var.clone(), i);
                    acc = acc.mul(&body.eval_factored(&inner)?);
                }
                Ok(acc)
            }
            _ => FactoredInt::from_i128(self.eval_int(env)?),
        }
    }

    /// True when `var` occurs free.
    pub fn mentions(&self, var: &str) -> bool {
        use Expr::*;
        match self {
            Int(_) => false,
            Var(v) => v == var,
            Neg(a) | Sqrt(a) => a.mentions(var),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) | Gcd(a, b) => a.mentions(var) || b.mentions(var),
            Prod { var: v, lo, hi, body } => lo.mentions(var) || hi.mentions(var) || (v != var && body.mentions(var)),
        }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        use Expr::*;
        match self {
            Int(_) => {}
            Var(v) => {
                if !bound.contains(v) {
                    out.push(v.clone());
                }
            }
            Neg(a) | Sqrt(a) => a.collect_vars(bound, out),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) | Gcd(a, b) => {
                a.collect_vars(bound, out);
                b.collect_vars(bound, out);
            }
            Prod { var, lo, hi, body } => {
                lo.collect_vars(bound, out);
                hi.collect_vars(bound, out);
                bound.push(var.clone());
                body.collect_vars(bound, out);
                bound.pop();
            }
        }
    }

    /// Writes the expression as `P(var) / D` with `D > 0`, every other
    /// variable taken from `env`. Division is allowed only by subexpressions
    /// free of `var`.
    pub fn to_poly(&self, var: &str, env: &Env) -> Result<(IntPoly, i128), ArithError> {
        use Expr::*;
        if !self.mentions(var) {
            return Ok((IntPoly::constant(self.eval_int(env)?), 1));
        }
        let (p, d) = match self {
            Int(_) => unreachable!("constants do not mention a variable"),
            Var(_) => (IntPoly::x(), 1),
            Neg(a) => {
                let (p, d) = a.to_poly(var, env)?;
                (p.neg()?, d)
            }
            Add(a, b) | Sub(a, b) => {
                let (p1, d1) = a.to_poly(var, env)?;
                let (p2, d2) = b.to_poly(var, env)?;
                let lhs = p1.scale(d2)?;
                let rhs = p2.scale(d1)?;
                let p = if matches!(self, Add(..)) { lhs.add(&rhs)? } else { lhs.sub(&rhs)? };
                (p, d1.checked_mul(d2).ok_or(ArithError::Overflow)?)
            }
            Mul(a, b) => {
                let (p1, d1) = a.to_poly(var, env)?;
                let (p2, d2) = b.to_poly(var, env)?;
                (p1.mul(&p2)?, d1.checked_mul(d2).ok_or(ArithError::Overflow)?)
            }
            Div(a, b) => {
                if b.mentions(var) {
                    return Err(ArithError::NotPolynomial(self.to_string()));
                }
                let c = b.eval_int(env)?;
                if c == 0 {
                    return Err(ArithError::Domain(0));
                }
                let (p, d) = a.to_poly(var, env)?;
                let p = if c < 0 { p.neg()? } else { p };
                (p, d.checked_mul(c.abs()).ok_or(ArithError::Overflow)?)
            }
            Pow(a, b) => {
                if b.mentions(var) {
                    return Err(ArithError::NotPolynomial(self.to_string()));
                }
                let k = exponent(b.eval_int(env)?)?;
                let (p, d) = a.to_poly(var, env)?;
                (p.pow(k)?, d.checked_pow(k).ok_or(ArithError::Overflow)?)
            }
            Gcd(..) | Sqrt(_) => return Err(ArithError::NotPolynomial(self.to_string())),
            Prod { var: v, lo, hi, body } => {
                let (lo, hi) = (lo.eval_int(env)?, hi.eval_int(env)?);
                let mut inner = env.clone();
                let mut acc = (IntPoly::constant(1), 1i128);
                for i in lo..=hi {
                    inner.insert(v.clone(), i);
                    let (p, d) = body.to_poly(var, &inner)?;
                    acc = (acc.0.mul(&p)?, acc.1.checked_mul(d).ok_or(ArithError::Overflow)?);
                }
                acc
            }
        };
        Ok(reduce(p, d))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(c) if *c < 0 => 3,
            _ => 5,
        }
    }
}

fn reduce(p: IntPoly, d: i128) -> (IntPoly, i128) {
    let content = p.coeffs().iter().fold(0, |g, &c| gcd_i128(g, c));
    let g = gcd_i128(content, d);
    if g > 1 {
        let q = p.div_exact_scalar(g).expect("g divides every coefficient");
        (q, d / g)
    } else {
        (p, d)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expr::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Int(c) => write!(f, "{c}"),
            Var(v) => write!(f, "{v}"),
            Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Add(a, b) | Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "{}", if matches!(self, Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 2)
            }
            Mul(a, b) | Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "{}", if matches!(self, Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, 3)
            }
            Pow(a, b) => {
                wrap(f, a, 5)?;
                write!(f, "^")?;
                wrap(f, b, 5)
            }
            Gcd(a, b) => write!(f, "gcd({a}, {b})"),
            Sqrt(a) => write!(f, "sqrt({a})"),
            Prod { var, lo, hi, body } => write!(f, "prod({var}={lo}..{hi}; {body})"),
        }
    }
}

impl FromStr for Expr {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i128),
    Ident(String),
    Sym(char),
    DotDot,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ArithError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| ArithError::Parse(src.to_string()))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push(Tok::DotDot);
            i += 2;
        } else if "+-*/^(),;=".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ArithError::Parse(format!("unexpected `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ArithError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ArithError> {
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

    fn term(&mut self) -> Result<Expr, ArithError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ArithError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Expr::Int(c) => Expr::Int(-c),
                e => Expr::Neg(Box::new(e)),
            });
        }
        let base = self.primary()?;
        if self.eat('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ArithError> {
        match self.peek().cloned() {
            Some(Tok::Int(c)) => {
                self.pos += 1;
                Ok(Expr::Int(c))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "gcd" => {
                        self.expect('(')?;
                        let a = self.expr()?;
                        self.expect(',')?;
                        let b = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::Gcd(Box::new(a), Box::new(b)))
                    }
                    "sqrt" => {
                        self.expect('(')?;
                        let a = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::Sqrt(Box::new(a)))
                    }
                    "prod" => {
                        self.expect('(')?;
                        let var = match self.peek().cloned() {
                            Some(Tok::Ident(v)) => v,
                            _ => return Err(self.error("expected loop variable")),
                        };
                        self.pos += 1;
                        self.expect('=')?;
                        let lo = self.expr()?;
                        if self.peek() != Some(&Tok::DotDot) {
                            return Err(self.error("expected `..`"));
                        }
                        self.pos += 1;
                        let hi = self.expr()?;
                        self.expect(';')?;
                        let body = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::Prod { var, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) })
                    }
                    _ => Ok(Expr::Var(name)),
                }
            }
            _ => Err(self.error("expected a value")),
        }
    }
}

/// A formula viewed as a product of numerator factors over a product of
/// denominator factors, split at the outermost `*` and `/` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpr {
    pub numerator: Vec<Expr>,
    pub denominator: Vec<Expr>,
}

impl RationalExpr {
    pub fn from_expr(e: &Expr) -> Self {
        let mut out = Self { numerator: Vec::new(), denominator: Vec::new() };
        out.flatten(e, false);
        out
    }

    fn flatten(&mut self, e: &Expr, inverted: bool) {
        match e {
            Expr::Mul(a, b) => {
                self.flatten(a, inverted);
                self.flatten(b, inverted);
            }
            Expr::Div(a, b) => {
                self.flatten(a, inverted);
                self.flatten(b, !inverted);
            }
            other if inverted => self.denominator.push(other.clone()),
            other => self.numerator.push(other.clone()),
        }
    }

    /// The numerator as `P(var) / D`.
    pub fn numerator_poly(&self, var: &str, env: &Env) -> Result<(IntPoly, i128), ArithError> {
        let mut acc = (IntPoly::constant(1), 1i128);
        for f in &self.numerator {
            let (p, d) = f.to_poly(var, env)?;
            acc = (acc.0.mul(&p)?, acc.1.checked_mul(d).ok_or(ArithError::Overflow)?);
        }
        Ok(reduce(acc.0, acc.1))
    }

    /// The whole formula as a quotient of two integer polynomials in `var`.
    pub fn fraction(&self, var: &str, env: &Env) -> Result<(IntPoly, IntPoly), ArithError> {
        let (num, d) = self.numerator_poly(var, env)?;
        let mut den = (IntPoly::constant(1), 1i128);
        for f in &self.denominator {
            let (p, e) = f.to_poly(var, env)?;
            den = (den.0.mul(&p)?, den.1.checked_mul(e).ok_or(ArithError::Overflow)?);
        }
        Ok((num.scale(den.1)?, den.0.scale(d)?))
    }

    /// True when both formulas define the same rational function of `var`.
    pub fn same_function(&self, other: &Self, var: &str, env: &Env) -> Result<bool, ArithError> {
        let (a, b) = self.fraction(var, env)?;
        let (c, d) = other.fraction(var, env)?;
        Ok(a.mul(&d)? == c.mul(&b)?)
    }

    /// An upper bound for the denominator valid for every value of the
    /// unbound variables: `gcd(c, x) ≤ |c|` and a constant bounds itself.
    pub fn denominator_bound(&self, env: &Env) -> Result<i128, ArithError> {
        let mut acc: i128 = 1;
        for f in &self.denominator {
            let b = match f {
                Expr::Gcd(a, b) => match (a.eval_int(env), b.eval_int(env)) {
                    (Ok(x), Ok(y)) => gcd_i128(x, y),
                    (Ok(x), Err(_)) | (Err(_), Ok(x)) => x.abs(),
                    (Err(e), Err(_)) => return Err(e),
                },
                other => other.eval_int(env)?.abs(),
            };
            acc = acc.checked_mul(b).ok_or(ArithError::Overflow)?;
        }
        Ok(acc)
    }
}
