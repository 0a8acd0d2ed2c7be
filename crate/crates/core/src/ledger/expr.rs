//! Tiny exact expression language for claim payloads.
//!
//! Claims store their conditions as strings like `3125*q^7 < 24^6*43` or
//! `part_one_mod(k(11,t*u), 5) = 1`. The grammar is deliberately small:
//! integer literals, variables, `+ - * / % ^`, parentheses, and a fixed set
//! of named functions. Every value is a [`BigInt`]; division must be exact
//! and anything else is an error, never a rounded result.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{
    cyclotomic_coeffs, cyclotomic_value, euler_phi, factorize, is_prime, k_value, SignedBase,
};
use crate::error::{Error, Result};

/// Binary operators in precedence order `^` > `* / %` > `+ -`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Pow,
}

/// Built-in functions. Each one delegates to the arithmetic layer, so the
/// language itself contains no number theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Gcd,
    K,
    Phi,
    Coeff,
    EulerPhi,
    IsPrime,
    IsPrimePower,
    OddPart,
    NumOddPrimeDivisors,
    PartOneMod,
    PartOneModEither,
    AllPrimesOneMod,
}

impl Func {
    fn lookup(name: &str) -> Option<(Func, usize)> {
        Some(match name {
            "gcd" => (Func::Gcd, 2),
            "k" => (Func::K, 2),
            "Phi" => (Func::Phi, 2),
            "coeff" => (Func::Coeff, 2),
            "eulerphi" => (Func::EulerPhi, 1),
            "is_prime" => (Func::IsPrime, 1),
            "is_prime_power" => (Func::IsPrimePower, 1),
            "odd_part" => (Func::OddPart, 1),
            "num_odd_prime_divisors" => (Func::NumOddPrimeDivisors, 1),
            "part_one_mod" => (Func::PartOneMod, 2),
            "part_one_mod_either" => (Func::PartOneModEither, 3),
            "all_primes_one_mod" => (Func::AllPrimesOneMod, 2),
            _ => return None,
        })
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Comparison operator of a [`Relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Cmp {
    pub fn is_inequality(self) -> bool {
        !matches!(self, Cmp::Eq)
    }
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        })
    }
}

/// A comparison between two expressions, e.g. `5^6*q^7 < 24^6*172`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub lhs: Expr,
    pub cmp: Cmp,
    pub rhs: Expr,
}

/// Variable bindings for evaluation.
pub type Bindings = BTreeMap<String, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
    Cmp(Cmp),
    LParen,
    RParen,
    Comma,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &input[start..i];
                let n = lit
                    .parse::<BigInt>()
                    .map_err(|_| Error::invalid(format!("bad integer literal {lit}")))?;
                out.push(Token::Int(n));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token::Ident(input[start..i].to_string()));
            }
            '+' | '-' | '*' | '/' | '%' | '^' => {
                out.push(Token::Op(c));
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
            '<' | '>' | '=' => {
                let twochar = i + 1 < bytes.len() && bytes[i + 1] == b'=';
                let cmp = match (c, twochar) {
                    ('<', true) => Cmp::Le,
                    ('<', false) => Cmp::Lt,
                    ('>', true) => Cmp::Ge,
                    ('>', false) => Cmp::Gt,
                    ('=', _) => Cmp::Eq,
                    _ => unreachable!(),
                };
                i += if twochar && c != '=' { 2 } else { 1 };
                out.push(Token::Cmp(cmp));
            }
            other => {
                return Err(Error::invalid(format!(
                    "unexpected character '{other}' in expression"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Token) -> Result<()> {
        match self.next() {
            Some(ref got) if got == t => Ok(()),
            other => Err(Error::invalid(format!("expected {t:?}, found {other:?}"))),
        }
    }

    // sum := product (('+' | '-') product)*
    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.product()?;
            acc = Expr::Bin(op, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // product := unary (('*' | '/' | '%') unary)*
    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '/' | '%'))) = self.peek() {
            let op = match c {
                '*' => BinOp::Mul,
                '/' => BinOp::Div,
                _ => BinOp::Rem,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Expr::Bin(op, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := atom ('^' unary)?   (right associative)
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(name)) => {
                if let Some(Token::LParen) = self.peek() {
                    let (func, arity) = Func::lookup(&name).ok_or_else(|| {
                        Error::invalid(format!("unknown function '{name}'"))
                    })?;
                    self.pos += 1;
                    let mut args = Vec::new();
                    loop {
                        args.push(self.sum()?);
                        match self.next() {
                            Some(Token::Comma) => continue,
                            Some(Token::RParen) => break,
                            other => {
                                return Err(Error::invalid(format!(
                                    "expected ',' or ')' in call to {name}, found {other:?}"
                                )))
                            }
                        }
                    }
                    if args.len() != arity {
                        return Err(Error::invalid(format!(
                            "{name} takes {arity} arguments, got {}",
                            args.len()
                        )));
                    }
                    Ok(Expr::Call(func, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Token::LParen) => {
                let inner = self.sum()?;
                self.expect(&Token::RParen)?;
                Ok(inner)
            }
            other => Err(Error::invalid(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a single expression (no comparison operator).
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut p = Parser { tokens: tokenize(input)?, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::invalid(format!("trailing tokens in expression '{input}'")));
    }
    Ok(e)
}

/// Parses `lhs CMP rhs`.
pub fn parse_relation(input: &str) -> Result<Relation> {
    let mut p = Parser { tokens: tokenize(input)?, pos: 0 };
    let lhs = p.sum()?;
    let cmp = match p.next() {
        Some(Token::Cmp(c)) => c,
        other => {
            return Err(Error::invalid(format!(
                "expected a comparison operator in '{input}', found {other:?}"
            )))
        }
    };
    let rhs = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::invalid(format!("trailing tokens in relation '{input}'")));
    }
    Ok(Relation { lhs, cmp, rhs })
}

impl Expr {
    /// Exact evaluation under `bind`. Unbound variables, inexact division,
    /// and out-of-range function arguments are errors.
    pub fn eval(&self, bind: &Bindings) -> Result<BigInt> {
        match self {
            Expr::Int(n) => Ok(n.clone()),
            Expr::Var(name) => bind
                .get(name)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("unbound variable '{name}'"))),
            Expr::Neg(inner) => Ok(-inner.eval(bind)?),
            Expr::Bin(op, a, b) => {
                let x = a.eval(bind)?;
                let y = b.eval(bind)?;
                match op {
                    BinOp::Add => Ok(x + y),
                    BinOp::Sub => Ok(x - y),
                    BinOp::Mul => Ok(x * y),
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(Error::invalid("division by zero"));
                        }
                        let (q, r) = x.div_rem(&y);
                        if !r.is_zero() {
                            return Err(Error::invalid(format!(
                                "inexact division {x} / {y}"
                            )));
                        }
                        Ok(q)
                    }
                    BinOp::Rem => {
                        if y.is_zero() {
                            return Err(Error::invalid("remainder by zero"));
                        }
                        Ok(x.mod_floor(&y))
                    }
                    BinOp::Pow => {
                        let e = y.to_u32().ok_or_else(|| {
                            Error::invalid(format!("exponent {y} out of range"))
                        })?;
                        Ok(x.pow(e))
                    }
                }
            }
            Expr::Call(func, args) => {
                let vals: Vec<BigInt> =
                    args.iter().map(|a| a.eval(bind)).collect::<Result<_>>()?;
                eval_call(*func, &vals)
            }
        }
    }

    /// Collects variable names into `out`.
    pub fn variables(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(inner) => inner.variables(out),
            Expr::Bin(_, a, b) => {
                a.variables(out);
                b.variables(out);
            }
            Expr::Call(_, args) => {
                for a in args {
                    a.variables(out);
                }
            }
        }
    }
}

impl Relation {
    pub fn eval(&self, bind: &Bindings) -> Result<bool> {
        let l = self.lhs.eval(bind)?;
        let r = self.rhs.eval(bind)?;
        Ok(match self.cmp {
            Cmp::Lt => l < r,
            Cmp::Le => l <= r,
            Cmp::Eq => l == r,
            Cmp::Ge => l >= r,
            Cmp::Gt => l > r,
        })
    }

    pub fn variables(&self, out: &mut std::collections::BTreeSet<String>) {
        self.lhs.variables(out);
        self.rhs.variables(out);
    }
}

fn to_u32(v: &BigInt, what: &str) -> Result<u32> {
    v.to_u32()
        .ok_or_else(|| Error::invalid(format!("{what} {v} out of range")))
}

fn to_unsigned(v: &BigInt, what: &str) -> Result<BigUint> {
    match v.sign() {
        Sign::Minus => Err(Error::invalid(format!("{what} {v} must be nonnegative"))),
        _ => Ok(v.magnitude().clone()),
    }
}

fn signed_base(v: &BigInt) -> Result<SignedBase> {
    SignedBase::new(v.clone())
}

fn eval_call(func: Func, args: &[BigInt]) -> Result<BigInt> {
    match func {
        Func::Gcd => Ok(args[0].gcd(&args[1])),
        Func::K => {
            let i = to_u32(&args[0], "index")?;
            let a = signed_base(&args[1])?;
            Ok(BigInt::from(k_value(i, &a)?))
        }
        Func::Phi => {
            let n = to_u32(&args[0], "index")?;
            cyclotomic_value(n, &args[1])
        }
        Func::Coeff => {
            let n = to_u32(&args[0], "index")?;
            let j = to_u32(&args[1], "power")? as usize;
            let coeffs = cyclotomic_coeffs(n)?;
            coeffs.get(j).cloned().ok_or_else(|| {
                Error::invalid(format!("Phi_{n} has degree {}, no x^{j} term", coeffs.len() - 1))
            })
        }
        Func::EulerPhi => {
            let n = args[0]
                .to_u64()
                .ok_or_else(|| Error::invalid(format!("eulerphi argument {} out of range", args[0])))?;
            Ok(BigInt::from(euler_phi(n)?))
        }
        Func::IsPrime => {
            let n = to_unsigned(&args[0], "primality argument")?;
            Ok(BigInt::from(u8::from(is_prime(&n))))
        }
        Func::IsPrimePower => {
            let n = to_unsigned(&args[0], "argument")?;
            if n <= BigUint::one() {
                return Ok(BigInt::zero());
            }
            let f = factorize(&n)?;
            Ok(BigInt::from(u8::from(f.pairs().len() == 1)))
        }
        Func::OddPart => {
            let n = to_unsigned(&args[0], "argument")?;
            if n.is_zero() {
                return Err(Error::invalid("odd_part(0) is undefined"));
            }
            let two = BigUint::from(2u8);
            let mut m = n;
            while (&m % &two).is_zero() {
                m /= &two;
            }
            Ok(BigInt::from(m))
        }
        Func::NumOddPrimeDivisors => {
            let n = to_unsigned(&args[0], "argument")?;
            if n.is_zero() {
                return Err(Error::invalid("num_odd_prime_divisors(0) is undefined"));
            }
            let f = factorize(&n)?;
            let two = BigUint::from(2u8);
            let count = f.primes().filter(|p| **p != two).count();
            Ok(BigInt::from(count))
        }
        Func::PartOneMod => part_one_mod(&args[0], &[&args[1]]),
        Func::PartOneModEither => part_one_mod(&args[0], &[&args[1], &args[2]]),
        Func::AllPrimesOneMod => {
            let n = to_unsigned(&args[0], "argument")?;
            let part = part_one_mod(&args[0], &[&args[1]])?;
            Ok(BigInt::from(u8::from(part.magnitude() == &n)))
        }
    }
}

/// Product of the prime power components `p^e` of `n` with `p = 1` modulo
/// at least one of the given moduli. The identity used throughout Section 4:
/// if every prime of a divisor is 1 mod m, the divisor is at most this part.
fn part_one_mod(n: &BigInt, moduli: &[&BigInt]) -> Result<BigInt> {
    let n = to_unsigned(n, "argument")?;
    if n.is_zero() {
        return Err(Error::invalid("part_one_mod(0) is undefined"));
    }
    let mut mods = Vec::new();
    for m in moduli {
        let m = to_unsigned(m, "modulus")?;
        if m.is_zero() {
            return Err(Error::invalid("zero modulus in part_one_mod"));
        }
        mods.push(m);
    }
    let f = factorize(&n)?;
    let one = BigUint::one();
    let mut part = BigUint::one();
    for (p, e) in f.pairs() {
        if mods.iter().any(|m| p % m == one) {
            part *= p.pow(*e);
        }
    }
    Ok(BigInt::from(part))
}
