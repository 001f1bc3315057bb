//! Elements `a + b*sqrt(5)` of the real quadratic field Q(sqrt 5).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{self, Rat};

/// The two real embeddings of Q(sqrt 5): identity, and the Galois conjugate `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Embedding {
    Identity,
    Tau,
}

impl Embedding {
    pub const ALL: [Embedding; 2] = [Embedding::Identity, Embedding::Tau];

    pub fn compose(self, other: Embedding) -> Embedding {
        if self == other {
            Embedding::Identity
        } else {
            Embedding::Tau
        }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Embedding::Identity => write!(f, "identity"),
            Embedding::Tau => write!(f, "tau"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K5Elem {
    pub a: Rat,
    pub b: Rat,
}

impl K5Elem {
    pub fn new(a: Rat, b: Rat) -> Self {
        K5Elem { a, b }
    }

    pub fn zero() -> Self {
        K5Elem::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        K5Elem::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        K5Elem::from_rat(rat::rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        K5Elem::from_rat(Rat::from_integer(n))
    }

    pub fn from_rat(a: Rat) -> Self {
        K5Elem::new(a, Rat::zero())
    }

    /// `sqrt(5)`.
    pub fn sqrt5() -> Self {
        K5Elem::new(Rat::zero(), Rat::one())
    }

    /// The golden ratio `(1 + sqrt 5)/2`.
    pub fn phi() -> Self {
        let half = rat::rat_frac(1, 2);
        K5Elem::new(half.clone(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a - b*sqrt(5)`.
    pub fn tau(&self) -> Self {
        K5Elem::new(self.a.clone(), -&self.b)
    }

    pub fn embed(&self, e: Embedding) -> Self {
        match e {
            Embedding::Identity => self.clone(),
            Embedding::Tau => self.tau(),
        }
    }

    /// Field norm `a^2 - 5 b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat::rat(5) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        rat::rat(2) * &self.a
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(K5Elem::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = K5Elem::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// Exact sign of the real number this element becomes under `e`.
    pub fn sign_at(&self, e: Embedding) -> i8 {
        let b = match e {
            Embedding::Identity => self.b.clone(),
            Embedding::Tau => -&self.b,
        };
        sign_of_surd(&self.a, &b)
    }

    /// Scales by a rational.
    pub fn scale(&self, r: &Rat) -> Self {
        K5Elem::new(&self.a * r, &self.b * r)
    }

    /// Coordinates `(c0, c1)` in the basis `1, phi`.
    pub fn phi_coords(&self) -> (Rat, Rat) {
        // sqrt5 = 2 phi - 1
        (&self.a - &self.b, rat::rat(2) * &self.b)
    }

    pub fn from_phi_coords(c0: Rat, c1: Rat) -> Self {
        let half = &c1 / rat::rat(2);
        K5Elem::new(c0 + &half, half)
    }

    /// Approximate value under `e`, for diagnostics and cross-checks only.
    pub fn to_f64(&self, e: Embedding) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        match e {
            Embedding::Identity => a + b * 5f64.sqrt(),
            Embedding::Tau => a - b * 5f64.sqrt(),
        }
    }
}

/// Sign of `a + b*sqrt(5)` without floating point.
fn sign_of_surd(a: &Rat, b: &Rat) -> i8 {
    let sa = rat::sign(a);
    let sb = rat::sign(b);
    if sa >= 0 && sb >= 0 {
        return if sa == 0 && sb == 0 { 0 } else { 1 };
    }
    if sa <= 0 && sb <= 0 {
        return -1;
    }
    // opposite signs: the term with larger square wins
    let a2 = a * a;
    let b2 = rat::rat(5) * b * b;
    if a2 > b2 {
        sa
    } else {
        sb
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<K5Elem> for K5Elem {
            type Output = K5Elem;
            fn $method(self, rhs: K5Elem) -> K5Elem {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a K5Elem> for K5Elem {
            type Output = K5Elem;
            fn $method(self, rhs: &'a K5Elem) -> K5Elem {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<K5Elem> for &'a K5Elem {
            type Output = K5Elem;
            fn $method(self, rhs: K5Elem) -> K5Elem {
                self.$method(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b K5Elem> for &K5Elem {
    type Output = K5Elem;
    fn add(self, rhs: &'b K5Elem) -> K5Elem {
        K5Elem::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'b> Sub<&'b K5Elem> for &K5Elem {
    type Output = K5Elem;
    fn sub(self, rhs: &'b K5Elem) -> K5Elem {
        K5Elem::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'b> Mul<&'b K5Elem> for &K5Elem {
    type Output = K5Elem;
    fn mul(self, rhs: &'b K5Elem) -> K5Elem {
        if self.b.is_zero() && rhs.b.is_zero() {
            return K5Elem::from_rat(&self.a * &rhs.a);
        }
        let a = &self.a * &rhs.a + rat::rat(5) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        K5Elem::new(a, b)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for K5Elem {
    type Output = K5Elem;
    fn neg(self) -> K5Elem {
        K5Elem::new(-self.a, -self.b)
    }
}

impl Neg for &K5Elem {
    type Output = K5Elem;
    fn neg(self) -> K5Elem {
        K5Elem::new(-&self.a, -&self.b)
    }
}

impl From<Rat> for K5Elem {
    fn from(r: Rat) -> Self {
        K5Elem::from_rat(r)
    }
}

impl From<i64> for K5Elem {
    fn from(n: i64) -> Self {
        K5Elem::from_int(n)
    }
}

/// Canonical `a+b*s5`, rationals in lowest terms; `b = 0` prints just `a`.
impl fmt::Display for K5Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |b: &Rat| -> String {
            if b.is_one() {
                "s5".to_string()
            } else if *b == -Rat::one() {
                "-s5".to_string()
            } else {
                format!("{}*s5", b)
            }
        };
        if self.a.is_zero() {
            return write!(f, "{}", coeff(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}{}", self.a, coeff(&self.b))
        } else {
            write!(f, "{}+{}", self.a, coeff(&self.b))
        }
    }
}

impl FromStr for K5Elem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse_all()
    }
}

impl Serialize for K5Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for K5Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent parser for `expr := term (('+'|'-') term)*`,
/// `term := unary (('*'|'/') unary)*`, `unary := '-' unary | atom`,
/// `atom := integer | s5 | sqrt5 | phi | '(' expr ')'`.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, reason: &str) -> Error {
        let token = if self.src.trim().is_empty() {
            self.src.to_string()
        } else {
            self.src.trim().to_string()
        };
        Error::parse(token, reason)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn parse_all(mut self) -> Result<K5Elem> {
        if self.src.trim().is_empty() {
            return Err(self.err("empty element"));
        }
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing characters"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<K5Elem> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<K5Elem> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc
                        .div_checked(&d)
                        .ok_or_else(|| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<K5Elem> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<K5Elem> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(K5Elem::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    "s5" | "sqrt5" => Ok(K5Elem::sqrt5()),
                    "phi" => Ok(K5Elem::phi()),
                    _ => Err(self.err("unknown symbol")),
                }
            }
            _ => Err(self.err("expected a number, `s5`, `phi` or `(`")),
        }
    }
}

impl K5Elem {
    pub fn div_checked(&self, other: &K5Elem) -> Option<K5Elem> {
        other.inv().map(|i| self * &i)
    }
}
