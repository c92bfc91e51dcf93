//! Exact scalar rings.
//!
//! Every sequence, matrix and polynomial evaluation in the crate is carried
//! out over one of the variants of [`Scalar`]. Operands of a binary operation
//! must live in the same ring; the `checked_*` methods report a
//! [`Error::DomainMismatch`] otherwise, while the operator impls panic and are
//! meant for code that has already validated its inputs with [`common_ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which ring a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integer,
    Rational,
    /// Integer polynomials in the symbol `p`.
    PolyP,
    /// Rational polynomials in `p`; the target of negative powers over `PolyP`.
    RatPolyP,
    Mod(u64),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Integer => write!(f, "integer"),
            RingKind::Rational => write!(f, "rational"),
            RingKind::PolyP => write!(f, "Z[p]"),
            RingKind::RatPolyP => write!(f, "Q[p]"),
            RingKind::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl RingKind {
    /// Smallest ring both arguments embed into, if any.
    pub fn join(self, other: RingKind) -> Option<RingKind> {
        use RingKind::*;
        match (self, other) {
            (a, b) if a == b => Some(a),
            (Integer, r) | (r, Integer) => Some(r),
            (Mod(_), _) | (_, Mod(_)) => None,
            _ => Some(RatPolyP),
        }
    }

    /// The ring in which every nonzero constant is a unit.
    pub fn field(self) -> RingKind {
        match self {
            RingKind::Integer => RingKind::Rational,
            RingKind::PolyP => RingKind::RatPolyP,
            r => r,
        }
    }
}

/// Returns the ring shared by all `xs`, or a mismatch error naming the
/// first offending pair. An empty slice defaults to the integers.
pub fn common_ring(xs: &[Scalar]) -> Result<RingKind> {
    let mut it = xs.iter();
    let Some(first) = it.next() else {
        return Ok(RingKind::Integer);
    };
    let ring = first.ring();
    for x in it {
        if x.ring() != ring {
            return Err(Error::DomainMismatch(ring, x.ring()));
        }
    }
    Ok(ring)
}

/// Promotes every element to the join of their rings.
pub fn unify(xs: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut ring = match xs.first() {
        Some(x) => x.ring(),
        None => return Ok(Vec::new()),
    };
    for x in &xs[1..] {
        ring = ring
            .join(x.ring())
            .ok_or(Error::DomainMismatch(ring, x.ring()))?;
    }
    xs.iter().map(|x| x.promote(ring)).collect()
}

/// Exact division of coefficients, `None` when the quotient leaves the ring.
pub trait ExactDiv: Sized {
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

/// Dense univariate polynomial in `p`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type PolyP = Poly<BigInt>;
pub type RatPolyP = Poly<BigRational>;

impl<C> Poly<C>
where
    C: Clone + num_traits::Num + Neg<Output = C>,
{
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `p`.
    pub fn p() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant term if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<C> {
        match self.coeffs.len() {
            0 => Some(C::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(C::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(C::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<D, F>(&self, f: F) -> Poly<D>
    where
        D: Clone + num_traits::Num + Neg<Output = D>,
        F: Fn(&C) -> D,
    {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C> Poly<C>
where
    C: Clone + num_traits::Num + Neg<Output = C> + ExactDiv,
{
    /// Long division that must leave no remainder and never leave the
    /// coefficient ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let lead = divisor.coeffs.last()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return self.is_zero().then(Poly::zero);
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].exact_div(lead)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Poly::new(quot))
    }
}

/// Horner evaluation of an integer polynomial at a numeric `p`.
pub fn polyp_eval(f: &PolyP, pval: &BigInt) -> BigInt {
    f.eval(pval)
}

/// Residue class modulo `modulus ≥ 2`, stored in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    residue: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: &BigInt, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let r = value.mod_floor(&BigInt::from(modulus));
        Ok(ModInt {
            residue: r.to_u64().expect("residue below modulus"),
            modulus,
        })
    }

    pub fn from_u64(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        Ok(ModInt {
            residue: value % modulus,
            modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn with(&self, residue: u64) -> Self {
        ModInt {
            residue,
            modulus: self.modulus,
        }
    }

    fn add(&self, o: &Self) -> Self {
        self.with(((self.residue as u128 + o.residue as u128) % self.modulus as u128) as u64)
    }

    fn neg(&self) -> Self {
        self.with((self.modulus - self.residue) % self.modulus)
    }

    fn mul(&self, o: &Self) -> Self {
        self.with(((self.residue as u128 * o.residue as u128) % self.modulus as u128) as u64)
    }

    pub fn inverse(&self) -> Option<Self> {
        let m = BigInt::from(self.modulus);
        let e = BigInt::from(self.residue).extended_gcd(&m);
        if !e.gcd.is_one() {
            return None;
        }
        Some(self.with(e.x.mod_floor(&m).to_u64().unwrap()))
    }
}

/// An element of one of the supported exact rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    PolyP(PolyP),
    RatPolyP(RatPolyP),
    Mod(ModInt),
}

impl Scalar {
    pub fn int(v: i64) -> Scalar {
        Scalar::Int(BigInt::from(v))
    }

    pub fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn modular(v: i64, m: u64) -> Result<Scalar> {
        Ok(Scalar::Mod(ModInt::new(&BigInt::from(v), m)?))
    }

    /// The polynomial `p` itself.
    pub fn p() -> Scalar {
        Scalar::PolyP(PolyP::p())
    }

    pub fn ring(&self) -> RingKind {
        match self {
            Scalar::Int(_) => RingKind::Integer,
            Scalar::Rat(_) => RingKind::Rational,
            Scalar::PolyP(_) => RingKind::PolyP,
            Scalar::RatPolyP(_) => RingKind::RatPolyP,
            Scalar::Mod(m) => RingKind::Mod(m.modulus),
        }
    }

    pub fn from_int(v: BigInt, ring: RingKind) -> Scalar {
        match ring {
            RingKind::Integer => Scalar::Int(v),
            RingKind::Rational => Scalar::Rat(BigRational::from_integer(v)),
            RingKind::PolyP => Scalar::PolyP(Poly::constant(v)),
            RingKind::RatPolyP => Scalar::RatPolyP(Poly::constant(BigRational::from_integer(v))),
            RingKind::Mod(m) => Scalar::Mod(ModInt::new(&v, m).expect("modulus validated by ring")),
        }
    }

    pub fn from_i64(v: i64, ring: RingKind) -> Scalar {
        Scalar::from_int(BigInt::from(v), ring)
    }

    pub fn zero(ring: RingKind) -> Scalar {
        Scalar::from_i64(0, ring)
    }

    pub fn one(ring: RingKind) -> Scalar {
        Scalar::from_i64(1, ring)
    }

    /// Embeds a rational constant; fails when the ring has no such element
    /// (a non-integral value in `Z` or `Z[p]`, a denominator sharing a factor
    /// with the modulus).
    pub fn from_rational(q: &BigRational, ring: RingKind) -> Result<Scalar> {
        if q.is_integer() {
            return Ok(Scalar::from_int(q.to_integer(), ring));
        }
        match ring {
            RingKind::Rational => Ok(Scalar::Rat(q.clone())),
            RingKind::RatPolyP => Ok(Scalar::RatPolyP(Poly::constant(q.clone()))),
            RingKind::Mod(m) => {
                let n = ModInt::new(q.numer(), m)?;
                let d = ModInt::new(q.denom(), m)?;
                let inv = d.inverse().ok_or_else(|| Error::NotInvertible(format!("{} mod {m}", q.denom())))?;
                Ok(Scalar::Mod(n.mul(&inv)))
            }
            _ => Err(Error::InexactDivision(q.denom().to_string(), q.numer().to_string())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::PolyP(v) => v.is_zero(),
            Scalar::RatPolyP(v) => v.is_zero(),
            Scalar::Mod(v) => v.residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.ring())
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Maps the element into `target`, which must contain this ring.
    pub fn promote(&self, target: RingKind) -> Result<Scalar> {
        use RingKind as K;
        if self.ring() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Int(v), _) => Ok(Scalar::from_int(v.clone(), target)),
            (Scalar::Rat(q), K::RatPolyP | K::Mod(_)) => Scalar::from_rational(q, target),
            (Scalar::PolyP(f), K::RatPolyP) => {
                Ok(Scalar::RatPolyP(f.map(|c| BigRational::from_integer(c.clone()))))
            }
            _ => Err(Error::DomainMismatch(self.ring(), target)),
        }
    }

    /// The same element viewed in the fraction-closed variant of its ring.
    pub fn to_field(&self) -> Scalar {
        self.promote(self.ring().field())
            .expect("every ring embeds in its field variant")
    }

    fn same_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::DomainMismatch(self.ring(), other.ring()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::PolyP(a), Scalar::PolyP(b)) => Scalar::PolyP(a.add(b)),
            (Scalar::RatPolyP(a), Scalar::RatPolyP(b)) => Scalar::RatPolyP(a.add(b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::PolyP(a), Scalar::PolyP(b)) => Scalar::PolyP(a.mul(b)),
            (Scalar::RatPolyP(a), Scalar::RatPolyP(b)) => Scalar::RatPolyP(a.mul(b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::PolyP(a) => Scalar::PolyP(a.neg()),
            Scalar::RatPolyP(a) => Scalar::RatPolyP(a.neg()),
            Scalar::Mod(a) => Scalar::Mod(a.neg()),
        }
    }

    /// `self / other`, required to stay inside the ring.
    pub fn div_exact(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inexact = || Error::InexactDivision(other.to_string(), self.to_string());
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.exact_div(b).map(Scalar::Int).ok_or_else(inexact),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::PolyP(a), Scalar::PolyP(b)) => a.div_exact(b).map(Scalar::PolyP).ok_or_else(inexact),
            (Scalar::RatPolyP(a), Scalar::RatPolyP(b)) => {
                a.div_exact(b).map(Scalar::RatPolyP).ok_or_else(inexact)
            }
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                let inv = b.inverse().ok_or_else(inexact)?;
                Ok(Scalar::Mod(a.mul(&inv)))
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse, taken in the field variant of the ring for
    /// `Z` and `Z[p]`. Polynomials are invertible only when constant.
    pub fn try_inverse(&self) -> Result<Scalar> {
        let f = self.to_field();
        let one = Scalar::one(f.ring());
        one.div_exact(&f)
            .map_err(|e| match e {
                Error::DivisionByZero | Error::InexactDivision(..) => Error::NotInvertible(self.to_string()),
                e => e,
            })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes a numeric prime for the symbol `p`; other variants are
    /// returned unchanged.
    pub fn eval_at_p(&self, pval: &BigInt) -> Scalar {
        match self {
            Scalar::PolyP(f) => Scalar::Int(polyp_eval(f, pval)),
            Scalar::RatPolyP(f) => Scalar::Rat(f.eval(&BigRational::from_integer(pval.clone()))),
            other => other.clone(),
        }
    }

    /// `|self|` for integers and rationals.
    pub fn abs(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(v) => Some(Scalar::Int(v.abs())),
            Scalar::Rat(v) => Some(Scalar::Rat(v.abs())),
            _ => None,
        }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_rat(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn fmt_poly<C: Clone + num_traits::Num + Neg<Output = C>>(
    f: &Poly<C>,
    coef: impl Fn(&C) -> (bool, String),
    explicit: bool,
) -> String {
    // `coef` returns (negative, magnitude text). With `explicit` every term
    // carries its coefficient and exponent, which keeps rational-coefficient
    // polynomials distinguishable from integer ones.
    if f.is_zero() {
        return if explicit { "0/1*p^0".into() } else { "0*p^0".into() };
    }
    if !explicit && f.degree() == Some(0) {
        let (neg, mag) = coef(&f.coeffs()[0]);
        return format!("{}{}*p^0", if neg { "-" } else { "" }, mag);
    }
    let mut out = String::new();
    for (e, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = coef(c);
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let term = if explicit {
            format!("{mag}*p^{e}")
        } else {
            match (e, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => "p".to_string(),
                (1, _) => format!("{mag}*p"),
                (_, "1") => format!("p^{e}"),
                _ => format!("{mag}*p^{e}"),
            }
        };
        out.push_str(&term);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(q) => write!(f, "{}", fmt_rat(q)),
            Scalar::PolyP(p) => write!(
                f,
                "{}",
                fmt_poly(p, |c| (c.is_negative(), c.abs().to_string()), false)
            ),
            Scalar::RatPolyP(p) => write!(
                f,
                "{}",
                fmt_poly(p, |c| (c.is_negative(), fmt_rat(&c.abs())), true)
            ),
            Scalar::Mod(m) => write!(f, "{} mod {}", m.residue, m.modulus),
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let v = self.digits()?;
        Ok(if neg { -v } else { v })
    }

    /// `int` or `int/posint`; the flag reports whether a slash was present.
    fn magnitude(&mut self) -> Result<(BigRational, bool)> {
        let n = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok((BigRational::new(n, d), true))
        } else {
            Ok((BigRational::from_integer(n), false))
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.digits()?;
            match e.to_usize() {
                Some(e) if e <= 4096 => Ok(e),
                _ => {
                    self.pos = at;
                    self.err("exponent too large")
                }
            }
        } else {
            Ok(1)
        }
    }
}

fn parse_poly(text: &str) -> Result<Scalar> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(BigRational, usize)> = Vec::new();
    let mut rational = false;
    let mut first = true;
    while !cur.at_end() {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') {
            if first {
                return cur.err("unexpected '+'");
            }
            false
        } else if first {
            false
        } else {
            return cur.err("expected '+' or '-'");
        };
        first = false;
        let (mag, e) = if cur.peek() == Some(b'p') {
            cur.pos += 1;
            (BigRational::one(), cur.exponent()?)
        } else {
            let (mag, slash) = cur.magnitude()?;
            rational |= slash;
            if cur.eat(b'*') {
                if !cur.eat(b'p') {
                    return cur.err("expected 'p'");
                }
                (mag, cur.exponent()?)
            } else {
                (mag, 0)
            }
        };
        terms.push((if neg { -mag } else { mag }, e));
    }
    if first {
        return cur.err("empty polynomial");
    }
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    let f = Poly::new(coeffs);
    if rational {
        Ok(Scalar::RatPolyP(f))
    } else {
        Ok(Scalar::PolyP(f.map(|c| c.to_integer())))
    }
}

/// Parses the textual scalar grammar: `-3`, `-3/4`, `p^2-2*p`, `4 mod 5`.
pub fn scalar_parse(text: &str) -> Result<Scalar> {
    if let Some(idx) = text.find("mod") {
        let mut left = Cursor::new(&text[..idx]);
        let v = left.signed_int()?;
        if !left.at_end() {
            return left.err("trailing input before 'mod'");
        }
        let mut right = Cursor::new(&text[idx + 3..]);
        let m = right.digits().map_err(|e| shift(e, idx + 3))?;
        if !right.at_end() {
            return right.err("trailing input").map_err(|e| shift(e, idx + 3));
        }
        let m = m
            .to_u64()
            .ok_or_else(|| Error::Parse { pos: idx + 3, msg: "modulus too large".into() })?;
        return Ok(Scalar::Mod(ModInt::new(&v, m)?));
    }
    if text.contains('p') {
        return parse_poly(text);
    }
    let mut cur = Cursor::new(text);
    let neg = cur.eat(b'-');
    let (mag, slash) = cur.magnitude()?;
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    let q = if neg { -mag } else { mag };
    Ok(if slash {
        Scalar::Rat(q)
    } else {
        Scalar::Int(q.to_integer())
    })
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        e => e,
    }
}

/// Inverse of [`scalar_parse`].
pub fn scalar_format(x: &Scalar) -> String {
    x.to_string()
}

/// Parses a comma-separated list of scalars.
pub fn parse_list(text: &str) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(scalar_parse(part).map_err(|e| shift(e, offset))?);
        offset += part.len() + 1;
    }
    Ok(out)
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        scalar_parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        scalar_parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        scalar_parse(text).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
    }

    #[test]
    fn poly_product() {
        let a = Scalar::PolyP(Poly::new(vec![1.into(), 1.into()]));
        let b = -Scalar::p();
        assert_eq!(&a * &b, s("-p^2-p"));
    }

    #[test]
    fn mod_product() {
        let a = Scalar::modular(4, 5).unwrap();
        let b = Scalar::modular(3, 5).unwrap();
        assert_eq!(a * b, Scalar::modular(2, 5).unwrap());
    }

    #[test]
    fn mismatch_is_an_error() {
        assert!(matches!(
            Scalar::int(1).checked_add(&Scalar::rat(1, 2)),
            Err(Error::DomainMismatch(..))
        ));
        let a = Scalar::modular(1, 5).unwrap();
        let b = Scalar::modular(1, 7).unwrap();
        assert!(matches!(a.checked_mul(&b), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn exact_division() {
        assert!(matches!(
            Scalar::int(11).div_exact(&Scalar::int(8)),
            Err(Error::InexactDivision(..))
        ));
        assert_eq!(Scalar::rat(11, 1).div_exact(&Scalar::rat(8, 1)).unwrap(), Scalar::rat(11, 8));
        assert_eq!(s("p^2-1").div_exact(&s("p-1")).unwrap(), s("p+1"));
        assert!(matches!(s("p^2+1").div_exact(&s("p-1")), Err(Error::InexactDivision(..))));
        assert!(matches!(Scalar::int(3).div_exact(&Scalar::int(0)), Err(Error::DivisionByZero)));
        assert!(matches!(s("2*p").div_exact(&s("3*p^0")), Err(Error::InexactDivision(..))));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("-3/4"), Scalar::rat(-3, 4));
        assert_eq!(s("p+1"), Scalar::PolyP(Poly::new(vec![1.into(), 1.into()])));
        assert_eq!(s("p^2-2*p"), Scalar::PolyP(Poly::new(vec![0.into(), (-2).into(), 1.into()])));
        assert_eq!(s("7 mod 5"), Scalar::modular(2, 5).unwrap());
        assert_eq!(s("-1 mod 5"), Scalar::modular(4, 5).unwrap());
        assert_eq!(s(" 12 "), Scalar::int(12));
    }

    #[test]
    fn parse_errors_carry_position() {
        match scalar_parse("3/0") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match scalar_parse("p+*") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(scalar_parse("").is_err());
        assert!(scalar_parse("1 mod 1").is_err());
        assert!(scalar_parse("1/-2").is_err());
    }

    #[test]
    fn format_keeps_variant() {
        assert_eq!(Scalar::rat(3, 1).to_string(), "3/1");
        assert_eq!(Scalar::PolyP(Poly::constant(3.into())).to_string(), "3*p^0");
        assert_eq!(s("3*p+1").to_string(), "3*p+1");
        assert_eq!(s("-p").to_string(), "-p");
        assert_eq!(s("p^2-2*p").to_string(), "p^2-2*p");
        let half = Scalar::RatPolyP(Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]));
        assert_eq!(half.to_string(), "1/1*p^1+1/2*p^0");
        assert_eq!(s(&half.to_string()), half);
    }

    #[test]
    fn horner() {
        let two = BigInt::from(2);
        assert_eq!(polyp_eval(&PolyP::new(vec![1.into(), 1.into()]), &two), 3.into());
        assert_eq!(polyp_eval(&PolyP::new(vec![0.into(), (-1).into()]), &two), (-2).into());
        assert_eq!(polyp_eval(&PolyP::new(vec![1.into(), 3.into()]), &two), 7.into());
    }

    #[test]
    fn inverses() {
        assert_eq!(Scalar::int(2).try_inverse().unwrap(), Scalar::rat(1, 2));
        assert_eq!(s("-2*p^0").try_inverse().unwrap().to_string(), "-1/2*p^0");
        assert!(s("p").try_inverse().is_err());
        assert_eq!(Scalar::modular(3, 7).unwrap().try_inverse().unwrap(), Scalar::modular(5, 7).unwrap());
        assert!(Scalar::modular(2, 6).unwrap().try_inverse().is_err());
    }

    #[test]
    fn joins_and_promotion() {
        assert_eq!(RingKind::Integer.join(RingKind::PolyP), Some(RingKind::PolyP));
        assert_eq!(RingKind::Rational.join(RingKind::PolyP), Some(RingKind::RatPolyP));
        assert_eq!(RingKind::Mod(5).join(RingKind::Mod(7)), None);
        assert_eq!(RingKind::PolyP.join(RingKind::Mod(7)), None);
        let v = unify(&[Scalar::int(2), s("p+1")]).unwrap();
        assert_eq!(v[0], Scalar::PolyP(Poly::constant(2.into())));
        assert!(Scalar::rat(1, 2).promote(RingKind::Integer).is_err());
    }
}
