//! Exact coefficient arithmetic.
//!
//! Every matrix entry in this crate is a [`LaurentQP`]: a finite sum
//! `Σ c·q^a·p^b` with exact rational coefficients and signed exponents. The
//! representation is canonical (no zero coefficient is ever stored), so the
//! derived structural equality is equality of polynomials.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::traits::Pow;
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = num::BigRational;

/// Shorthand for building small rationals. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| err("not an integer or fraction"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Exponent pair `(a, b)` of the monomial `q^a p^b`.
pub type Exponents = (i64, i64);

/// A Laurent polynomial in `q` and `p` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQP {
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentQP {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn p() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `q − q⁻¹`, the Hecke choice of the second coefficient.
    pub fn q_minus_q_inv() -> Self {
        Self::q() - Self::monomial(Rational::one(), -1, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `c · q^a · p^b`.
    pub fn monomial(c: Rational, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Terms in ascending `(q-exponent, p-exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, a: i64, b: i64) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no `q` or `p` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Units of the Laurent ring are exactly the nonzero single-term polynomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((&(a, b), c)) if self.terms.len() == 1 => Ok(Self::monomial(c.recip(), -a, -b)),
            _ => Err(Error::NotUnit(self.to_string())),
        }
    }

    /// Integer power; negative exponents are only defined for units.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let (base, e) = if e < 0 { (self.inverse()?, -e) } else { (self.clone(), e) };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Substitutes nonzero rationals for `q` and `p`.
    pub fn eval(&self, q: &Rational, p: &Rational) -> Result<Rational> {
        if q.is_zero() {
            return Err(Error::ZeroSubstitution { symbol: "q" });
        }
        if p.is_zero() {
            return Err(Error::ZeroSubstitution { symbol: "p" });
        }
        let mut sum = Rational::zero();
        for (&(a, b), c) in &self.terms {
            sum += c * Pow::pow(q, a) * Pow::pow(p, b);
        }
        Ok(sum)
    }

    /// Sets `p = 1`, merging terms that differ only in their `p` exponent.
    pub fn at_p_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, _), c)| ((a, 0), c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// LaTeX rendering, highest `q` power first.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono = latex_monomial(a, b);
            if mono.is_empty() || !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&mag.numer().to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()));
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

fn latex_monomial(a: i64, b: i64) -> String {
    let sym = |s: &str, e: i64| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{{{e}}}"),
    };
    format!("{}{}", sym("q", a), sym("p", b))
}

impl fmt::Display for LaurentQP {
    /// Writes a form accepted back by [`str::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (sym, e) in [("q", a), ("p", b)] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQP({self})")
    }
}

impl std::str::FromStr for LaurentQP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_laurent(s)
    }
}

impl From<Rational> for LaurentQP {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentQP {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Zero for LaurentQP {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentQP {
    fn one() -> Self {
        LaurentQP::one()
    }
}

impl AddAssign<&LaurentQP> for LaurentQP {
    fn add_assign(&mut self, rhs: &LaurentQP) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentQP {
    fn add_assign(&mut self, rhs: LaurentQP) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentQP> for LaurentQP {
    fn sub_assign(&mut self, rhs: &LaurentQP) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl SubAssign for LaurentQP {
    fn sub_assign(&mut self, rhs: LaurentQP) {
        *self -= &rhs;
    }
}

impl Neg for LaurentQP {
    type Output = LaurentQP;

    fn neg(mut self) -> LaurentQP {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentQP {
    type Output = LaurentQP;

    fn neg(self) -> LaurentQP {
        -self.clone()
    }
}

impl Mul<&LaurentQP> for &LaurentQP {
    type Output = LaurentQP;

    fn mul(self, rhs: &LaurentQP) -> LaurentQP {
        let mut out = LaurentQP::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&LaurentQP> for LaurentQP {
    fn mul_assign(&mut self, rhs: &LaurentQP) {
        *self = &*self * rhs;
    }
}

impl MulAssign for LaurentQP {
    fn mul_assign(&mut self, rhs: LaurentQP) {
        *self = &*self * &rhs;
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<LaurentQP> for LaurentQP {
            type Output = LaurentQP;
            fn $method(mut self, rhs: LaurentQP) -> LaurentQP {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<&LaurentQP> for LaurentQP {
            type Output = LaurentQP;
            fn $method(mut self, rhs: &LaurentQP) -> LaurentQP {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<LaurentQP> for &LaurentQP {
            type Output = LaurentQP;
            fn $method(self, rhs: LaurentQP) -> LaurentQP {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);
forward_binop!(Mul, mul, mul_assign);

impl Add<&LaurentQP> for &LaurentQP {
    type Output = LaurentQP;

    fn add(self, rhs: &LaurentQP) -> LaurentQP {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentQP> for &LaurentQP {
    type Output = LaurentQP;

    fn sub(self, rhs: &LaurentQP) -> LaurentQP {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::iter::Sum for LaurentQP {
    fn sum<I: Iterator<Item = LaurentQP>>(iter: I) -> Self {
        iter.fold(LaurentQP::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    q: i64,
    p: i64,
    coeff: String,
}

impl Serialize for LaurentQP {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(q, p), c)| TermRepr {
                q,
                p,
                coeff: rational_to_string(c),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentQP {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = LaurentQP::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            out.add_term((t.q, t.p), c);
        }
        Ok(out)
    }
}
