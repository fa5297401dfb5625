//! Elements of multiquadratic fields `Q(√d1, ..., √dk)`.
//!
//! A [`MultiQuad`] is a finite sum `Σ c_r √r` over squarefree radicands `r`
//! with rational coefficients. The set `{√r : r squarefree}` is linearly
//! independent over `Q`, so the term map is a canonical form and equality is
//! structural. Negative radicands are embedded as `√r = i·√|r|`, which fixes
//! the product rule
//!
//! ```text
//! √m · √n = σ · g · √(mn / g²),   g = gcd(|m|, |n|),   σ = -1 iff m < 0 and n < 0
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

use super::factor::{is_squarefree, squarefree_decompose};
use super::rational::{format_rational, parse_rational, Rational};

/// Nonzero squarefree integer labelling a basis element `√r`; `1` is the
/// rational component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand(BigInt);

impl Radicand {
    /// Checked constructor; rejects zero and non-squarefree values.
    pub fn new(value: BigInt) -> Result<Self> {
        if !is_squarefree(&value)? {
            return Err(Error::domain(format!("{value} is not a nonzero squarefree integer")));
        }
        Ok(Radicand(value))
    }

    /// Caller guarantees `value` is nonzero and squarefree.
    pub(crate) fn new_unchecked(value: BigInt) -> Self {
        debug_assert!(!value.is_zero());
        Radicand(value)
    }

    pub fn one() -> Self {
        Radicand(BigInt::one())
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `√self · √other = scale · √radicand`.
    fn product(&self, other: &Radicand) -> (BigInt, Radicand) {
        let g = self.0.gcd(&other.0);
        let radicand = (&self.0 / &g) * (&other.0 / &g);
        let scale = if self.0.is_negative() && other.0.is_negative() { -g } else { g };
        (scale, Radicand(radicand))
    }

    /// Whether the conjugation attached to `p` flips `√self`.
    fn flipped_by(&self, p: &BigInt) -> bool {
        if *p == BigInt::from(-1) {
            self.0.is_negative()
        } else {
            (&self.0 % p).is_zero()
        }
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiQuad {
    terms: BTreeMap<Radicand, Rational>,
}

impl MultiQuad {
    pub fn zero() -> Self {
        MultiQuad::default()
    }

    pub fn one() -> Self {
        MultiQuad::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        MultiQuad::term(Radicand::one(), r)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        MultiQuad::from_rational(Rational::from_integer(n.into()))
    }

    /// `coeff · √radicand`.
    pub fn term(radicand: Radicand, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        MultiQuad { terms }
    }

    /// Principal square root of an arbitrary integer, with the square part
    /// folded into the coefficient: `√12 = 2√3`, `√-8 = 2√-2`.
    pub fn sqrt(n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return Ok(MultiQuad::zero());
        }
        let (s, d) = squarefree_decompose(n)?;
        Ok(MultiQuad::term(Radicand::new_unchecked(d), Rational::from_integer(s)))
    }

    /// `u + v√eps` for squarefree `eps`.
    pub fn quadratic(u: &Rational, v: &Rational, eps: &Radicand) -> Self {
        MultiQuad::from_rational(u.clone()) + MultiQuad::term(eps.clone(), v.clone())
    }

    /// Builds from `(radicand, coefficient)` pairs, merging duplicates.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Radicand, Rational)>) -> Self {
        let mut out = MultiQuad::zero();
        for (r, c) in pairs {
            out.add_term(r, c);
        }
        out
    }

    fn add_term(&mut self, radicand: Radicand, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(radicand) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational, if it has no irrational component.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Radicand::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, radicand: &Radicand) -> Rational {
        self.terms.get(radicand).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in strictly increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&Radicand, &Rational)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return MultiQuad::zero();
        }
        MultiQuad {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * k)).collect(),
        }
    }

    /// Negates every term whose radicand is divisible by `p` (a prime, or
    /// `-1` for the terms with negative radicand). For primes and `-1` this
    /// is a field automorphism and an involution.
    pub fn conjugate_under(&self, p: &BigInt) -> Self {
        MultiQuad {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), if r.flipped_by(p) { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// A divisor `q` of some support radicand such that every support
    /// radicand is either coprime to `q` or a multiple of it. Flipping the
    /// multiples of `q` is then an automorphism of the field spanned by the
    /// support, just like flipping the multiples of a prime.
    fn conjugation_generator(&self) -> Option<BigInt> {
        if self.terms.keys().any(|r| r.0.is_negative()) {
            return Some(BigInt::from(-1));
        }
        let radicands: Vec<&BigInt> = self.terms.keys().map(|r| &r.0).filter(|r| !r.is_one()).collect();
        let mut q = radicands.first().map(|r| (*r).clone())?;
        'refine: loop {
            for r in &radicands {
                let g = q.gcd(r);
                if !g.is_one() && g != q {
                    q = g;
                    continue 'refine;
                }
            }
            return Some(q);
        }
    }

    /// Multiplicative inverse by the conjugation tower: multiply numerator
    /// and denominator by the conjugate of the denominator until the
    /// denominator is rational.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut numer = MultiQuad::one();
        let mut denom = self.clone();
        loop {
            if let Some(r) = denom.as_rational() {
                if r.is_zero() {
                    return Err(Error::invariant("norm of a nonzero element vanished"));
                }
                return Ok(numer.scale(&r.recip()));
            }
            let q = denom
                .conjugation_generator()
                .ok_or_else(|| Error::invariant("irrational element without a radicand"))?;
            let conj = denom.conjugate_under(&q);
            numer = &numer * &conj;
            denom = &denom * &conj;
        }
    }

    pub fn checked_div(&self, other: &MultiQuad) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Complex value under the fixed embedding, for sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, c) in &self.terms {
            let coeff = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let mag = r.0.magnitude().to_f64().unwrap_or(f64::NAN).sqrt();
            if r.0.sign() == Sign::Minus {
                im += coeff * mag;
            } else {
                re += coeff * mag;
            }
        }
        (re, im)
    }

    /// `(radicand, "p/q")` pairs in increasing radicand order.
    pub fn to_pairs(&self) -> Vec<(BigInt, String)> {
        self.terms.iter().map(|(r, c)| (r.0.clone(), format_rational(c))).collect()
    }
}

impl fmt::Display for MultiQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({mag})")
            };
            match (r.is_one(), mag.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => write!(f, "√{}", r.0)?,
                (false, false) => write!(f, "{coeff}√{}", r.0)?,
            }
        }
        Ok(())
    }
}

impl Add<&MultiQuad> for &MultiQuad {
    type Output = MultiQuad;
    fn add(self, rhs: &MultiQuad) -> MultiQuad {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiQuad> for &MultiQuad {
    type Output = MultiQuad;
    fn sub(self, rhs: &MultiQuad) -> MultiQuad {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiQuad> for &MultiQuad {
    type Output = MultiQuad;
    fn mul(self, rhs: &MultiQuad) -> MultiQuad {
        let mut out = MultiQuad::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                let (scale, r) = r1.product(r2);
                out.add_term(r, c1 * c2 * Rational::from_integer(scale));
            }
        }
        out
    }
}

impl Neg for &MultiQuad {
    type Output = MultiQuad;
    fn neg(self) -> MultiQuad {
        MultiQuad {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiQuad> for MultiQuad {
            type Output = MultiQuad;
            fn $method(self, rhs: MultiQuad) -> MultiQuad {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiQuad> for MultiQuad {
            type Output = MultiQuad;
            fn $method(self, rhs: &MultiQuad) -> MultiQuad {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiQuad> for &MultiQuad {
            type Output = MultiQuad;
            fn $method(self, rhs: MultiQuad) -> MultiQuad {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiQuad {
    type Output = MultiQuad;
    fn neg(self) -> MultiQuad {
        -&self
    }
}

/// Serialized as `[[radicand, numerator, denominator], ...]` with strictly
/// increasing radicands, every entry a decimal string.
impl Serialize for MultiQuad {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(String, String, String)> = self
            .terms
            .iter()
            .map(|(r, c)| (r.0.to_string(), c.numer().to_string(), c.denom().to_string()))
            .collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiQuad {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(String, String, String)>::deserialize(deserializer)?;
        let mut out = MultiQuad::zero();
        let mut last: Option<BigInt> = None;
        for (r, n, d) in triples {
            let r: BigInt = r.parse().map_err(D::Error::custom)?;
            if last.as_ref().is_some_and(|prev| *prev >= r) {
                return Err(D::Error::custom("radicands must be strictly increasing"));
            }
            last = Some(r.clone());
            let radicand = Radicand::new(r).map_err(D::Error::custom)?;
            let coeff = parse_rational(&format!("{n}/{d}")).map_err(D::Error::custom)?;
            if coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            out.add_term(radicand, coeff);
        }
        Ok(out)
    }
}
