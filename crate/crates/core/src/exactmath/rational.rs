use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::factor::exact_sqrt;

/// Exact rational number; the denominator is always positive and coprime to
/// the numerator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// Wire form `"p/q"` (the denominator is always written, even when it is 1).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Square root in `Q` if `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = exact_sqrt(r.numer())?;
    let d = exact_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Removes every factor of the listed primes; what is left is the part of
/// `|n|` coprime to them.
pub fn strip_primes(n: &BigInt, primes: &[u64]) -> BigUint {
    let mut m = n.magnitude().clone();
    for &p in primes {
        let p = BigUint::from(p);
        while !m.is_zero() && (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m
}

/// True if every prime dividing the denominator lies in `primes`.
pub fn is_s_integer(r: &Rational, primes: &[u64]) -> bool {
    strip_primes(r.denom(), primes).is_one()
}

/// Exponent vector of `|r|` over `primes` when `r` is an S-unit, i.e. its
/// numerator and denominator are supported on `primes`.
pub fn s_unit_exponents(r: &Rational, primes: &[u64]) -> Option<Vec<i64>> {
    if r.is_zero() {
        return None;
    }
    let mut exps = Vec::with_capacity(primes.len());
    let mut num = r.numer().magnitude().clone();
    let mut den = r.denom().magnitude().clone();
    for &p in primes {
        let pb = BigUint::from(p);
        let mut e = 0i64;
        while (&num % &pb).is_zero() {
            num /= &pb;
            e += 1;
        }
        while (&den % &pb).is_zero() {
            den /= &pb;
            e -= 1;
        }
        exps.push(e);
    }
    (num.is_one() && den.is_one()).then_some(exps)
}

/// Positive integers `<= limit` whose prime factors all lie in `primes`,
/// ascending. Always contains 1.
pub fn smooth_numbers(primes: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &m in &out {
            let mut v = m;
            loop {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) if w <= limit => v = w,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.retain(|&m| m <= limit);
    out.sort_unstable();
    out.dedup();
    out
}
