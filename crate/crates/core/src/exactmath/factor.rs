//! Integer factorization at desk scale: trial division, Miller-Rabin and
//! Pollard-Brent. Everything above it (squarefree parts, divisor lists,
//! S-unit tests) goes through [`factorize`].

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1 << 12;
/// Upper bound on Pollard-Brent iterations spent on a single integer.
const RHO_BUDGET: u64 = 20_000_000;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24
/// and overwhelmingly reliable beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in small_primes().iter().take(20) {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let m = 128u64;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            ys = y;
            let mut g = 1;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            *budget = budget.saturating_sub(r);
            if g != 1 {
                let mut g = g;
                if g == n {
                    loop {
                        ys = f(ys);
                        g = gcd_u64(x.abs_diff(ys), n);
                        if g > 1 {
                            break;
                        }
                    }
                }
                if g != n {
                    return Some(g);
                }
                break;
            }
            if *budget == 0 {
                return None;
            }
            r *= 2;
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1..64u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut q = one.clone();
        let mut r = 1u64;
        let m = 128u64;
        let mut x;
        let mut ys;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            ys = y.clone();
            let mut g = one.clone();
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            *budget = budget.saturating_sub(r);
            if g != one {
                if &g == n {
                    loop {
                        ys = f(&ys);
                        let diff = if x > ys { &x - &ys } else { &ys - &x };
                        g = diff.gcd(n);
                        if g > one {
                            break;
                        }
                    }
                }
                if &g != n {
                    return Some(g);
                }
                break;
            }
            if *budget == 0 {
                return None;
            }
            r *= 2;
        }
    }
    None
}

fn split(n: BigUint, out: &mut Vec<BigUint>, budget: &mut u64) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let root = n.sqrt();
    if &root * &root == n {
        split(root.clone(), out, budget)?;
        return split(root, out, budget);
    }
    let factor = match n.to_u64() {
        Some(small) => rho_u64(small, budget).map(BigUint::from),
        None => rho_big(&n, budget),
    };
    match factor {
        Some(f) => {
            let rest = &n / &f;
            split(f, out, budget)?;
            split(rest, out, budget)
        }
        None => Err(Error::FactorizationBudget(n.to_string())),
    }
}

/// Prime factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut rest = n.clone();
    let mut found: Vec<BigUint> = Vec::new();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            found.push(pb.clone());
        }
    }
    let mut budget = RHO_BUDGET;
    if !rest.is_one() {
        split(rest, &mut found, &mut budget)?;
    }
    found.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Factorization of the absolute value of a nonzero integer.
pub fn factorize_int(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    factorize(n.magnitude())
}

/// Write `n = s^2 * d` with `s > 0` and `d` squarefree of the same sign as `n`.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::domain("squarefree decomposition of 0"));
    }
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    for (p, e) in factorize_int(n)? {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    let sign = if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
    Ok((BigInt::from(s), BigInt::from_biguint(sign, d)))
}

/// Squarefree part of a nonzero integer (keeps the sign).
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    squarefree_decompose(n).map(|(_, d)| d)
}

pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    Ok(factorize_int(n)?.iter().all(|(_, e)| *e == 1))
}

/// Distinct primes dividing `|n|`, ascending.
pub fn prime_support(n: &BigInt) -> Result<Vec<BigUint>> {
    Ok(factorize_int(n)?.into_iter().map(|(p, _)| p).collect())
}

/// All positive divisors of `|n|`, ascending.
pub fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize_int(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// `Some(r)` with `r >= 0` and `r^2 = n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
