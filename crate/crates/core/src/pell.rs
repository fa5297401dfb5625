//! Generalized Pell equations `X² − D·Y² = N` over the integers.
//!
//! Positive non-square `D` has infinitely many solutions (when it has one)
//! organized in finitely many classes under composition with the
//! fundamental unit; negative or square `D` has a finite solution set that
//! is enumerated outright.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{exact_sqrt, positive_divisors};

/// An integer solution `(x, y)`.
pub type Pair = (BigInt, BigInt);

/// Largest class-representative window scanned before giving up.
const MAX_WINDOW: u64 = 50_000_000;

/// Continued fraction `√d = [a0; period, period, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub d: BigInt,
    pub a0: BigInt,
    pub period: Vec<BigInt>,
}

fn require_nonsquare_positive(d: &BigInt) -> Result<()> {
    if d.sign() != Sign::Plus {
        return Err(Error::domain(format!("D = {d} must be positive")));
    }
    if exact_sqrt(d).is_some() {
        return Err(Error::domain(format!("D = {d} is a perfect square")));
    }
    Ok(())
}

pub fn cf_sqrt(d: &BigInt) -> Result<CfExpansion> {
    require_nonsquare_positive(d)?;
    let a0 = d.sqrt();
    let two_a0 = &a0 * 2;
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut period = Vec::new();
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        period.push(a.clone());
        if a == two_a0 {
            break;
        }
    }
    Ok(CfExpansion {
        d: d.clone(),
        a0,
        period,
    })
}

/// Minimal positive solution of `X² − D·Y² = 1`, read off the convergents.
pub fn pell_fundamental(d: &BigInt) -> Result<Pair> {
    let cf = cf_sqrt(d)?;
    let (mut h_prev, mut h) = (BigInt::one(), cf.a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut terms = cf.period.iter().cycle();
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            return Ok((h, k));
        }
        let a = terms.next().expect("period is nonempty");
        let h_next = a * &h + &h_prev;
        let k_next = a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Brahmagupta composition; norms multiply.
pub fn pell_compose(p: &Pair, q: &Pair, d: &BigInt) -> Pair {
    (&p.0 * &q.0 + d * &p.1 * &q.1, &p.0 * &q.1 + &p.1 * &q.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellProblem {
    pub d: BigInt,
    pub n: BigInt,
}

impl PellProblem {
    pub fn new(d: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (d, n) = (d.into(), n.into());
        if n.is_zero() {
            return Err(Error::domain("N must be nonzero"));
        }
        Ok(PellProblem { d, n })
    }

    pub fn satisfied_by(&self, (x, y): &Pair) -> bool {
        x * x - &self.d * y * y == self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolutionSet {
    pub problem: PellProblem,
    /// Present iff `D` is positive and not a square.
    pub fundamental: Option<Pair>,
    /// One representative per class (up to overall sign) when infinite;
    /// every solution when `finite_complete`.
    pub class_reps: Vec<Pair>,
    pub finite_complete: bool,
}

fn sort_pairs(pairs: &mut Vec<Pair>) {
    pairs.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1)));
    pairs.dedup();
}

fn with_signs((x, y): &Pair) -> [Pair; 4] {
    [
        (x.clone(), y.clone()),
        (-x, y.clone()),
        (x.clone(), -y),
        (-x, -y),
    ]
}

/// Scans `0 <= y <= y_max` for `x² = N + D·y²`, returning both signs of `x`.
fn scan_window(d: &BigInt, n: &BigInt, y_max: &BigInt) -> Result<Vec<Pair>> {
    let limit = y_max
        .to_u64()
        .filter(|&m| m <= MAX_WINDOW)
        .ok_or_else(|| Error::SearchTooLarge(format!("y window {y_max} for X^2 - {d} Y^2 = {n}")))?;
    let mut out = Vec::new();
    let mut push = |x: BigInt, y: u64| {
        let y = BigInt::from(y);
        if x.is_zero() {
            out.push((x, y));
        } else {
            out.push((-&x, y.clone()));
            out.insert(out.len() - 1, (x, y));
        }
    };
    // Fast path when every value fits comfortably in i128.
    let small = d.to_i128().zip(n.to_i128()).filter(|(dd, nn)| {
        let y = limit as i128;
        dd.abs().checked_mul(y * y).and_then(|v| v.checked_add(nn.abs())).is_some_and(|v| v < (1i128 << 100))
    });
    if let Some((dd, nn)) = small {
        for y in 0..=limit {
            let v = nn + dd * (y as i128) * (y as i128);
            if v < 0 {
                continue;
            }
            let r = (v as u128).sqrt();
            if r * r == v as u128 {
                push(BigInt::from(r), y);
            }
        }
    } else {
        for y in 0..=limit {
            let yb = BigInt::from(y);
            let v = n + d * &yb * &yb;
            if let Some(r) = exact_sqrt(&v) {
                push(r, y);
            }
        }
    }
    Ok(out)
}

fn same_class(p: &Pair, q: &Pair, d: &BigInt, n: &BigInt) -> bool {
    let m = n.abs();
    let s = &p.0 * &q.0 - d * &p.1 * &q.1;
    let t = &p.0 * &q.1 - &q.0 * &p.1;
    (s % &m).is_zero() && (t % &m).is_zero()
}

pub fn pell_classes(problem: &PellProblem) -> Result<PellSolutionSet> {
    let PellProblem { d, n } = problem;
    if n.is_zero() {
        return Err(Error::domain("N must be nonzero"));
    }
    if d.is_zero() {
        return Err(Error::domain("D = 0 gives X^2 = N with Y free"));
    }
    let finite = |mut sols: Vec<Pair>| {
        sort_pairs(&mut sols);
        PellSolutionSet {
            problem: problem.clone(),
            fundamental: None,
            class_reps: sols,
            finite_complete: true,
        }
    };
    if d.is_negative() {
        // |y| <= sqrt(|N| / |D|) since x² = N + D y² >= 0.
        let y_max = (n.abs() / d.abs()).sqrt();
        let sols: Vec<Pair> = scan_window(d, n, &y_max)?.iter().flat_map(with_signs).collect();
        return Ok(finite(sols));
    }
    if let Some(m) = exact_sqrt(d) {
        // (x - m y)(x + m y) = N.
        let mut sols = Vec::new();
        for e in positive_divisors(n)? {
            for e1 in [e.clone(), -e] {
                let e2 = n / &e1;
                let sum = &e1 + &e2;
                let diff = &e2 - &e1;
                let two_m: BigInt = &m * 2;
                if sum.is_even() && (&diff % &two_m).is_zero() {
                    sols.push((sum / 2, diff / two_m));
                }
            }
        }
        return Ok(finite(sols));
    }
    let (x1, y1) = pell_fundamental(d)?;
    let numer = if n.is_positive() { n * (&x1 - 1) } else { n.abs() * (&x1 + 1) };
    let y_max: BigInt = numer / (d * 2);
    let y_max = y_max.sqrt();
    let mut reps: Vec<Pair> = Vec::new();
    for cand in scan_window(d, n, &y_max)? {
        if !reps.iter().any(|r| same_class(r, &cand, d, n)) {
            reps.push(cand);
        }
    }
    Ok(PellSolutionSet {
        problem: problem.clone(),
        fundamental: Some((x1, y1)),
        class_reps: reps,
        finite_complete: false,
    })
}

/// Every solution with `|y| <= bound`, deduplicated and sorted by `|y|`
/// then `x`.
pub fn pell_iterate(set: &PellSolutionSet, bound: &BigInt) -> Vec<Pair> {
    let mut out = Vec::new();
    match &set.fundamental {
        None => {
            out.extend(set.class_reps.iter().filter(|p| p.1.abs() <= *bound).cloned());
        }
        Some(unit) => {
            let d = &set.problem.d;
            let inverse = (unit.0.clone(), -&unit.1);
            for rep in &set.class_reps {
                for step in [unit, &inverse] {
                    let mut cur = rep.clone();
                    let mut prev: Option<BigInt> = None;
                    loop {
                        let size = cur.1.abs();
                        if size <= *bound {
                            out.extend(with_signs(&cur));
                        } else if prev.as_ref().is_some_and(|p| size > *p) {
                            break;
                        }
                        prev = Some(size);
                        cur = pell_compose(&cur, step, d);
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(|p| set.problem.satisfied_by(p)));
    sort_pairs(&mut out);
    out
}

/// The first `count` solutions with `x, y >= 0`, ordered by `y` then `x`.
pub fn pell_first(set: &PellSolutionSet, count: usize) -> Vec<Pair> {
    let nonneg = |sols: Vec<Pair>| -> Vec<Pair> {
        sols.into_iter().filter(|(x, y)| !x.is_negative() && !y.is_negative()).collect()
    };
    if set.fundamental.is_none() || set.class_reps.is_empty() {
        let mut sols = nonneg(set.class_reps.clone());
        sort_pairs(&mut sols);
        sols.truncate(count);
        return sols;
    }
    let mut bound = BigInt::from(16);
    loop {
        let sols = nonneg(pell_iterate(set, &bound));
        if sols.len() >= count {
            return sols.into_iter().take(count).collect();
        }
        bound *= 16;
    }
}

/// Solutions `(y, z)` of `A·y² − B·z² = C` with `|z| <= bound`, via
/// `U = A·y`, `U² − AB·z² = AC`, keeping `A | U`.
pub fn solve_conic(a: &BigInt, b: &BigInt, c: &BigInt, bound: &BigInt) -> Result<Vec<Pair>> {
    let set = conic_solution_set(a, b, c)?;
    Ok(conic_from_pell(a, pell_iterate(&set, bound)))
}

pub(crate) fn conic_solution_set(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<PellSolutionSet> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::domain("conic coefficients must be nonzero"));
    }
    pell_classes(&PellProblem::new(a * b, a * c)?)
}

pub(crate) fn conic_from_pell(a: &BigInt, sols: Vec<Pair>) -> Vec<Pair> {
    let mut out: Vec<Pair> = sols
        .into_iter()
        .filter(|(u, _)| (u % a).is_zero())
        .map(|(u, z)| (u / a, z))
        .collect();
    sort_pairs(&mut out);
    out
}
