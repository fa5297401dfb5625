//! Desk-scale enumeration: the three families through Pell machinery, an
//! exhaustive box scan, the exceptional loci, and the `x₁ + x₂ + x₃ = 1`
//! S-unit oracle.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classify::{classify, exceptional_shape_candidates, Locus};
use crate::curve::{on_curve, sym_invariants, verify_identities, CurveParams, QuadCoord, QuadPoint, SPrimeSet};
use crate::error::{Error, Result};
use crate::exactmath::rational::{is_s_integer, s_unit_exponents, smooth_numbers};
use crate::exactmath::{is_squarefree, rational_sqrt, squarefree_decompose, Radicand, Rational};
use crate::exec::Strategy;
use crate::pell::{conic_from_pell, conic_solution_set, pell_classes, pell_first, pell_iterate, Pair, PellProblem};

/// Conic iteration gives up once solutions exceed this many bits.
const MAX_CONIC_BITS: u64 = 192;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub curve: CurveParams,
    pub primes: SPrimeSet,
    pub coeff_bound: u64,
    pub eps_bound: u64,
    pub family_count: usize,
}

impl SearchConfig {
    pub fn new(
        curve: CurveParams,
        primes: SPrimeSet,
        coeff_bound: u64,
        eps_bound: u64,
        family_count: usize,
    ) -> Result<Self> {
        if coeff_bound == 0 || eps_bound == 0 {
            return Err(Error::domain("coeff_bound and eps_bound must be at least 1"));
        }
        Ok(SearchConfig { curve, primes, coeff_bound, eps_bound, family_count })
    }

    /// Admissible denominators: `S`-smooth integers up to `coeff_bound`.
    pub fn denominators(&self) -> Vec<u64> {
        smooth_numbers(self.primes.primes(), self.coeff_bound)
    }

    fn rational_in_box(&self, r: &Rational, dens: &HashSet<BigInt>) -> bool {
        r.numer().magnitude() <= &self.coeff_bound.into() && dens.contains(r.denom())
    }

    /// True if `p` lies in the scanned box: `|ε| ≤ eps_bound` and every
    /// `u, v` has numerator at most `coeff_bound` and an admissible
    /// denominator.
    pub fn contains(&self, p: &QuadPoint) -> bool {
        let dens = self.denominator_set();
        p.eps().magnitude() <= &self.eps_bound.into()
            && p
                .coords()
                .iter()
                .all(|c| self.rational_in_box(&c.u, &dens) && self.rational_in_box(&c.v, &dens))
    }

    fn denominator_set(&self) -> HashSet<BigInt> {
        self.denominators().into_iter().map(BigInt::from).collect()
    }
}

/// `√w` as a coordinate over `Q(√ε)`: returns `(ε, coordinate)`.
fn sqrt_coord(w: &Rational) -> Result<(BigInt, QuadCoord)> {
    if let Some(r) = rational_sqrt(w) {
        return Ok((BigInt::one(), QuadCoord::rational(r)));
    }
    // w = N/Q = N·Q / Q², and N·Q = k²·s.
    let (k, s) = squarefree_decompose(&(w.numer() * w.denom()))?;
    Ok((s, QuadCoord::new(Rational::zero(), Rational::new(k, w.denom().clone()))))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn nonneg(sols: impl IntoIterator<Item = Pair>) -> Vec<Pair> {
    sols.into_iter().filter(|(x, y)| !x.is_negative() && !y.is_negative()).collect()
}

/// A family point before its radicand is factored: two integer
/// coordinates and the value `w` whose square root is the third.
#[derive(Clone, Debug)]
struct Candidate {
    slot: usize,
    known: [BigInt; 2],
    w: Rational,
}

impl Candidate {
    fn size(&self) -> BigInt {
        (self.w.numer() * self.w.denom()).abs()
    }

    fn build(&self) -> Result<QuadPoint> {
        let (eps, root) = sqrt_coord(&self.w)?;
        let [p, q] = self.known.clone().map(|n| QuadCoord::rational(Rational::from_integer(n)));
        let (x, y, z) = match self.slot {
            0 => (root, p, q),
            1 => (p, root, q),
            _ => (p, q, root),
        };
        Ok(QuadPoint::new(eps, x, y, z)?.canonical())
    }
}

fn raw_xy(curve: &CurveParams, count: usize) -> Result<Vec<Candidate>> {
    let set = pell_classes(&PellProblem::new(curve.a(), curve.c())?)?;
    Ok(pell_first(&set, count)
        .into_iter()
        .map(|(y, x)| {
            let w = Rational::from_integer(curve.b() * &x * &x + curve.d());
            Candidate { slot: 2, known: [x, y], w }
        })
        .collect())
}

fn raw_xz(curve: &CurveParams, count: usize) -> Result<Vec<Candidate>> {
    let set = pell_classes(&PellProblem::new(curve.b(), curve.d())?)?;
    Ok(pell_first(&set, count)
        .into_iter()
        .map(|(z, x)| {
            let w = Rational::from_integer(curve.a() * &x * &x + curve.c());
            Candidate { slot: 1, known: [x, z], w }
        })
        .collect())
}

fn raw_yz(curve: &CurveParams, primes: &SPrimeSet, count: usize) -> Result<Vec<Candidate>> {
    let (a, b) = (BigInt::from(curve.a()), BigInt::from(curve.b()));
    let set = conic_solution_set(&b, &a, &curve.disc())?;
    let mut out = Vec::new();
    let take = |sols: &[Pair], out: &mut Vec<Candidate>| {
        for (y, z) in sols {
            let w = Rational::new(y * y - curve.c(), a.clone());
            if out.len() < count && is_s_integer(&w, primes.primes()) {
                out.push(Candidate { slot: 0, known: [y.clone(), z.clone()], w });
            }
        }
    };
    if count == 0 {
        return Ok(out);
    }
    if set.fundamental.is_none() {
        take(&conic_from_pell(&b, nonneg(set.class_reps.clone())), &mut out);
        return Ok(out);
    }
    // Solutions with |z| ≤ bound form a prefix of those for a larger bound.
    let mut done = 0;
    let mut bound = BigInt::from(16);
    loop {
        let sols = nonneg(conic_from_pell(&b, pell_iterate(&set, &bound)));
        take(&sols[done..], &mut out);
        done = sols.len();
        if out.len() == count || bound.bits() > MAX_CONIC_BITS {
            return Ok(out);
        }
        bound *= 16;
    }
}

fn build_all(raw: Vec<Candidate>) -> Result<Vec<QuadPoint>> {
    raw.iter().map(Candidate::build).collect()
}

/// Points `(x, y, √(b x² + d))` over the first solutions of `y² − a x² = c`.
pub fn enumerate_family_xy(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    build_all(raw_xy(&cfg.curve, cfg.family_count)?)
}

/// Points `(x, √(a x² + c), z)` over the first solutions of `z² − b x² = d`.
pub fn enumerate_family_xz(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    build_all(raw_xz(&cfg.curve, cfg.family_count)?)
}

/// Points `(√t, y, z)` with `t = (y² − c)/a` over solutions of
/// `b y² − a z² = bc − ad`, keeping those where `t` is an S-integer.
pub fn enumerate_family_yz(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    build_all(raw_yz(&cfg.curve, &cfg.primes, cfg.family_count)?)
}

/// The union of the three family enumerations, deduplicated and sorted.
pub fn family_corpus(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    let mut all = BTreeSet::new();
    all.extend(enumerate_family_xy(cfg)?);
    all.extend(enumerate_family_xz(cfg)?);
    all.extend(enumerate_family_yz(cfg)?);
    Ok(all.into_iter().collect())
}

/// `n` distinct family points (fewer only if the families are finite),
/// preferring those whose radicand is cheapest to factor.
pub fn family_sample(curve: &CurveParams, primes: &SPrimeSet, n: usize) -> Result<Vec<QuadPoint>> {
    let mut k = n.max(1);
    loop {
        let lists = [raw_xy(curve, k)?, raw_xz(curve, k)?, raw_yz(curve, primes, k)?];
        let exhausted = lists.iter().all(|l| l.len() < k);
        let mut raw: Vec<Candidate> = lists.into_iter().flatten().collect();
        raw.sort_by_key(Candidate::size);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for cand in &raw {
            if out.len() == n {
                break;
            }
            let p = cand.build()?;
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        if out.len() == n || exhausted {
            return Ok(out);
        }
        k *= 2;
    }
}

/// All `p + r√ε` with rational `p, r` squaring to `A + B√ε`.
fn sqrt_in_field(a: &Rational, b: &Rational, eps: &Rational) -> Vec<QuadCoord> {
    let mut out = Vec::new();
    let mut push = |p: Rational, r: Rational| {
        for c in [QuadCoord::new(p.clone(), r.clone()), QuadCoord::new(-p.clone(), -r.clone())] {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    };
    if b.is_zero() {
        if let Some(p) = rational_sqrt(a) {
            push(p, Rational::zero());
        }
        if !eps.is_one() {
            if let Some(r) = rational_sqrt(&(a / eps)) {
                push(Rational::zero(), r);
            }
        }
        return out;
    }
    // p² + ε r² = A and 2pr = B give 4p⁴ − 4A p² + ε B² = 0.
    if let Some(s) = rational_sqrt(&(a * a - eps * b * b)) {
        let two = int(2);
        for p2 in [(a + &s) / &two, (a - &s) / &two] {
            if let Some(p) = rational_sqrt(&p2).filter(|p| !p.is_zero()) {
                let r = b / (&two * &p);
                push(p, r);
            }
        }
    }
    out
}

/// Squarefree `ε` with `|ε| ≤ bound`, including `1` and negatives.
fn radicands_up_to(bound: u64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for m in 1..=bound {
        let m = BigInt::from(m);
        if is_squarefree(&m)? {
            out.push(m.clone());
            out.push(-m);
        }
    }
    Ok(out)
}

fn box_rationals(cfg: &SearchConfig) -> Vec<Rational> {
    let bound = cfg.coeff_bound as i64;
    let set: BTreeSet<Rational> = cfg
        .denominators()
        .into_iter()
        .flat_map(|q| (-bound..=bound).map(move |n| Rational::new(n.into(), q.into())))
        .collect();
    set.into_iter().collect()
}

/// Every canonical point in the box described by `cfg`.
pub fn box_search(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    box_search_with(cfg, Strategy::default())
}

/// [`box_search`] with an explicit execution strategy. The scan runs over
/// `x` and solves for `y` and `z` exactly in `Q(√ε)`.
pub fn box_search_with(cfg: &SearchConfig, strategy: Strategy) -> Result<Vec<QuadPoint>> {
    let values = box_rationals(cfg);
    let dens = cfg.denominator_set();
    let curve = &cfg.curve;
    let tasks: Vec<(BigInt, Rational)> = radicands_up_to(cfg.eps_bound)?
        .into_iter()
        .flat_map(|e| values.iter().map(move |u| (e.clone(), u.clone())))
        .collect();
    let found = strategy.flat_map(&tasks, |(eps, ux)| {
        let e = Rational::from_integer(eps.clone());
        let radicand = Radicand::new(eps.clone()).expect("radicands are squarefree");
        let zero = [Rational::zero()];
        let vxs: &[Rational] = if eps.is_one() { &zero } else { &values };
        let mut out = Vec::new();
        for vx in vxs {
            let x2u = ux * ux + &e * vx * vx;
            let x2v = int(2) * ux * vx;
            let ys = sqrt_in_field(&(int(curve.a()) * &x2u + int(curve.c())), &(int(curve.a()) * &x2v), &e);
            let zs = sqrt_in_field(&(int(curve.b()) * &x2u + int(curve.d())), &(int(curve.b()) * &x2v), &e);
            let inside = |c: &QuadCoord| cfg.rational_in_box(&c.u, &dens) && cfg.rational_in_box(&c.v, &dens);
            for y in ys.iter().filter(|c| inside(c)) {
                for z in zs.iter().filter(|c| inside(c)) {
                    let x = QuadCoord::new(ux.clone(), vx.clone());
                    let all_rational = x.is_rational() && y.is_rational() && z.is_rational();
                    if all_rational && !eps.is_one() {
                        continue;
                    }
                    let p = QuadPoint::from_parts(radicand.clone(), x, y.clone(), z.clone());
                    debug_assert!(on_curve(curve, &p));
                    out.push(p.canonical());
                }
            }
        }
        out
    });
    let set: BTreeSet<QuadPoint> = found.into_iter().collect();
    Ok(set.into_iter().collect())
}

/// Points on `W_x⁺, W_y⁺, W_z⁺` whose rational coordinate `t` has
/// numerator at most `coeff_bound` and an admissible denominator.
///
/// Each shape is a generalized Pell equation in `(·, t)` plus a companion
/// square condition. Only points whose verdict is exceptional are
/// returned; a point also lying on a family locus is reported there.
pub fn search_exceptional(cfg: &SearchConfig) -> Result<Vec<QuadPoint>> {
    let c = &cfg.curve;
    let (a, b, cc, d) = (int(c.a()), int(c.b()), int(c.c()), int(c.d()));
    let bound = BigInt::from(cfg.coeff_bound);
    let mut found = BTreeSet::new();
    for locus in [Locus::XPlus, Locus::YPlus, Locus::ZPlus] {
        for eps in exceptional_shape_candidates(c, &cfg.primes, locus)? {
            let e = Rational::from_integer(eps.clone());
            for q in cfg.denominators() {
                let q = BigInt::from(q);
                let q2 = &q * &q;
                // (D, N) of the Pell equation and how to read a point off a
                // solution (X, T) with t = T/q.
                let (pd, pn) = match locus {
                    Locus::XPlus => (c.a() * &eps, c.c() * &eps * &q2),
                    Locus::YPlus => (c.a() * &eps, c.c() * &q2),
                    _ => (c.b() * &eps, c.d() * &q2),
                };
                let set = pell_classes(&PellProblem::new(pd, pn)?)?;
                for (big_x, big_t) in pell_iterate(&set, &bound) {
                    let t = Rational::new(big_t, q.clone());
                    let xq = Rational::new(big_x, q.clone());
                    let t2 = &t * &t;
                    let point = match locus {
                        Locus::XPlus => rational_sqrt(&((&b * &t2 + &d) / &e)).map(|v| {
                            (QuadCoord::rational(t.clone()), QuadCoord::new(Rational::zero(), &xq / &e), QuadCoord::new(Rational::zero(), v))
                        }),
                        Locus::YPlus => rational_sqrt(&((&b * &e * &t2 + &d) / &e)).map(|v| {
                            (QuadCoord::new(Rational::zero(), t.clone()), QuadCoord::rational(xq.clone()), QuadCoord::new(Rational::zero(), v))
                        }),
                        _ => rational_sqrt(&((&a * &e * &t2 + &cc) / &e)).map(|u| {
                            (QuadCoord::new(Rational::zero(), t.clone()), QuadCoord::new(Rational::zero(), u), QuadCoord::rational(xq.clone()))
                        }),
                    };
                    let Some((x, y, z)) = point else { continue };
                    let p = QuadPoint::from_parts(Radicand::new(eps.clone())?, x, y, z);
                    if !on_curve(c, &p) {
                        return Err(Error::invariant(format!("exceptional candidate {p} is off the curve")));
                    }
                    if p.is_s_integral(&cfg.primes) && classify(c, &p)?.verdict.is_exceptional() {
                        found.insert(p.canonical());
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SUnitSolution {
    #[serde(serialize_with = "ser_triple")]
    pub x: [Rational; 3],
    pub degenerate: bool,
}

fn ser_triple<S: serde::Serializer>(x: &[Rational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for r in x {
        seq.serialize_element(&crate::exactmath::format_rational(r))?;
    }
    seq.end()
}

/// `±∏ p^{e_p}` over `p ∈ S` with `|e_p| ≤ exp_bound`, ascending.
pub fn s_units(s: &SPrimeSet, exp_bound: u32) -> Vec<Rational> {
    let mut units = vec![Rational::one()];
    for &p in s.primes() {
        let p = Rational::from_integer(BigInt::from(p));
        let mut next = Vec::with_capacity(units.len() * (2 * exp_bound as usize + 1));
        for u in &units {
            for e in -(exp_bound as i32)..=(exp_bound as i32) {
                next.push(u * p.pow(e));
            }
        }
        units = next;
    }
    let mut all: Vec<Rational> = units.iter().flat_map(|u| [u.clone(), -u]).collect();
    all.sort();
    all
}

pub fn sunit_solutions(s: &SPrimeSet, exp_bound: u32) -> Result<Vec<SUnitSolution>> {
    sunit_solutions_with(s, exp_bound, Strategy::default())
}

/// Ordered triples of S-units within the exponent bound summing to 1.
pub fn sunit_solutions_with(s: &SPrimeSet, exp_bound: u32, strategy: Strategy) -> Result<Vec<SUnitSolution>> {
    if exp_bound == 0 {
        return Err(Error::domain("exp_bound must be at least 1"));
    }
    let units = s_units(s, exp_bound);
    let lookup: HashSet<&Rational> = units.iter().collect();
    let one = Rational::one();
    let mut sols = strategy.flat_map(&units, |x1| {
        units
            .iter()
            .filter_map(|x2| {
                let x3 = &one - x1 - x2;
                lookup.contains(&x3).then(|| {
                    let x = [x1.clone(), x2.clone(), x3];
                    let degenerate = x.iter().any(|v| v.is_one());
                    SUnitSolution { x, degenerate }
                })
            })
            .collect()
    });
    sols.sort();
    Ok(sols)
}

/// Exponent of the `2^{2835 s}` bound on non-degenerate solution counts.
pub fn sunit_count_bound_bits(s: &SPrimeSet) -> u64 {
    2835 * s.s()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SUnitReport {
    pub checked: usize,
    pub matched: usize,
    pub skipped_nonrational: usize,
    pub skipped_exponent: usize,
    pub not_s_unit: usize,
    pub missing: usize,
    pub flag_mismatch: usize,
}

impl SUnitReport {
    pub fn is_consistent(&self) -> bool {
        self.missing == 0 && self.flag_mismatch == 0
    }
}

/// Looks up each point's `(α, β, γ)` among the S-unit solutions. Only
/// rational triples can be compared; the others are counted as skipped.
pub fn cross_check_sunit(cfg: &SearchConfig, points: &[QuadPoint], exp_bound: u32) -> Result<SUnitReport> {
    let sols: HashSet<SUnitSolution> = sunit_solutions(&cfg.primes, exp_bound)?.into_iter().collect();
    let mut report = SUnitReport::default();
    for p in points {
        report.checked += 1;
        let sym = sym_invariants(&cfg.curve, p)?;
        let triple: Option<Vec<Rational>> = sym.triple().iter().map(|v| v.as_rational()).collect();
        let Some(triple) = triple else {
            report.skipped_nonrational += 1;
            continue;
        };
        let exps: Option<Vec<Vec<i64>>> = triple.iter().map(|r| s_unit_exponents(r, cfg.primes.primes())).collect();
        let Some(exps) = exps else {
            report.not_s_unit += 1;
            continue;
        };
        if exps.iter().flatten().any(|e| e.unsigned_abs() > u64::from(exp_bound)) {
            report.skipped_exponent += 1;
            continue;
        }
        let x: [Rational; 3] = [triple[0].clone(), triple[1].clone(), triple[2].clone()];
        let degenerate = x.iter().any(|v| v.is_one());
        if !sols.contains(&SUnitSolution { x, degenerate }) {
            report.missing += 1;
            continue;
        }
        report.matched += 1;
        if degenerate == classify(&cfg.curve, p)?.flags.is_empty() {
            report.flag_mismatch += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub points: usize,
    pub checks: usize,
    pub failures: Vec<(QuadPoint, Vec<&'static str>)>,
}

/// Runs the identity suite on every point.
pub fn verify_corpus(curve: &CurveParams, points: &[QuadPoint], strategy: Strategy) -> Result<CorpusReport> {
    let reports = strategy.map(points, |p| verify_identities(curve, p));
    let mut out = CorpusReport { points: points.len(), ..Default::default() };
    for (p, r) in points.iter().zip(reports) {
        let r = r?;
        out.checks += r.checks.len();
        if !r.all_passed() {
            out.failures.push((p.clone(), r.failures()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Verdict;
    use crate::exactmath::{rat, rat_frac};

    fn cfg(curve: (i64, i64, i64, i64), primes: &[u64], coeff: u64, eps: u64, count: usize) -> SearchConfig {
        let c = CurveParams::new(curve.0, curve.1, curve.2, curve.3).unwrap();
        SearchConfig::new(c, SPrimeSet::new(primes.iter().copied()).unwrap(), coeff, eps, count).unwrap()
    }

    fn pt(eps: i64, x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> QuadPoint {
        let c = |(u, v): (i64, i64)| QuadCoord::new(rat(u), rat(v));
        QuadPoint::new(eps, c(x), c(y), c(z)).unwrap().canonical()
    }

    #[test]
    fn family_xy() {
        let pts = enumerate_family_xy(&cfg((2, 3, 1, 1), &[], 1, 1, 4)).unwrap();
        assert_eq!(
            pts,
            vec![
                pt(1, (0, 0), (1, 0), (1, 0)),
                pt(13, (2, 0), (3, 0), (0, 1)),
                pt(433, (12, 0), (17, 0), (0, 1)),
                pt(14701, (70, 0), (99, 0), (0, 1)),
            ]
        );
    }

    #[test]
    fn family_xz() {
        let c = cfg((2, 3, 1, 1), &[], 1, 1, 4);
        let pts = enumerate_family_xz(&c).unwrap();
        assert_eq!(
            pts,
            vec![
                pt(1, (0, 0), (1, 0), (1, 0)),
                pt(3, (1, 0), (0, 1), (2, 0)),
                pt(33, (4, 0), (0, 1), (7, 0)),
                pt(451, (15, 0), (0, 1), (26, 0)),
            ]
        );
        assert_eq!(classify(&c.curve, &pts[1]).unwrap().verdict, Verdict::KRational);
        assert!(!pts.contains(&pt(33, (4, 0), (0, -1), (7, 0)).with_signs(2)));
    }

    #[test]
    fn family_yz() {
        let c = cfg((2, 3, 1, 1), &[], 1, 1, 3);
        let pts = enumerate_family_yz(&c).unwrap();
        assert_eq!(
            pts,
            vec![
                pt(1, (0, 0), (1, 0), (1, 0)),
                pt(10, (0, 2), (9, 0), (11, 0)),
                pt(110, (0, 6), (89, 0), (109, 0)),
            ]
        );
        for p in &pts {
            let a = Rational::from_integer(c.curve.a().into());
            let x2 = &p.x.u * &p.x.u + Rational::from_integer(p.eps().clone()) * &p.x.v * &p.x.v;
            assert_eq!(a * x2, &p.y.u * &p.y.u - rat(c.curve.c()));
        }
    }

    #[test]
    fn family_count_zero() {
        let c = cfg((2, 3, 1, 1), &[], 1, 1, 0);
        assert!(family_corpus(&c).unwrap().is_empty());
    }

    #[test]
    fn box_small() {
        let c = cfg((2, 3, 1, 1), &[], 5, 15, 1);
        let pts = box_search(&c).unwrap();
        assert_eq!(
            pts,
            vec![pt(1, (0, 0), (1, 0), (1, 0)), pt(3, (1, 0), (0, 1), (2, 0)), pt(13, (2, 0), (3, 0), (0, 1))]
        );
        assert_eq!(box_search_with(&c, Strategy::Sequential).unwrap(), pts);
    }

    #[test]
    fn box_rational_only() {
        let pts = box_search(&cfg((2, 3, 1, 1), &[], 5, 1, 1)).unwrap();
        assert_eq!(pts, vec![pt(1, (0, 0), (1, 0), (1, 0))]);
        let pts = box_search(&cfg((1, 3, 8, 1), &[], 5, 1, 1)).unwrap();
        assert_eq!(pts, vec![pt(1, (1, 0), (3, 0), (2, 0))]);
    }

    #[test]
    fn box_with_denominators() {
        let half = QuadPoint::rational(rat_frac(1, 2), rat(3), rat(2));
        let with = cfg((4, 12, 8, 1), &[2], 5, 3, 1);
        let pts = box_search(&with).unwrap();
        assert!(pts.contains(&half));
        assert!(pts.iter().all(|p| on_curve(&with.curve, p) && with.contains(p)));
        let without = box_search(&cfg((4, 12, 8, 1), &[], 5, 3, 1)).unwrap();
        assert!(!without.contains(&half));
        assert!(without.iter().all(|p| pts.contains(p)));
    }

    #[test]
    fn exceptional_vacuous() {
        let c = cfg((2, 3, 1, 1), &[], 1000, 1, 1);
        assert!(search_exceptional(&c).unwrap().is_empty());
    }

    #[test]
    fn exceptional_matches_box() {
        let c = cfg((2, 3, 1, 5), &[], 12, 7, 1);
        let exc = search_exceptional(&c).unwrap();
        for p in &exc {
            assert!(classify(&c.curve, p).unwrap().verdict.is_exceptional());
        }
        let boxed: Vec<QuadPoint> = box_search(&c)
            .unwrap()
            .into_iter()
            .filter(|p| classify(&c.curve, p).unwrap().verdict.is_exceptional())
            .collect();
        for p in &boxed {
            assert!(exc.contains(p), "{p} missing from search_exceptional");
        }
        for p in exc.iter().filter(|p| c.contains(p)) {
            assert!(boxed.contains(p), "{p} missing from box");
        }
    }

    #[test]
    fn exceptional_with_denominators() {
        // x = √−2/2 gives y = 0 and z = √−2/2, a point on W_y⁺.
        let c = cfg((2, 3, 1, 1), &[2], 5, 3, 1);
        let half = |n| QuadCoord::new(rat(0), rat_frac(n, 2));
        let p = QuadPoint::new(-2, half(1), QuadCoord::int(0), half(1)).unwrap().canonical();
        assert_eq!(classify(&c.curve, &p).unwrap().verdict, Verdict::ExceptionalY);
        assert!(box_search(&c).unwrap().contains(&p));
        assert!(search_exceptional(&c).unwrap().contains(&p));
        assert!(!search_exceptional(&cfg((2, 3, 1, 1), &[], 5, 3, 1)).unwrap().contains(&p));
    }

    #[test]
    fn sunit_examples() {
        let s = SPrimeSet::new([2, 3]).unwrap();
        let sols = sunit_solutions(&s, 2).unwrap();
        let find = |x: [Rational; 3]| sols.iter().find(|t| t.x == x).cloned();
        assert_eq!(find([rat(4), rat_frac(-3, 2), rat_frac(-3, 2)]).map(|t| t.degenerate), Some(false));
        assert_eq!(find([rat(1), rat(2), rat(-2)]).map(|t| t.degenerate), Some(true));
        assert_eq!(sunit_solutions_with(&s, 2, Strategy::Sequential).unwrap(), sols);
        let nondegenerate = sols.iter().filter(|t| !t.degenerate).count() as u64;
        assert!(nondegenerate.ilog2() < sunit_count_bound_bits(&s) as u32);

        let trivial = sunit_solutions(&SPrimeSet::empty(), 1).unwrap();
        let xs: Vec<[Rational; 3]> = trivial.iter().map(|t| t.x.clone()).collect();
        assert_eq!(
            xs,
            vec![[rat(-1), rat(1), rat(1)], [rat(1), rat(-1), rat(1)], [rat(1), rat(1), rat(-1)]]
        );
        assert!(trivial.iter().all(|t| t.degenerate));
        assert!(sunit_solutions(&s, 0).is_err());
    }

    #[test]
    fn sunit_cross_check() {
        let c = cfg((2, 3, 1, 1), &[2, 3], 5, 15, 5);
        let pts = family_corpus(&c).unwrap();
        let report = cross_check_sunit(&c, &pts, 3).unwrap();
        assert_eq!(report.checked, pts.len());
        assert!(report.is_consistent(), "{report:?}");
        // Over (2,3,1,1) the invariants live in Q(√2, √3), so nothing collapses to Q.
        assert_eq!(report.skipped_nonrational, pts.len());
    }

    #[test]
    fn sample_sizes() {
        let c = CurveParams::new(2, 3, 1, 1).unwrap();
        assert_eq!(family_sample(&c, &SPrimeSet::empty(), 50).unwrap().len(), 50);
        let sparse = CurveParams::new(5, 7, 2, 3).unwrap();
        assert!(family_sample(&sparse, &SPrimeSet::empty(), 50).unwrap().is_empty());
    }

    #[test]
    fn corpus_verifies() {
        let c = cfg((2, 3, 1, 1), &[], 1, 1, 6);
        let pts = family_corpus(&c).unwrap();
        let r = verify_corpus(&c.curve, &pts, Strategy::default()).unwrap();
        assert_eq!(r.points, pts.len());
        assert!(r.failures.is_empty());
    }
}
