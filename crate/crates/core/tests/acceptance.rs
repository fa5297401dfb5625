//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use doublepell::classify::{loci_from_invariants, SignPattern};
use doublepell::curve::{compute_bounds, sym_invariants};
use doublepell::exactmath::{rat, rat_frac};
use doublepell::pell::{pell_classes, pell_fundamental, pell_iterate, PellProblem};
use doublepell::search::{box_search, family_corpus, search_exceptional, sunit_solutions, verify_corpus};
use doublepell::{classify, CurveParams, MultiQuad, QuadCoord, QuadPoint, SPrimeSet, SearchConfig, Strategy, Verdict};
use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// Wall-clock ceilings.
const IDENTITY_LIMIT: Duration = Duration::from_secs(60);
const BOX_LIMIT: Duration = Duration::from_secs(120);
/// Corpus size floors.
const MIN_POINTS: usize = 1000;
const MIN_CURVES: usize = 5;
/// Solutions taken from each family before orbit expansion.
const PER_FAMILY: usize = 12;
const MAX_FIBER: usize = 4;

const CURVES: [(i64, i64, i64, i64); 7] =
    [(2, 3, 1, 1), (2, 5, 1, 1), (3, 5, 1, 1), (2, 7, 1, 1), (3, 7, 1, 1), (2, 3, -1, 1), (2, 3, 1, 5)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn curve(t: (i64, i64, i64, i64)) -> CurveParams {
    CurveParams::new(t.0, t.1, t.2, t.3).unwrap()
}

fn point(eps: i64, x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> QuadPoint {
    let c = |(u, v): (i64, i64)| QuadCoord::new(rat(u), rat(v));
    QuadPoint::new(eps, c(x), c(y), c(z)).unwrap()
}

fn mq(rational: i64, radical: &[(i64, i64)]) -> MultiQuad {
    radical.iter().fold(MultiQuad::from_int(rational), |acc, &(r, k)| {
        acc + MultiQuad::sqrt(&BigInt::from(r)).unwrap().scale(&rat(k))
    })
}

/// Orbit-expanded family points for every test curve.
fn corpus() -> Vec<(CurveParams, Vec<QuadPoint>)> {
    CURVES
        .iter()
        .map(|&t| {
            let c = curve(t);
            let cfg = SearchConfig::new(c.clone(), SPrimeSet::empty(), 1, 1, PER_FAMILY).unwrap();
            let pts: BTreeSet<QuadPoint> = family_corpus(&cfg).unwrap().iter().flat_map(QuadPoint::orbit).collect();
            (c, pts.into_iter().collect())
        })
        .collect()
}

fn identity_suite(corpus: &[(CurveParams, Vec<QuadPoint>)]) -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    let mut failures = Vec::new();
    for (c, pts) in corpus {
        let report = verify_corpus(c, pts, Strategy::default()).unwrap();
        points += report.points;
        failures.extend(report.failures.into_iter().map(|(p, f)| format!("{c}: {p} {f:?}")));
    }
    let elapsed = start.elapsed();
    let curves = corpus.iter().filter(|(_, p)| !p.is_empty()).count();
    outcome(
        failures.is_empty() && points >= MIN_POINTS && curves >= MIN_CURVES && elapsed < IDENTITY_LIMIT,
        format!("{points} points on {curves} curves, {} failures, {elapsed:.2?}", failures.len()),
    )
}

fn worked_examples() -> Outcome {
    let c = curve((2, 3, 1, 1));
    let mut bad = Vec::new();
    let mut expect = |name: &str, got: &MultiQuad, want: MultiQuad| {
        if *got != want {
            bad.push(format!("{name}: {got} != {want}"));
        }
    };
    let p = point(13, (2, 0), (3, 0), (0, 1));
    let s = sym_invariants(&c, &p).unwrap();
    expect("xy ff'", &s.ff, mq(17, &[(2, 12)]));
    expect("xy gg'", &s.gg, mq(-1, &[]));
    expect("xy hh'", &s.hh, mq(1, &[]));
    expect("xy gamma", &s.gamma, mq(1, &[]));
    let v1 = classify(&c, &p).unwrap().verdict;

    let p = point(33, (4, 0), (0, 1), (7, 0));
    let s = sym_invariants(&c, &p).unwrap();
    expect("xz ff'", &s.ff, mq(-1, &[]));
    expect("xz hh'", &s.hh, mq(-1, &[]));
    expect("xz beta", &s.beta, mq(1, &[]));
    let v2 = classify(&c, &p).unwrap().verdict;

    let p = point(10, (0, 2), (9, 0), (11, 0));
    let s = sym_invariants(&c, &p).unwrap();
    expect("yz ff'", &s.ff, mq(1, &[]));
    expect("yz gg'", &s.gg, mq(1, &[]));
    expect("yz alpha", &s.alpha, mq(1, &[]));
    let v3 = classify(&c, &p).unwrap().verdict;

    let s = sym_invariants(&c, &point(1, (0, 0), (1, 0), (1, 0))).unwrap();
    expect("diag alpha", &s.alpha, mq(1, &[]));
    expect("diag beta", &s.beta, mq(5, &[(6, 2)]));
    expect("diag gamma", &s.gamma, mq(-5, &[(6, -2)]));

    for (got, want) in [(v1, Verdict::FamilyXY), (v2, Verdict::FamilyXZ), (v3, Verdict::FamilyYZ)] {
        if got != want {
            bad.push(format!("verdict {got} != {want}"));
        }
    }
    let pass = bad.is_empty();
    outcome(pass, if pass { "13 values and 3 verdicts match".to_string() } else { bad.join("; ") })
}

fn oracle_equivalence(corpus: &[(CurveParams, Vec<QuadPoint>)]) -> Outcome {
    let mut checked = 0;
    let mut exceptions = 0;
    for (c, pts) in corpus {
        for p in pts {
            let sym = sym_invariants(c, p).unwrap();
            checked += 1;
            if loci_from_invariants(c, &sym) != SignPattern::of(p).loci() || classify(c, p).is_err() {
                exceptions += 1;
            }
        }
    }
    outcome(exceptions == 0, format!("{checked} points, {exceptions} exceptions"))
}

fn squarefree_small(n: i64) -> bool {
    let m = n.abs();
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

/// Independent scan: every coordinate ranges over `u + v√ε` with integer
/// `|u|, |v| ≤ 5`, checking both equations componentwise in `Z[√ε]`.
fn naive_box(c: &CurveParams, eps_bound: i64, coeff: i64) -> BTreeSet<QuadPoint> {
    let [a, b, cc, d] = c.coefficients();
    let mut found = BTreeSet::new();
    for eps in (-eps_bound..=eps_bound).filter(|&e| e != 0 && squarefree_small(e)) {
        let vr = if eps == 1 { 0..=0 } else { -coeff..=coeff };
        let pairs: Vec<(i64, i64)> = (-coeff..=coeff).flat_map(|u| vr.clone().map(move |v| (u, v))).collect();
        let square = |(u, v): (i64, i64)| (u * u + eps * v * v, 2 * u * v);
        for &x in &pairs {
            let (x0, x1) = square(x);
            for &y in &pairs {
                if square(y) != (a * x0 + cc, a * x1) {
                    continue;
                }
                for &z in &pairs {
                    if square(z) != (b * x0 + d, b * x1) {
                        continue;
                    }
                    if eps != 1 && x.1 == 0 && y.1 == 0 && z.1 == 0 {
                        continue;
                    }
                    found.insert(point(eps, x, y, z).canonical());
                }
            }
        }
    }
    found
}

fn box_completeness() -> Outcome {
    let start = Instant::now();
    let c = curve((2, 3, 1, 1));
    let cfg = SearchConfig::new(c.clone(), SPrimeSet::empty(), 5, 15, 1).unwrap();
    let searched: BTreeSet<QuadPoint> = box_search(&cfg).unwrap().into_iter().collect();
    let naive = naive_box(&c, 15, 5);
    let expected: BTreeSet<QuadPoint> = [
        point(1, (0, 0), (1, 0), (1, 0)),
        point(13, (2, 0), (3, 0), (0, 1)),
        point(3, (1, 0), (0, 1), (2, 0)),
    ]
    .iter()
    .map(QuadPoint::canonical)
    .collect();
    let elapsed = start.elapsed();
    outcome(
        searched == naive && searched == expected && elapsed < BOX_LIMIT,
        format!("box_search {} points, naive oracle {} points, expected 3, {elapsed:.2?}", searched.len(), naive.len()),
    )
}

fn exceptional_vacuity() -> Outcome {
    let cfg = SearchConfig::new(curve((2, 3, 1, 1)), SPrimeSet::empty(), 1000, 1, 1).unwrap();
    let found = search_exceptional(&cfg).unwrap();
    outcome(found.is_empty(), format!("{} points at coeff_bound 1000", found.len()))
}

fn is_square(n: i64) -> bool {
    n >= 0 && ((n as f64).sqrt().round() as i64).pow(2) == n
}

fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i128;
    [r - 1, r, r + 1].into_iter().find(|&r| r >= 0 && r * r == n)
}

fn pell_correctness() -> Outcome {
    const BOUND: i128 = 10_000;
    let mut problems = 0;
    let mut mismatches = Vec::new();
    for dd in (-30i64..=30).filter(|&d| d != 0 && !is_square(d)) {
        for n in (-20i64..=20).filter(|&n| n != 0) {
            problems += 1;
            let set = pell_classes(&PellProblem::new(dd, n).unwrap()).unwrap();
            let got: BTreeSet<(BigInt, BigInt)> = pell_iterate(&set, &BigInt::from(BOUND)).into_iter().collect();
            let mut want = BTreeSet::new();
            for y in -BOUND..=BOUND {
                if let Some(x) = isqrt_exact(n as i128 + dd as i128 * y * y) {
                    want.insert((BigInt::from(x), BigInt::from(y)));
                    want.insert((BigInt::from(-x), BigInt::from(y)));
                }
            }
            if got != want {
                mismatches.push(format!("D={dd} N={n}"));
            }
        }
    }
    let mut not_minimal = Vec::new();
    for dd in (2i64..=50).filter(|&d| !is_square(d)) {
        let fundamental = pell_fundamental(&BigInt::from(dd)).unwrap();
        let brute = (1i128..)
            .find_map(|y| isqrt_exact(1 + dd as i128 * y * y).map(|x| (BigInt::from(x), BigInt::from(y))))
            .unwrap();
        if fundamental != brute {
            not_minimal.push(dd);
        }
    }
    outcome(
        mismatches.is_empty() && not_minimal.is_empty(),
        format!(
            "{problems} problems vs brute force ({} mismatches {mismatches:?}), fundamentals D<=50 non-minimal: {not_minimal:?}",
            mismatches.len()
        ),
    )
}

fn fiber_bound(corpus: &[(CurveParams, Vec<QuadPoint>)]) -> Outcome {
    let mut worst = 0;
    let mut values = 0;
    for (c, pts) in corpus {
        let mut fibers: BTreeMap<String, BTreeSet<(QuadPoint, QuadPoint)>> = BTreeMap::new();
        for p in pts {
            let s = sym_invariants(c, p).unwrap();
            let key = format!("{:?}", s.triple().map(MultiQuad::to_pairs));
            let q = p.conjugate();
            let pair = if *p <= q { (p.clone(), q) } else { (q, p.clone()) };
            fibers.entry(key).or_default().insert(pair);
        }
        values += fibers.len();
        worst = worst.max(fibers.values().map(BTreeSet::len).max().unwrap_or(0));
    }
    outcome(worst <= MAX_FIBER, format!("{values} distinct values, largest fiber {worst} pairs"))
}

fn pow2_by_squaring(e: u64) -> BigUint {
    let (mut base, mut acc, mut e) = (BigUint::from(2u32), BigUint::one(), e);
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

fn bound_arithmetic() -> Outcome {
    let (n1, n2) = compute_bounds(1, 1).unwrap();
    let want1 = pow2_by_squaring(2838);
    let want2 = pow2_by_squaring(1122) * 3u32;
    let digits = n1.to_string().len();
    outcome(n1 == want1 && n2 == want2 && digits == 855, format!("N1 has {digits} digits, N2 has {} digits", n2.to_string().len()))
}

fn sunit_oracle() -> Outcome {
    let sols = sunit_solutions(&SPrimeSet::new([2, 3]).unwrap(), 2).unwrap();
    let find = |x: [doublepell::Rational; 3]| sols.iter().find(|s| s.x == x);
    let nondeg = find([rat(4), rat_frac(-3, 2), rat_frac(-3, 2)]).is_some_and(|s| !s.degenerate);
    let deg = find([rat(1), rat(2), rat(-2)]).is_some_and(|s| s.degenerate);
    let sums = sols.iter().all(|s| &s.x[0] + &s.x[1] + &s.x[2] == rat(1));
    let flags = sols.iter().all(|s| s.degenerate == s.x.iter().any(|v| *v == rat(1)));
    outcome(
        nondeg && deg && sums && flags,
        format!("{} solutions, (4,-3/2,-3/2) {nondeg}, (1,2,-2) {deg}, sums {sums}, flags {flags}", sols.len()),
    )
}

fn main() -> ExitCode {
    let corpus = corpus();
    let results = [
        ("1 identity suite", identity_suite(&corpus)),
        ("2 worked examples", worked_examples()),
        ("3 oracle equivalence", oracle_equivalence(&corpus)),
        ("4 box completeness", box_completeness()),
        ("5 exceptional vacuity", exceptional_vacuity()),
        ("6 pell correctness", pell_correctness()),
        ("7 fiber bound", fiber_bound(&corpus)),
        ("8 bound arithmetic", bound_arithmetic()),
        ("9 s-unit oracle", sunit_oracle()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        println!("{} criterion {name}: {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
