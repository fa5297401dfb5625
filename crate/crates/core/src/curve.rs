//! The double Pell curve `y² = a x² + c`, `z² = b x² + d`, its quadratic
//! points, the unit functions
//!
//! ```text
//! f = y + √a·x,   g = z + √b·x,   h = √b·y − √a·z
//! ```
//!
//! and the symmetric-square functions `α = cd/(ff′gg′)`,
//! `β = c(bc−ad)/(ff′hh′)`, `γ = d(ad−bc)/(gg′hh′)` evaluated at a point
//! and its conjugate.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Degeneracy, Error, Result};
use crate::exactmath::{
    format_rational, is_prime_u64, is_squarefree, parse_rational, prime_support, squarefree_part, MultiQuad,
    Radicand, Rational,
};
use crate::exactmath::rational::is_s_integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    sqrt_a: MultiQuad,
    sqrt_b: MultiQuad,
}

/// Checks `abcd ≠ 0` and `ad − bc ≠ 0`.
pub fn validate_curve(a: i64, b: i64, c: i64, d: i64) -> Result<CurveParams> {
    CurveParams::new(a, b, c, d)
}

impl CurveParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 || d == 0 {
            return Err(Error::DegenerateCurve(Degeneracy::ZeroCoefficient));
        }
        if a as i128 * d as i128 == b as i128 * c as i128 {
            return Err(Error::DegenerateCurve(Degeneracy::ProportionalEquations));
        }
        Ok(CurveParams {
            a,
            b,
            c,
            d,
            sqrt_a: MultiQuad::sqrt(&BigInt::from(a))?,
            sqrt_b: MultiQuad::sqrt(&BigInt::from(b))?,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn coefficients(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `bc − ad`.
    pub fn disc(&self) -> BigInt {
        BigInt::from(self.b) * self.c - BigInt::from(self.a) * self.d
    }

    pub fn sqrt_a(&self) -> &MultiQuad {
        &self.sqrt_a
    }

    pub fn sqrt_b(&self) -> &MultiQuad {
        &self.sqrt_b
    }

    /// Squarefree representatives of the classes of `a`, `b` and `ab`.
    pub fn square_classes(&self) -> [BigInt; 3] {
        let a = squarefree_part(&BigInt::from(self.a)).expect("a is nonzero");
        let b = squarefree_part(&BigInt::from(self.b)).expect("b is nonzero");
        let ab = squarefree_part(&(&a * &b)).expect("ab is nonzero");
        [a, b, ab]
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Finite set `S` of rational primes; the archimedean place is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPrimeSet {
    primes: Vec<u64>,
}

impl SPrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(p) = primes.iter().find(|p| !is_prime_u64(**p)) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(SPrimeSet { primes })
    }

    pub fn empty() -> Self {
        SPrimeSet::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of places, counting the archimedean one.
    pub fn s(&self) -> u64 {
        self.primes.len() as u64 + 1
    }

    /// Primes dividing `cd(bc − ad)` that are missing from `S`.
    pub fn missing_for(&self, curve: &CurveParams) -> Vec<u64> {
        let n = BigInt::from(curve.c) * curve.d * curve.disc();
        let mut missing: Vec<u64> = prime_support(&n)
            .expect("small integers factor")
            .iter()
            .filter_map(|p| u64::try_from(p).ok())
            .filter(|p| !self.primes.contains(p))
            .collect();
        missing.sort_unstable();
        missing
    }

    pub fn is_admissible_for(&self, curve: &CurveParams) -> bool {
        self.missing_for(curve).is_empty()
    }
}

/// `u + v√ε` with rational `u, v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadCoord {
    pub u: Rational,
    pub v: Rational,
}

impl QuadCoord {
    pub fn new(u: Rational, v: Rational) -> Self {
        QuadCoord { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        QuadCoord { u, v: Rational::zero() }
    }

    pub fn int(u: i64) -> Self {
        QuadCoord::rational(Rational::from_integer(u.into()))
    }

    /// `v√ε` with integer `v`.
    pub fn radical(v: i64) -> Self {
        QuadCoord::new(Rational::zero(), Rational::from_integer(v.into()))
    }

    pub fn conj(&self) -> Self {
        QuadCoord::new(self.u.clone(), -&self.v)
    }

    pub fn neg(&self) -> Self {
        QuadCoord::new(-&self.u, -&self.v)
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn to_multiquad(&self, eps: &Radicand) -> MultiQuad {
        MultiQuad::quadratic(&self.u, &self.v, eps)
    }

    fn pretty(&self, eps: &BigInt) -> String {
        let radical = |v: &Rational| {
            let mag = v.abs();
            if mag.is_one() {
                format!("√{eps}")
            } else if mag.is_integer() {
                format!("{mag}√{eps}")
            } else {
                format!("({mag})√{eps}")
            }
        };
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => self.u.to_string(),
            (true, false) => format!("{}{}", if self.v.is_negative() { "-" } else { "" }, radical(&self.v)),
            (false, false) => format!(
                "{} {} {}",
                self.u,
                if self.v.is_negative() { "-" } else { "+" },
                radical(&self.v)
            ),
        }
    }
}

/// A point `(x, y, z)` with coordinates in `Q(√ε)`.
///
/// `ε = 1` encodes rational points; a point whose radical parts all vanish
/// is stored with `ε = 1` regardless of the radicand it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint {
    eps: Radicand,
    pub x: QuadCoord,
    pub y: QuadCoord,
    pub z: QuadCoord,
}

impl PartialOrd for QuadPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `|ε|`, then `ε`, then coordinates.
impl Ord for QuadPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (e, f) = (self.eps(), other.eps());
        e.magnitude()
            .cmp(f.magnitude())
            .then_with(|| e.cmp(f))
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl QuadPoint {
    pub fn new(eps: impl Into<BigInt>, x: QuadCoord, y: QuadCoord, z: QuadCoord) -> Result<Self> {
        let eps = eps.into();
        if eps.is_zero() || !is_squarefree(&eps)? {
            return Err(Error::domain(format!("eps = {eps} is not a nonzero squarefree integer")));
        }
        Ok(QuadPoint::from_parts(Radicand::new_unchecked(eps), x, y, z))
    }

    pub(crate) fn from_parts(eps: Radicand, x: QuadCoord, y: QuadCoord, z: QuadCoord) -> Self {
        let all_rational = x.is_rational() && y.is_rational() && z.is_rational();
        let eps = if all_rational { Radicand::one() } else { eps };
        debug_assert!(!(eps.is_one() && !all_rational));
        QuadPoint { eps, x, y, z }
    }

    pub fn rational(x: Rational, y: Rational, z: Rational) -> Self {
        QuadPoint::from_parts(
            Radicand::one(),
            QuadCoord::rational(x),
            QuadCoord::rational(y),
            QuadCoord::rational(z),
        )
    }

    pub fn eps(&self) -> &BigInt {
        self.eps.value()
    }

    pub fn radicand(&self) -> &Radicand {
        &self.eps
    }

    pub fn is_rational(&self) -> bool {
        self.eps.is_one()
    }

    pub fn coords(&self) -> [&QuadCoord; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn coords_mq(&self) -> [MultiQuad; 3] {
        [
            self.x.to_multiquad(&self.eps),
            self.y.to_multiquad(&self.eps),
            self.z.to_multiquad(&self.eps),
        ]
    }

    /// Galois conjugate `√ε ↦ −√ε`.
    pub fn conjugate(&self) -> Self {
        QuadPoint {
            eps: self.eps.clone(),
            x: self.x.conj(),
            y: self.y.conj(),
            z: self.z.conj(),
        }
    }

    /// Negates the coordinates selected by the low three bits of `mask`
    /// (bit 0: x, bit 1: y, bit 2: z).
    pub fn with_signs(&self, mask: u8) -> Self {
        let pick = |c: &QuadCoord, bit: u8| if mask & bit != 0 { c.neg() } else { c.clone() };
        QuadPoint {
            eps: self.eps.clone(),
            x: pick(&self.x, 1),
            y: pick(&self.y, 2),
            z: pick(&self.z, 4),
        }
    }

    /// The distinct images of the point under coordinate sign changes and
    /// conjugation (at most 16).
    pub fn orbit(&self) -> Vec<QuadPoint> {
        let mut out: Vec<QuadPoint> = Vec::with_capacity(16);
        for base in [self.clone(), self.conjugate()] {
            for mask in 0..8 {
                let p = base.with_signs(mask);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn sort_key(&self) -> [&Rational; 6] {
        [&self.x.u, &self.x.v, &self.y.u, &self.y.v, &self.z.u, &self.z.v]
    }

    /// Orbit representative whose `(ux, vx, uy, vy, uz, vz)` is
    /// lexicographically largest.
    pub fn canonical(&self) -> QuadPoint {
        self.orbit()
            .into_iter()
            .max_by(|p, q| p.sort_key().cmp(&q.sort_key()))
            .expect("orbit contains the point itself")
    }

    /// Every coordinate denominator is supported on `S`.
    pub fn is_s_integral(&self, s: &SPrimeSet) -> bool {
        self.coords()
            .iter()
            .all(|c| is_s_integer(&c.u, s.primes()) && is_s_integer(&c.v, s.primes()))
    }

    /// Parses `"eps;ux,vx;uy,vy;uz,vz"` with rational entries `p` or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected eps;ux,vx;uy,vy;uz,vz, got {text:?}")));
        }
        let eps: BigInt = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid eps {:?}", parts[0])))?;
        let coord = |s: &str| -> Result<QuadCoord> {
            let (u, v) = s
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("coordinate {s:?} must be u,v")))?;
            Ok(QuadCoord::new(parse_rational(u)?, parse_rational(v)?))
        };
        let (x, y, z) = (coord(parts[1])?, coord(parts[2])?, coord(parts[3])?);
        if eps.is_one() && !(x.is_rational() && y.is_rational() && z.is_rational()) {
            return Err(Error::domain("eps = 1 requires every radical part to be 0"));
        }
        QuadPoint::new(eps, x, y, z)
    }

    /// Wire form accepted by [`QuadPoint::parse`].
    pub fn encode(&self) -> String {
        let c = |q: &QuadCoord| format!("{},{}", format_rational(&q.u), format_rational(&q.v));
        format!("{};{};{};{}", self.eps, c(&self.x), c(&self.y), c(&self.z))
    }

    /// Human-readable form such as `(2, 3, √13)`.
    pub fn pretty(&self) -> String {
        let e = self.eps.value();
        format!("({}, {}, {})", self.x.pretty(e), self.y.pretty(e), self.z.pretty(e))
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

pub fn on_curve(curve: &CurveParams, p: &QuadPoint) -> bool {
    let [x, y, z] = p.coords_mq();
    on_curve_mq(curve, &x, &y, &z)
}

fn on_curve_mq(curve: &CurveParams, x: &MultiQuad, y: &MultiQuad, z: &MultiQuad) -> bool {
    let x2 = x.square();
    let first = y.square() - x2.scale(&Rational::from_integer(curve.a.into())) - MultiQuad::from_int(curve.c);
    let second = z.square() - x2.scale(&Rational::from_integer(curve.b.into())) - MultiQuad::from_int(curve.d);
    first.is_zero() && second.is_zero()
}

/// `(f, g, h)` at affine coordinates, without checking the curve equations.
fn fgh_at(curve: &CurveParams, [x, y, z]: &[MultiQuad; 3]) -> [MultiQuad; 3] {
    let f = y + curve.sqrt_a() * x;
    let g = z + curve.sqrt_b() * x;
    let h = curve.sqrt_b() * y - curve.sqrt_a() * z;
    [f, g, h]
}

pub fn eval_fgh(curve: &CurveParams, p: &QuadPoint) -> Result<[MultiQuad; 3]> {
    if !on_curve(curve, p) {
        return Err(Error::OffCurve);
    }
    Ok(fgh_at(curve, &p.coords_mq()))
}

/// Values of the symmetric-square functions at the pair `{P, P′}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoint {
    pub point: QuadPoint,
    pub ff: MultiQuad,
    pub gg: MultiQuad,
    pub hh: MultiQuad,
    pub alpha: MultiQuad,
    pub beta: MultiQuad,
    pub gamma: MultiQuad,
}

impl SymPoint {
    pub fn triple(&self) -> [&MultiQuad; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }
}

fn int(n: impl Into<BigInt>) -> MultiQuad {
    MultiQuad::from_int(n)
}

/// Conjugate products through their bilinear expansions, e.g.
/// `ff′ = yy′ + a·xx′ + √a(xy′ + x′y)`.
fn conjugate_products(curve: &CurveParams, p: &[MultiQuad; 3], q: &[MultiQuad; 3]) -> [MultiQuad; 3] {
    let (a, b) = (int(curve.a), int(curve.b));
    let [x, y, z] = p;
    let [x2, y2, z2] = q;
    let ff = y * y2 + &a * &(x * x2) + curve.sqrt_a() * &(x * y2 + x2 * y);
    let gg = z * z2 + &b * &(x * x2) + curve.sqrt_b() * &(x * z2 + x2 * z);
    let sqrt_ab = curve.sqrt_a() * curve.sqrt_b();
    let hh = &b * &(y * y2) + &a * &(z * z2) - sqrt_ab * (y * z2 + y2 * z);
    [ff, gg, hh]
}

pub fn sym_invariants(curve: &CurveParams, p: &QuadPoint) -> Result<SymPoint> {
    if !on_curve(curve, p) {
        return Err(Error::OffCurve);
    }
    let here = p.coords_mq();
    let there = p.conjugate().coords_mq();
    let [ff, gg, hh] = conjugate_products(curve, &here, &there);
    let (c, d, disc) = (int(curve.c), int(curve.d), MultiQuad::from_int(curve.disc()));
    let alpha = (&c * &d) * (&ff * &gg).inv()?;
    let beta = (&c * &disc) * (&ff * &hh).inv()?;
    let gamma = (&d * &(-&disc)) * (&gg * &hh).inv()?;
    if !(&alpha + &beta + &gamma).is_one() {
        return Err(Error::invariant(format!("alpha + beta + gamma != 1 at {p}")));
    }
    Ok(SymPoint {
        point: p.clone(),
        ff,
        gg,
        hh,
        alpha,
        beta,
        gamma,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

/// Every exact identity satisfied by `f, g, h` and `α, β, γ` at an
/// on-curve point and its conjugate.
pub fn verify_identities(curve: &CurveParams, p: &QuadPoint) -> Result<IdentityReport> {
    if !on_curve(curve, p) {
        return Err(Error::OffCurve);
    }
    Ok(verify_identities_unchecked(curve, p))
}

/// As [`verify_identities`] but without the on-curve precondition; off the
/// curve the identities (and divisions) fail and are reported as such.
pub fn verify_identities_unchecked(curve: &CurveParams, p: &QuadPoint) -> IdentityReport {
    let mut report = IdentityReport::default();
    let mut check = |name: &'static str, outcome: Result<bool>| {
        report.checks.push(IdentityCheck {
            name,
            passed: outcome.unwrap_or(false),
        });
    };
    let here = p.coords_mq();
    let there = p.conjugate().coords_mq();
    let [x, y, z] = &here;
    let [x2, y2, z2] = &there;
    let (sa, sb) = (curve.sqrt_a(), curve.sqrt_b());
    let (c, d, disc) = (int(curve.c), int(curve.d), MultiQuad::from_int(curve.disc()));
    let [f, g, h] = fgh_at(curve, &here);
    let [f2, g2, h2] = fgh_at(curve, &there);

    check("norm_f", Ok(&f * &(y - sa * x) == c));
    check("norm_g", Ok(&g * &(z - sb * x) == d));
    check("norm_h", Ok(&h * &(sb * y + sa * z) == disc));
    check("linear_fgh", Ok(sb * &f - sa * &g == h));
    check(
        "reciprocal_fgh",
        (|| Ok((&c * sb).checked_div(&f)? - (&d * sa).checked_div(&g)? == h))(),
    );

    let [ff, gg, hh] = conjugate_products(curve, &here, &there);
    check(
        "bilinear_products",
        Ok(ff == &f * &f2 && gg == &g * &g2 && hh == &h * &h2),
    );
    let sab = sa * sb;
    check(
        "conjugate_linear",
        Ok(hh == int(curve.b) * &ff + int(curve.a) * &gg - &sab * &(&f2 * &g + &f * &g2)),
    );
    check(
        "conjugate_reciprocal",
        (|| {
            let rhs = (&c * &c * int(curve.b)).checked_div(&ff)? + (&d * &d * int(curve.a)).checked_div(&gg)?
                - &c * &d * &sab * ((&f2 * &g).inv()? + (&f * &g2).inv()?);
            Ok(hh == rhs)
        })(),
    );

    let triple = (|| {
        let alpha = (&c * &d).checked_div(&(&ff * &gg))?;
        let beta = (&c * &disc).checked_div(&(&ff * &hh))?;
        let gamma = (&d * &(-&disc)).checked_div(&(&gg * &hh))?;
        Ok::<_, Error>((alpha, beta, gamma))
    })();
    check(
        "unit_sum",
        triple.clone().map(|(al, be, ga)| (al + be + ga).is_one()),
    );
    check(
        "ff_square",
        triple.clone().and_then(|(al, be, ga)| {
            let rhs = (-(&c * &c) * ga).checked_div(&(al * be))?;
            Ok(ff.square() == rhs)
        }),
    );

    // Inversion-free product forms of α, β, γ, against the values above.
    let fm = (y - sa * x) * (y2 - sa * x2);
    let gm = (z - sb * x) * (z2 - sb * x2);
    let hp = (sb * y + sa * z) * (sb * y2 + sa * z2);
    check(
        "product_forms",
        triple.clone().and_then(|(al, be, ga)| {
            let a_prod = (&fm * &gm).checked_div(&(&c * &d))?;
            let b_prod = (&fm * &hp).checked_div(&(&c * &disc))?;
            let g_prod = (&gm * &hp).checked_div(&(&d * &(-&disc)))?;
            Ok(al == a_prod && be == b_prod && ga == g_prod)
        }),
    );
    check(
        "inverse_forms",
        triple.map(|(al, be, ga)| {
            let cd = Rational::new(BigInt::one(), BigInt::from(curve.c) * curve.d);
            let c_disc = Rational::new(BigInt::one(), BigInt::from(curve.c) * curve.disc());
            let d_disc = Rational::new(BigInt::one(), -BigInt::from(curve.d) * curve.disc());
            let inv_a = (&ff * &gg).scale(&cd);
            let inv_b = (&ff * &hh).scale(&c_disc);
            let inv_g = (&gg * &hh).scale(&d_disc);
            (al * inv_a).is_one() && (be * inv_b).is_one() && (ga * inv_g).is_one()
        }),
    );
    check(
        "two_term_unit",
        (|| Ok(((sb * &f) - (sa * &g)).checked_div(&h)?.is_one()))(),
    );
    report
}

/// A projective point `(X : Y : Z : W)`.
pub type ProjPoint = [MultiQuad; 4];

/// `P1..P4 = (1 : ±√a : ±√b : 0)` in the order `(+,+), (+,−), (−,+), (−,−)`.
pub fn points_at_infinity(curve: &CurveParams) -> [ProjPoint; 4] {
    let (sa, sb) = (curve.sqrt_a(), curve.sqrt_b());
    let point = |ya: MultiQuad, zb: MultiQuad| [MultiQuad::one(), ya, zb, MultiQuad::zero()];
    [
        point(sa.clone(), sb.clone()),
        point(sa.clone(), -sb),
        point(-sa, sb.clone()),
        point(-sa, -sb),
    ]
}

/// `(2^(2835 s + 3), 3 · 2^(1121 (s + H − 1) + 1))`: the bound on points from
/// non-degenerate unit solutions and the bound on the exceptional points.
pub fn compute_bounds(s: u64, class_number: u64) -> Result<(BigUint, BigUint)> {
    if s == 0 || class_number == 0 {
        return Err(Error::domain("s and H must be at least 1"));
    }
    let one = BigUint::one();
    let nondegenerate = &one << (2835 * s + 3);
    let exceptional = (&one << (1121 * (s + class_number - 1) + 1)) * 3u32;
    Ok((nondegenerate, exceptional))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac};

    fn curve() -> CurveParams {
        CurveParams::new(2, 3, 1, 1).unwrap()
    }

    fn sq(n: i64) -> MultiQuad {
        MultiQuad::sqrt(&BigInt::from(n)).unwrap()
    }

    fn pt(eps: i64, x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> QuadPoint {
        let c = |(u, v): (i64, i64)| QuadCoord::new(rat(u), rat(v));
        QuadPoint::new(eps, c(x), c(y), c(z)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_curve(2, 3, 1, 1).is_ok());
        assert!(matches!(
            validate_curve(1, 1, 1, 1),
            Err(Error::DegenerateCurve(Degeneracy::ProportionalEquations))
        ));
        assert!(matches!(
            validate_curve(0, 3, 1, 1),
            Err(Error::DegenerateCurve(Degeneracy::ZeroCoefficient))
        ));
    }

    #[test]
    fn membership() {
        let c = curve();
        assert!(on_curve(&c, &pt(1, (0, 0), (1, 0), (1, 0))));
        assert!(on_curve(&c, &pt(13, (2, 0), (3, 0), (0, 1))));
        assert!(!on_curve(&c, &pt(1, (1, 0), (1, 0), (1, 0))));
    }

    #[test]
    fn fgh_values() {
        let c = curve();
        let [f, g, h] = eval_fgh(&c, &pt(1, (0, 0), (1, 0), (1, 0))).unwrap();
        assert_eq!((f, g), (MultiQuad::one(), MultiQuad::one()));
        assert_eq!(h, sq(3) - sq(2));
        let p = pt(13, (2, 0), (3, 0), (0, 1));
        let [f, g, h] = eval_fgh(&c, &p).unwrap();
        assert_eq!(f, MultiQuad::from_int(3) + sq(2).scale(&rat(2)));
        assert_eq!(g, sq(13) + sq(3).scale(&rat(2)));
        assert_eq!(h, sq(3).scale(&rat(3)) - sq(26));
        let [x, y, _] = p.coords_mq();
        assert_eq!(f * (y - c.sqrt_a() * &x), MultiQuad::one());
        assert!(matches!(eval_fgh(&c, &pt(1, (1, 0), (1, 0), (1, 0))), Err(Error::OffCurve)));
    }

    #[test]
    fn symmetric_invariants() {
        let c = curve();
        let diag = sym_invariants(&c, &pt(1, (0, 0), (1, 0), (1, 0))).unwrap();
        assert_eq!((diag.ff.clone(), diag.gg.clone()), (MultiQuad::one(), MultiQuad::one()));
        let five_2r6 = MultiQuad::from_int(5) + sq(6).scale(&rat(2));
        assert_eq!(diag.hh, MultiQuad::from_int(5) - sq(6).scale(&rat(2)));
        assert_eq!(diag.alpha, MultiQuad::one());
        assert_eq!(diag.beta, five_2r6);
        assert_eq!(diag.gamma, -&five_2r6);

        let s = sym_invariants(&c, &pt(13, (2, 0), (3, 0), (0, 1))).unwrap();
        assert_eq!(s.ff, MultiQuad::from_int(17) + sq(2).scale(&rat(12)));
        assert_eq!(s.gg, MultiQuad::from_int(-1));
        assert_eq!(s.hh, MultiQuad::one());
        assert_eq!(s.gamma, MultiQuad::one());

        let s = sym_invariants(&c, &pt(10, (0, 2), (9, 0), (11, 0))).unwrap();
        assert_eq!((s.ff, s.gg, s.alpha), (MultiQuad::one(), MultiQuad::one(), MultiQuad::one()));
    }

    #[test]
    fn identities_hold_and_fail_off_curve() {
        let c = curve();
        for p in [pt(1, (0, 0), (1, 0), (1, 0)), pt(13, (2, 0), (3, 0), (0, 1)), pt(33, (4, 0), (0, 1), (7, 0))] {
            let report = verify_identities(&c, &p).unwrap();
            assert!(report.all_passed(), "{p}: {:?}", report.failures());
            assert_eq!(report.checks.len(), 13);
        }
        let bad = pt(1, (1, 0), (1, 0), (1, 0));
        assert!(verify_identities(&c, &bad).is_err());
        assert!(!verify_identities_unchecked(&c, &bad).all_passed());
    }

    #[test]
    fn infinity() {
        let pts = points_at_infinity(&curve());
        assert_eq!(pts[0][1], sq(2));
        assert_eq!(pts[1][2], -sq(3));
        assert_eq!(pts[3][1], -sq(2));
        let square = CurveParams::new(4, 3, 1, 1).unwrap();
        let pts = points_at_infinity(&square);
        assert_eq!(pts[0][1], MultiQuad::from_int(2));
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert_ne!(pts[i], pts[j]);
            }
        }
        let ones = points_at_infinity(&CurveParams::new(1, 1, 1, 2).unwrap());
        assert_eq!(ones[3][1], MultiQuad::from_int(-1));
    }

    #[test]
    fn bounds() {
        let (n1, n2) = compute_bounds(1, 1).unwrap();
        assert_eq!(n1.bits(), 2839);
        assert_eq!(n1.to_string().len(), 855);
        assert_eq!(n2, BigUint::from(3u32) << 1122usize);
        assert_eq!(compute_bounds(2, 1).unwrap().0, BigUint::one() << 5673usize);
        assert!(compute_bounds(0, 1).is_err());
    }

    #[test]
    fn point_codec_and_canonical_form() {
        let p = QuadPoint::parse("13;2,0;3,0;0,-1").unwrap();
        assert_eq!(p.encode(), "13;2/1,0/1;3/1,0/1;0/1,-1/1");
        assert_eq!(p.canonical(), pt(13, (2, 0), (3, 0), (0, 1)));
        assert_eq!(p.pretty(), "(2, 3, -√13)");
        assert!(QuadPoint::parse("1;0,1;1,0;1,0").is_err());
        assert!(QuadPoint::parse("12;0,1;1,0;1,0").is_err());
        let half = QuadPoint::parse("5;1/2,1/2;0,0;0,0").unwrap();
        assert_eq!(half.x, QuadCoord::new(rat_frac(1, 2), rat_frac(1, 2)));
        assert!(!half.is_s_integral(&SPrimeSet::empty()));
        assert!(half.is_s_integral(&SPrimeSet::new([2]).unwrap()));
        let r = QuadPoint::parse("7;0,0;1,0;1,0").unwrap();
        assert!(r.is_rational());
    }

    #[test]
    fn admissibility() {
        let c = CurveParams::new(2, 3, 1, 5).unwrap();
        let s = SPrimeSet::new([5]).unwrap();
        assert_eq!(s.missing_for(&c), vec![7]);
        assert_eq!(s.s(), 2);
        assert!(SPrimeSet::new([4]).is_err());
    }
}
