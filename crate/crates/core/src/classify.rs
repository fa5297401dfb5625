//! Stratification of quadratic points by the degenerate loci of
//! `α + β + γ = 1`.
//!
//! A solution is degenerate when one of `α, β, γ` equals 1. Each such locus
//! splits in two according to the signs of `ff′, gg′, hh′`:
//!
//! | locus  | condition                    | coordinates vs conjugate | verdict       |
//! |--------|------------------------------|--------------------------|---------------|
//! | `W_x⁻` | `ff′ = c,  gg′ = d`          | `x′=−x, y′=y, z′=z`      | `Family_yz`   |
//! | `W_x⁺` | `ff′ = −c, gg′ = −d`         | `x′=x, y′=−y, z′=−z`     | `Exceptional_x` |
//! | `W_y⁻` | `ff′ = −c, hh′ = ad−bc`      | `x′=x, y′=−y, z′=z`      | `Family_xz`   |
//! | `W_y⁺` | `ff′ = c,  hh′ = bc−ad`      | `x′=−x, y′=y, z′=−z`     | `Exceptional_y` |
//! | `W_z⁻` | `gg′ = −d, hh′ = bc−ad`      | `x′=x, y′=y, z′=−z`      | `Family_xy`   |
//! | `W_z⁺` | `gg′ = d,  hh′ = ad−bc`      | `x′=−x, y′=−y, z′=z`     | `Exceptional_z` |
//!
//! The classifier computes the loci both from the invariant values and
//! from the coordinate signs and refuses to answer if the two disagree.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::curve::{eval_fgh, on_curve, sym_invariants, CurveParams, QuadCoord, QuadPoint, SPrimeSet, SymPoint};
use crate::error::{Error, Result};
use crate::exactmath::{prime_support, MultiQuad, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    RationalPoint,
    KRational,
    #[serde(rename = "Family_xy")]
    FamilyXY,
    #[serde(rename = "Family_xz")]
    FamilyXZ,
    #[serde(rename = "Family_yz")]
    FamilyYZ,
    #[serde(rename = "Exceptional_x")]
    ExceptionalX,
    #[serde(rename = "Exceptional_y")]
    ExceptionalY,
    #[serde(rename = "Exceptional_z")]
    ExceptionalZ,
    Sporadic,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::RationalPoint => "RationalPoint",
            Verdict::KRational => "KRational",
            Verdict::FamilyXY => "Family_xy",
            Verdict::FamilyXZ => "Family_xz",
            Verdict::FamilyYZ => "Family_yz",
            Verdict::ExceptionalX => "Exceptional_x",
            Verdict::ExceptionalY => "Exceptional_y",
            Verdict::ExceptionalZ => "Exceptional_z",
            Verdict::Sporadic => "Sporadic",
        }
    }

    pub fn is_family(self) -> bool {
        matches!(self, Verdict::FamilyXY | Verdict::FamilyXZ | Verdict::FamilyYZ)
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Verdict::ExceptionalX | Verdict::ExceptionalY | Verdict::ExceptionalZ)
    }

    /// The locus whose points receive this verdict, for the six degenerate
    /// verdicts.
    pub fn locus(self) -> Option<Locus> {
        Locus::ALL.into_iter().find(|l| l.verdict() == self)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Alpha,
    Beta,
    Gamma,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Alpha => "alpha=1",
            Flag::Beta => "beta=1",
            Flag::Gamma => "gamma=1",
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The six components `W_{x,y,z}^±` of the degenerate locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Locus {
    XMinus,
    XPlus,
    YMinus,
    YPlus,
    ZMinus,
    ZPlus,
}

impl Locus {
    pub const ALL: [Locus; 6] = [
        Locus::XMinus,
        Locus::XPlus,
        Locus::YMinus,
        Locus::YPlus,
        Locus::ZMinus,
        Locus::ZPlus,
    ];

    /// Verdict precedence when several loci contain the same pair: the
    /// families first, each group in α, β, γ order.
    const PRECEDENCE: [Locus; 6] = [
        Locus::XMinus,
        Locus::YMinus,
        Locus::ZMinus,
        Locus::XPlus,
        Locus::YPlus,
        Locus::ZPlus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Locus::XMinus => "W_x^-",
            Locus::XPlus => "W_x^+",
            Locus::YMinus => "W_y^-",
            Locus::YPlus => "W_y^+",
            Locus::ZMinus => "W_z^-",
            Locus::ZPlus => "W_z^+",
        }
    }

    pub fn flag(self) -> Flag {
        match self {
            Locus::XMinus | Locus::XPlus => Flag::Alpha,
            Locus::YMinus | Locus::YPlus => Flag::Beta,
            Locus::ZMinus | Locus::ZPlus => Flag::Gamma,
        }
    }

    pub fn verdict(self) -> Verdict {
        match self {
            Locus::XMinus => Verdict::FamilyYZ,
            Locus::YMinus => Verdict::FamilyXZ,
            Locus::ZMinus => Verdict::FamilyXY,
            Locus::XPlus => Verdict::ExceptionalX,
            Locus::YPlus => Verdict::ExceptionalY,
            Locus::ZPlus => Verdict::ExceptionalZ,
        }
    }

    /// For each of `x, y, z`: whether the locus has it fixed (`t′ = t`,
    /// `true`) or negated (`t′ = −t`, `false`) by conjugation.
    pub fn fixed_coordinates(self) -> [bool; 3] {
        match self {
            Locus::XMinus => [false, true, true],
            Locus::XPlus => [true, false, false],
            Locus::YMinus => [true, false, true],
            Locus::YPlus => [false, true, false],
            Locus::ZMinus => [true, true, false],
            Locus::ZPlus => [false, false, true],
        }
    }

    /// Exact test on the conjugate products.
    fn holds_for(self, curve: &CurveParams, sym: &SymPoint) -> bool {
        let c = MultiQuad::from_int(curve.c());
        let d = MultiQuad::from_int(curve.d());
        let disc = MultiQuad::from_int(curve.disc());
        match self {
            Locus::XMinus => sym.ff == c && sym.gg == d,
            Locus::XPlus => sym.ff == -&c && sym.gg == -&d,
            Locus::YMinus => sym.ff == -&c && sym.hh == -&disc,
            Locus::YPlus => sym.ff == c && sym.hh == disc,
            Locus::ZMinus => sym.gg == -&d && sym.hh == disc,
            Locus::ZPlus => sym.gg == d && sym.hh == -&disc,
        }
    }
}

impl Serialize for Locus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// How a coordinate `u + v√ε` relates to its conjugate `u − v√ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordSign {
    /// `v = 0`, `u ≠ 0`: fixed.
    Plus,
    /// `u = 0`, `v ≠ 0`: negated.
    Minus,
    /// `u = v = 0`: both fixed and negated.
    Zero,
    /// `u, v ≠ 0`: neither.
    Mixed,
}

impl CoordSign {
    pub fn of(c: &QuadCoord) -> Self {
        match (c.u.is_zero(), c.v.is_zero()) {
            (true, true) => CoordSign::Zero,
            (false, true) => CoordSign::Plus,
            (true, false) => CoordSign::Minus,
            (false, false) => CoordSign::Mixed,
        }
    }

    fn allows(self, fixed: bool) -> bool {
        match self {
            CoordSign::Zero => true,
            CoordSign::Plus => fixed,
            CoordSign::Minus => !fixed,
            CoordSign::Mixed => false,
        }
    }

    fn symbol(self) -> char {
        match self {
            CoordSign::Plus => '+',
            CoordSign::Minus => '-',
            CoordSign::Zero => '0',
            CoordSign::Mixed => '*',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern(pub [CoordSign; 3]);

impl SignPattern {
    pub fn of(p: &QuadPoint) -> Self {
        let [x, y, z] = p.coords();
        SignPattern([CoordSign::of(x), CoordSign::of(y), CoordSign::of(z)])
    }

    /// Loci `V_{x,y,z}^±` whose coordinate relations the pair satisfies.
    pub fn loci(&self) -> Vec<Locus> {
        Locus::ALL
            .into_iter()
            .filter(|l| {
                let fixed = l.fixed_coordinates();
                (0..3).all(|i| self.0[i].allows(fixed[i]))
            })
            .collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub flags: Vec<Flag>,
    pub sign_pattern: SignPattern,
    pub loci: Vec<Locus>,
    pub multi_degenerate: bool,
}

impl Classification {
    /// True if the point may legitimately be emitted by the enumerator of
    /// `family`: it lies on that family's locus or is rational over `k`.
    pub fn supports(&self, family: Verdict) -> bool {
        matches!(self.verdict, Verdict::RationalPoint | Verdict::KRational)
            || self.verdict == family
            || family.locus().is_some_and(|l| self.loci.contains(&l))
    }
}

pub fn conjugate_point(p: &QuadPoint) -> QuadPoint {
    p.conjugate()
}

/// Which of `α, β, γ` equal 1, exactly.
pub fn detect_degenerate(sym: &SymPoint) -> Vec<Flag> {
    [(Flag::Alpha, &sym.alpha), (Flag::Beta, &sym.beta), (Flag::Gamma, &sym.gamma)]
        .into_iter()
        .filter(|(_, v)| v.is_one())
        .map(|(f, _)| f)
        .collect()
}

pub fn loci_from_invariants(curve: &CurveParams, sym: &SymPoint) -> Vec<Locus> {
    Locus::ALL.into_iter().filter(|l| l.holds_for(curve, sym)).collect()
}

pub fn classify(curve: &CurveParams, p: &QuadPoint) -> Result<Classification> {
    if !on_curve(curve, p) {
        return Err(Error::OffCurve);
    }
    let sym = sym_invariants(curve, p)?;
    let flags = detect_degenerate(&sym);
    let loci = loci_from_invariants(curve, &sym);
    let sign_pattern = SignPattern::of(p);
    let by_signs = sign_pattern.loci();
    if loci != by_signs {
        return Err(Error::invariant(format!(
            "loci from invariants {loci:?} disagree with sign pattern {sign_pattern} ({by_signs:?}) at {p}"
        )));
    }
    let mut implied: Vec<Flag> = loci.iter().map(|l| l.flag()).collect();
    implied.dedup();
    if implied != flags {
        return Err(Error::invariant(format!("flags {flags:?} do not match loci {loci:?} at {p}")));
    }
    if flags.len() == 2 {
        let third = [&sym.alpha, &sym.beta, &sym.gamma]
            .into_iter()
            .zip([Flag::Alpha, Flag::Beta, Flag::Gamma])
            .find(|(_, f)| !flags.contains(f))
            .map(|(v, _)| v.clone());
        if third != Some(MultiQuad::from_int(-1)) {
            return Err(Error::invariant(format!("two flags set but third value is not -1 at {p}")));
        }
    }
    let verdict = if p.is_rational() {
        Verdict::RationalPoint
    } else if curve.square_classes().contains(p.eps()) {
        Verdict::KRational
    } else {
        Locus::PRECEDENCE
            .into_iter()
            .find(|l| loci.contains(l))
            .map_or(Verdict::Sporadic, Locus::verdict)
    };
    Ok(Classification {
        verdict,
        multi_degenerate: flags.len() > 1,
        flags,
        sign_pattern,
        loci,
    })
}

/// The rational image of a family point under its degree-two map:
/// `(x, y)`, `(x, z)` or `(y, z)`.
pub fn family_image(curve: &CurveParams, p: &QuadPoint, verdict: Verdict) -> Result<(Rational, Rational)> {
    let rational = |c: &QuadCoord| -> Result<Rational> {
        if c.is_rational() {
            Ok(c.u.clone())
        } else {
            Err(Error::domain(format!("{p} is not on the {verdict} locus")))
        }
    };
    let int = |n: i64| Rational::from_integer(BigInt::from(n));
    let (first, second, ok) = match verdict {
        Verdict::FamilyXY => {
            let (x, y) = (rational(&p.x)?, rational(&p.y)?);
            let ok = &y * &y == int(curve.a()) * &x * &x + int(curve.c());
            (x, y, ok)
        }
        Verdict::FamilyXZ => {
            let (x, z) = (rational(&p.x)?, rational(&p.z)?);
            let ok = &z * &z == int(curve.b()) * &x * &x + int(curve.d());
            (x, z, ok)
        }
        Verdict::FamilyYZ => {
            let (y, z) = (rational(&p.y)?, rational(&p.z)?);
            let ok = int(curve.b()) * &y * &y - int(curve.a()) * &z * &z == Rational::from_integer(curve.disc());
            (y, z, ok)
        }
        other => return Err(Error::domain(format!("{other} is not a family verdict"))),
    };
    if !ok {
        return Err(Error::invariant(format!("family image of {p} is off its conic")));
    }
    Ok((first, second))
}

/// All squarefree `ε` supported on `primes ∪ {−1}` outside the square
/// classes of `1, a, b, ab`, ordered by `|ε|` then sign.
fn eps_from_support(curve: &CurveParams, primes: &[BigInt]) -> Vec<BigInt> {
    let mut products = vec![BigInt::one()];
    for p in primes {
        let mut more: Vec<BigInt> = products.iter().map(|m| m * p).collect();
        products.append(&mut more);
    }
    let excluded = curve.square_classes();
    let mut out: Vec<BigInt> = products
        .into_iter()
        .flat_map(|m| [m.clone(), -m])
        .filter(|e| !e.is_one() && !excluded.contains(e))
        .collect();
    out.sort_by(|x, y| x.magnitude().cmp(y.magnitude()).then(x.cmp(y)));
    out.dedup();
    out
}

fn support_with_s(n: &BigInt, s: &SPrimeSet) -> Result<Vec<BigInt>> {
    let mut primes: Vec<BigInt> = prime_support(n)?.into_iter().map(BigInt::from).collect();
    primes.extend(s.primes().iter().map(|&p| BigInt::from(p)));
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// Candidate radicands for the exceptional loci: squarefree `ε` dividing
/// `bc − ad` up to `S`-units and sign.
pub fn exceptional_eps_candidates(curve: &CurveParams, s: &SPrimeSet) -> Result<Vec<BigInt>> {
    Ok(eps_from_support(curve, &support_with_s(&curve.disc(), s)?))
}

/// Candidates for one exceptional shape. On `W_x⁺`, `ε(b u² − a v²) = bc − ad`
/// so `ε | bc − ad`; on `W_y⁺` the `z` equation forces `ε | d`; on `W_z⁺`
/// the `y` equation forces `ε | c` (each up to `S`-units).
pub fn exceptional_shape_candidates(curve: &CurveParams, s: &SPrimeSet, locus: Locus) -> Result<Vec<BigInt>> {
    let n = match locus {
        Locus::XPlus => curve.disc(),
        Locus::YPlus => BigInt::from(curve.d()),
        Locus::ZPlus => BigInt::from(curve.c()),
        other => return Err(Error::domain(format!("{} is not an exceptional locus", other.as_str()))),
    };
    Ok(eps_from_support(curve, &support_with_s(&n, s)?))
}

/// The pair `(√b·f/h, −√a·g/h)`, which sums to 1 at every affine point.
pub fn two_term_units(curve: &CurveParams, p: &QuadPoint) -> Result<(MultiQuad, MultiQuad)> {
    let [f, g, h] = eval_fgh(curve, p)?;
    let h_inv = h.inv()?;
    Ok((curve.sqrt_b() * &f * &h_inv, -(curve.sqrt_a() * &g * &h_inv)))
}

pub fn two_term_unit_check(curve: &CurveParams, p: &QuadPoint) -> Result<bool> {
    let (u1, u2) = two_term_units(curve, p)?;
    Ok((u1 + u2).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn curve() -> CurveParams {
        CurveParams::new(2, 3, 1, 1).unwrap()
    }

    fn pt(eps: i64, x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> QuadPoint {
        let c = |(u, v): (i64, i64)| QuadCoord::new(rat(u), rat(v));
        QuadPoint::new(eps, c(x), c(y), c(z)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&n| BigInt::from(n)).collect()
    }

    #[test]
    fn conjugation() {
        let p = pt(13, (2, 0), (3, 0), (0, 1));
        assert_eq!(conjugate_point(&p), pt(13, (2, 0), (3, 0), (0, -1)));
        let r = pt(1, (0, 0), (1, 0), (1, 0));
        assert_eq!(conjugate_point(&r), r);
        assert_eq!(conjugate_point(&pt(10, (0, 2), (9, 0), (11, 0))), pt(10, (0, -2), (9, 0), (11, 0)));
        assert_eq!(conjugate_point(&conjugate_point(&p)), p);
    }

    #[test]
    fn degeneracy_flags() {
        let c = curve();
        let flags = |p: QuadPoint| detect_degenerate(&sym_invariants(&c, &p).unwrap());
        assert_eq!(flags(pt(13, (2, 0), (3, 0), (0, 1))), vec![Flag::Gamma]);
        assert_eq!(flags(pt(10, (0, 2), (9, 0), (11, 0))), vec![Flag::Alpha]);
        assert_eq!(flags(pt(1, (0, 0), (1, 0), (1, 0))), vec![Flag::Alpha]);
    }

    #[test]
    fn verdicts() {
        let c = curve();
        let v = |p: QuadPoint| classify(&c, &p).unwrap();
        let xy = v(pt(13, (2, 0), (3, 0), (0, 1)));
        assert_eq!(xy.verdict, Verdict::FamilyXY);
        assert_eq!(xy.sign_pattern.to_string(), "++-");
        assert_eq!(xy.loci, vec![Locus::ZMinus]);
        assert_eq!(v(pt(33, (4, 0), (0, 1), (7, 0))).verdict, Verdict::FamilyXZ);
        assert_eq!(v(pt(10, (0, 2), (9, 0), (11, 0))).verdict, Verdict::FamilyYZ);
        assert_eq!(v(pt(3, (1, 0), (0, 1), (2, 0))).verdict, Verdict::KRational);
        assert_eq!(v(pt(1, (0, 0), (1, 0), (1, 0))).verdict, Verdict::RationalPoint);
        assert!(matches!(classify(&c, &pt(1, (1, 0), (1, 0), (1, 0))), Err(Error::OffCurve)));
    }

    #[test]
    fn zero_coordinate_lies_on_two_loci() {
        // y² = 2x² + 1, z² = 3x² + 5 at x = 0: (0, 1, √5).
        let c = CurveParams::new(2, 3, 1, 5).unwrap();
        let cls = classify(&c, &pt(5, (0, 0), (1, 0), (0, 1))).unwrap();
        assert_eq!(cls.loci, vec![Locus::YPlus, Locus::ZMinus]);
        assert_eq!(cls.flags, vec![Flag::Beta, Flag::Gamma]);
        assert!(cls.multi_degenerate);
        assert_eq!(cls.verdict, Verdict::FamilyXY);
        assert!(cls.supports(Verdict::FamilyXY));
    }

    #[test]
    fn images() {
        let c = curve();
        let p = pt(13, (2, 0), (3, 0), (0, 1));
        assert_eq!(family_image(&c, &p, Verdict::FamilyXY).unwrap(), (rat(2), rat(3)));
        let p = pt(33, (4, 0), (0, 1), (7, 0));
        assert_eq!(family_image(&c, &p, Verdict::FamilyXZ).unwrap(), (rat(4), rat(7)));
        let p = pt(10, (0, 2), (9, 0), (11, 0));
        assert_eq!(family_image(&c, &p, Verdict::FamilyYZ).unwrap(), (rat(9), rat(11)));
        assert!(family_image(&c, &p, Verdict::Sporadic).is_err());
        assert!(family_image(&c, &p, Verdict::FamilyXY).is_err());
    }

    #[test]
    fn eps_candidates() {
        let empty = SPrimeSet::empty();
        assert_eq!(exceptional_eps_candidates(&curve(), &empty).unwrap(), ints(&[-1]));
        let c = CurveParams::new(2, 3, 1, 5).unwrap();
        assert_eq!(exceptional_eps_candidates(&c, &empty).unwrap(), ints(&[-1, -7, 7]));
        let two = SPrimeSet::new([2]).unwrap();
        assert_eq!(exceptional_eps_candidates(&curve(), &two).unwrap(), ints(&[-1, -2]));
        assert_eq!(exceptional_shape_candidates(&c, &empty, Locus::YPlus).unwrap(), ints(&[-1, -5, 5]));
        assert_eq!(exceptional_shape_candidates(&c, &empty, Locus::ZPlus).unwrap(), ints(&[-1]));
        assert!(exceptional_shape_candidates(&c, &empty, Locus::XMinus).is_err());
    }

    #[test]
    fn two_term() {
        let c = curve();
        assert!(two_term_unit_check(&c, &pt(1, (0, 0), (1, 0), (1, 0))).unwrap());
        assert!(two_term_unit_check(&c, &pt(13, (2, 0), (3, 0), (0, 1))).unwrap());
        let (u1, u2) = two_term_units(&c, &pt(1, (0, 0), (1, 0), (1, 0))).unwrap();
        // √3/(√3−√2) = 3 + √6
        let s6 = MultiQuad::sqrt(&BigInt::from(6)).unwrap();
        assert_eq!(u1, MultiQuad::from_int(3) + s6.clone());
        assert_eq!(u2, MultiQuad::from_int(-2) - s6);
    }
}
