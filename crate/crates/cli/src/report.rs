use std::collections::BTreeMap;
use std::io::Write;

use doublepell::classify::family_image;
use doublepell::curve::{on_curve, sym_invariants, verify_identities, IdentityReport};
use doublepell::exactmath::format_rational;
use doublepell::{classify, Classification, CurveParams, Error, MultiQuad, QuadPoint, Result, Verdict};
use serde::Serialize;
use serde_json::Value;

/// A MultiQuad on the wire: `(radicand, "p/q")` pairs sorted by radicand.
pub type WireQuad = Vec<(String, String)>;

fn wire(m: &MultiQuad) -> WireQuad {
    m.to_pairs().into_iter().map(|(r, c)| (r.to_string(), c)).collect()
}

#[derive(Serialize)]
pub struct Coordinates {
    pub x: [String; 2],
    pub y: [String; 2],
    pub z: [String; 2],
}

#[derive(Serialize)]
pub struct Invariants {
    pub ff: WireQuad,
    pub gg: WireQuad,
    pub hh: WireQuad,
    pub alpha: WireQuad,
    pub beta: WireQuad,
    pub gamma: WireQuad,
}

#[derive(Serialize)]
pub struct PointRecord {
    pub source: Option<String>,
    pub eps: String,
    pub point: String,
    pub coordinates: Coordinates,
    pub classification: Classification,
    pub family_image: Option<[String; 2]>,
    pub invariants: Invariants,
    #[serde(skip)]
    pub identities: IdentityReport,
    #[serde(skip)]
    display: [String; 3],
}

impl PointRecord {
    /// Classifies and verifies `p`. `family` names the enumerator that
    /// produced it, if any, and selects the image map for rational points.
    pub fn new(curve: &CurveParams, p: &QuadPoint, source: Option<&str>, family: Option<Verdict>) -> Result<Self> {
        if !on_curve(curve, p) {
            return Err(Error::OffCurve);
        }
        let classification = classify(curve, p)?;
        let identities = verify_identities(curve, p)?;
        let sym = sym_invariants(curve, p)?;
        let image_map = if classification.verdict.is_family() { Some(classification.verdict) } else { family };
        let family_image = image_map
            .and_then(|v| family_image(curve, p, v).ok())
            .map(|(s, t)| [format_rational(&s), format_rational(&t)]);
        let pair = |c: &doublepell::QuadCoord| [format_rational(&c.u), format_rational(&c.v)];
        Ok(PointRecord {
            source: source.map(str::to_string),
            eps: p.eps().to_string(),
            point: p.pretty(),
            coordinates: Coordinates { x: pair(&p.x), y: pair(&p.y), z: pair(&p.z) },
            classification,
            family_image,
            display: [sym.alpha.to_string(), sym.beta.to_string(), sym.gamma.to_string()],
            invariants: Invariants {
                ff: wire(&sym.ff),
                gg: wire(&sym.gg),
                hh: wire(&sym.hh),
                alpha: wire(&sym.alpha),
                beta: wire(&sym.beta),
                gamma: wire(&sym.gamma),
            },
            identities,
        })
    }
}

#[derive(Default, Serialize)]
pub struct IdentitySummary {
    pub points: usize,
    pub checks: usize,
    pub passed: usize,
    pub failures: usize,
    pub failed_checks: Vec<String>,
}

impl IdentitySummary {
    pub fn add(&mut self, label: &str, report: &IdentityReport) {
        self.points += 1;
        self.checks += report.checks.len();
        let failed = report.failures();
        self.failures += failed.len();
        self.passed += report.checks.len() - failed.len();
        self.failed_checks.extend(failed.iter().map(|f| format!("{label}: {f}")));
    }
}

#[derive(Serialize)]
pub struct PellRecord {
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "N")]
    pub n: String,
    pub fundamental: Option<[String; 2]>,
    pub classes: Vec<[String; 2]>,
    pub finite_complete: bool,
    pub notice: Option<String>,
    pub solutions: Vec<[String; 2]>,
}

#[derive(Serialize)]
pub struct BoundsRecord {
    pub s: u64,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "N1")]
    pub n1: String,
    #[serde(rename = "N2")]
    pub n2: String,
    pub n1_digits: usize,
    pub n2_digits: usize,
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub curve: Option<String>,
    pub parameters: BTreeMap<String, Value>,
    pub results: Vec<PointRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pell: Option<PellRecord>,
    pub identity_summary: Option<IdentitySummary>,
    pub bounds: Option<BoundsRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn new(command: &'static str, curve: Option<&CurveParams>) -> Self {
        RunReport {
            command,
            curve: curve.map(|c| c.to_string()),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            pell: None,
            identity_summary: None,
            bounds: None,
            timing: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// One row per point; commands without points get their own table.
    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(pell) = &self.pell {
            w.write_record(["kind", "x", "y"])?;
            for (kind, rows) in [
                ("fundamental", pell.fundamental.iter().cloned().collect::<Vec<_>>()),
                ("class", pell.classes.clone()),
                ("solution", pell.solutions.clone()),
            ] {
                for [x, y] in rows {
                    w.write_record([kind, &x, &y])?;
                }
            }
        } else if let Some(b) = &self.bounds {
            w.write_record(["s", "H", "N1", "N2"])?;
            w.write_record([b.s.to_string(), b.h.to_string(), b.n1.clone(), b.n2.clone()])?;
        } else if self.command == "verify" {
            let s = self.identity_summary.as_ref().expect("verify always summarizes");
            w.write_record(["curve", "points", "checks", "passed", "failures"])?;
            w.write_record([
                self.curve.clone().unwrap_or_default(),
                s.points.to_string(),
                s.checks.to_string(),
                s.passed.to_string(),
                s.failures.to_string(),
            ])?;
        } else {
            w.write_record([
                "source", "eps", "x_u", "x_v", "y_u", "y_v", "z_u", "z_v", "verdict", "flags", "sign_pattern",
                "loci", "multi_degenerate", "image_1", "image_2", "alpha", "beta", "gamma",
            ])?;
            for r in &self.results {
                let c = &r.classification;
                let join = |items: Vec<&str>| items.join("|");
                let [i1, i2] = r.family_image.clone().unwrap_or_default();
                let [x, y, z] = [&r.coordinates.x, &r.coordinates.y, &r.coordinates.z];
                w.write_record([
                    r.source.clone().unwrap_or_default(),
                    r.eps.clone(),
                    x[0].clone(),
                    x[1].clone(),
                    y[0].clone(),
                    y[1].clone(),
                    z[0].clone(),
                    z[1].clone(),
                    c.verdict.to_string(),
                    join(c.flags.iter().map(|f| f.as_str()).collect()),
                    c.sign_pattern.to_string(),
                    join(c.loci.iter().map(|l| l.as_str()).collect()),
                    c.multi_degenerate.to_string(),
                    i1,
                    i2,
                    r.display[0].clone(),
                    r.display[1].clone(),
                    r.display[2].clone(),
                ])?;
            }
        }
        w.flush()
    }
}
