mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use doublepell::curve::{compute_bounds, verify_identities_unchecked};
use doublepell::exactmath::rat;
use doublepell::pell::{pell_classes, pell_first, pell_iterate, PellProblem};
use doublepell::search::{
    box_search, enumerate_family_xy, enumerate_family_xz, enumerate_family_yz, family_sample, search_exceptional,
};
use doublepell::{CurveParams, Error, QuadPoint, SPrimeSet, SearchConfig, Verdict};
use num_bigint::BigInt;
use serde::Deserialize;

use report::{BoundsRecord, IdentitySummary, PellRecord, PointRecord, RunReport, Timing};

#[derive(Parser)]
#[command(name = "doublepell", version, about = "Quadratic integral points on y² = ax² + c, z² = bx² + d")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with defaults for any flag (keys as the long flag names).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Omit the timing field so reports compare byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve x² − D y² = N.
    #[command(allow_negative_numbers = true)]
    Pell {
        d: Option<i64>,
        n: Option<i64>,
        /// List solutions with |y| up to this bound.
        #[arg(long)]
        bound: Option<u64>,
        /// List the first this many nonnegative solutions instead.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Enumerate and classify the three infinite families.
    Families {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Exhaustive box scan plus the exceptional loci.
    Search {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        eps_bound: Option<u64>,
        #[arg(long)]
        coeff_bound: Option<u64>,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Classify one point given as "eps;ux,vx;uy,vy;uz,vz".
    Classify {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Run the identity suite over generated family points.
    Verify {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        count: Option<usize>,
        /// Corrupt one point to exercise the failure path.
        #[arg(long)]
        inject_failure: bool,
    },
    /// Exact counting bounds for given s and class number H.
    Bounds {
        #[arg(long)]
        s: Option<u64>,
        #[arg(long = "H")]
        h: Option<u64>,
    },
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
struct Config {
    format: Option<Format>,
    out: Option<PathBuf>,
    no_timing: Option<bool>,
    curve: Option<String>,
    count: Option<usize>,
    primes: Option<String>,
    eps_bound: Option<u64>,
    coeff_bound: Option<u64>,
    point: Option<String>,
    bound: Option<u64>,
    #[serde(rename = "D")]
    d: Option<i64>,
    #[serde(rename = "N")]
    n: Option<i64>,
    s: Option<u64>,
    #[serde(rename = "H")]
    h: Option<u64>,
    inject_failure: Option<bool>,
}

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_invariant() => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn required<T>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing required argument --{name}")))
}

fn parse_curve(text: &str) -> CliResult<CurveParams> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("curve must be four integers a,b,c,d, got {text:?}")))?;
    let [a, b, c, d] = parts[..] else {
        return Err(Error::Parse(format!("curve must be four integers a,b,c,d, got {text:?}")).into());
    };
    Ok(CurveParams::new(a, b, c, d)?)
}

fn parse_primes(text: Option<&str>) -> CliResult<SPrimeSet> {
    let Some(text) = text.filter(|t| !t.trim().is_empty()) else {
        return Ok(SPrimeSet::empty());
    };
    let primes: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("primes must be a comma-separated list, got {text:?}")))?;
    Ok(SPrimeSet::new(primes)?)
}

fn pair_strings((x, y): &(BigInt, BigInt)) -> [String; 2] {
    [x.to_string(), y.to_string()]
}

/// Runs the command; `Ok` carries the report and whether identity failures
/// were recorded.
fn execute(command: Command, cfg: Config) -> CliResult<(RunReport, bool)> {
    match command {
        Command::Pell { d, n, bound, count } => {
            let d = required(d.or(cfg.d), "D")?;
            let n = required(n.or(cfg.n), "N")?;
            let problem = PellProblem::new(d, n)?;
            let set = pell_classes(&problem)?;
            let mut report = RunReport::new("pell", None);
            report.param("D", d);
            report.param("N", n);
            let count = count.or(cfg.count);
            let solutions = match count {
                Some(k) => {
                    report.param("count", k);
                    pell_first(&set, k)
                }
                None => {
                    let bound = bound.or(cfg.bound).unwrap_or(1000);
                    report.param("bound", bound);
                    pell_iterate(&set, &BigInt::from(bound))
                        .into_iter()
                        .filter(|(x, y)| x.sign() != num_bigint::Sign::Minus && y.sign() != num_bigint::Sign::Minus)
                        .collect()
                }
            };
            report.pell = Some(PellRecord {
                d: d.to_string(),
                n: n.to_string(),
                fundamental: set.fundamental.as_ref().map(pair_strings),
                classes: set.class_reps.iter().map(pair_strings).collect(),
                finite_complete: set.finite_complete,
                notice: set.finite_complete.then(|| "finite solution set; enumeration is complete".to_string()),
                solutions: solutions.iter().map(pair_strings).collect(),
            });
            Ok((report, false))
        }
        Command::Families { curve, count, primes } => {
            let curve = parse_curve(&required(curve.or(cfg.curve), "curve")?)?;
            let primes_text = primes.or(cfg.primes);
            let primes = parse_primes(primes_text.as_deref())?;
            let count = count.or(cfg.count).unwrap_or(10);
            let search = SearchConfig::new(curve.clone(), primes.clone(), 1, 1, count)?;
            let mut report = RunReport::new("families", Some(&curve));
            report.param("count", count);
            report.param("primes", primes.primes().to_vec());
            let mut summary = IdentitySummary::default();
            type Enumerator = fn(&SearchConfig) -> doublepell::Result<Vec<QuadPoint>>;
            let families: [(Verdict, Enumerator); 3] = [
                (Verdict::FamilyXY, enumerate_family_xy),
                (Verdict::FamilyXZ, enumerate_family_xz),
                (Verdict::FamilyYZ, enumerate_family_yz),
            ];
            for (family, enumerate) in families {
                for p in enumerate(&search)? {
                    let record = PointRecord::new(&curve, &p, Some(family.as_str()), Some(family))?;
                    if !record.classification.supports(family) {
                        return Err(Error::invariant(format!(
                            "{p} from {family} classified as {}",
                            record.classification.verdict
                        ))
                        .into());
                    }
                    summary.add(&p.encode(), &record.identities);
                    report.results.push(record);
                }
            }
            let failed = summary.failures > 0;
            report.identity_summary = Some(summary);
            Ok((report, failed))
        }
        Command::Search { curve, eps_bound, coeff_bound, primes } => {
            let curve = parse_curve(&required(curve.or(cfg.curve), "curve")?)?;
            let primes = parse_primes(primes.or(cfg.primes).as_deref())?;
            let eps_bound = eps_bound.or(cfg.eps_bound).unwrap_or(15);
            let coeff_bound = coeff_bound.or(cfg.coeff_bound).unwrap_or(5);
            let search = SearchConfig::new(curve.clone(), primes.clone(), coeff_bound, eps_bound, 1)?;
            let mut report = RunReport::new("search", Some(&curve));
            report.param("eps-bound", eps_bound);
            report.param("coeff-bound", coeff_bound);
            report.param("primes", primes.primes().to_vec());
            let boxed = box_search(&search)?;
            let exceptional: Vec<QuadPoint> =
                search_exceptional(&search)?.into_iter().filter(|p| !boxed.contains(p)).collect();
            let mut summary = IdentitySummary::default();
            for (source, pts) in [("box", boxed), ("exceptional", exceptional)] {
                for p in pts {
                    let record = PointRecord::new(&curve, &p, Some(source), None)?;
                    summary.add(&p.encode(), &record.identities);
                    report.results.push(record);
                }
            }
            let failed = summary.failures > 0;
            report.identity_summary = Some(summary);
            Ok((report, failed))
        }
        Command::Classify { curve, point } => {
            let curve = parse_curve(&required(curve.or(cfg.curve), "curve")?)?;
            let text = required(point.or(cfg.point), "point")?;
            let p = QuadPoint::parse(&text)?;
            let mut report = RunReport::new("classify", Some(&curve));
            report.param("point", text);
            let record = PointRecord::new(&curve, &p, None, None)?;
            let mut summary = IdentitySummary::default();
            summary.add(&p.encode(), &record.identities);
            let failed = summary.failures > 0;
            report.results.push(record);
            report.identity_summary = Some(summary);
            Ok((report, failed))
        }
        Command::Verify { curve, count, inject_failure } => {
            let curve = parse_curve(&required(curve.or(cfg.curve), "curve")?)?;
            let count = count.or(cfg.count).unwrap_or(50);
            let inject = inject_failure || cfg.inject_failure.unwrap_or(false);
            let points = family_sample(&curve, &SPrimeSet::empty(), count)?;
            let mut report = RunReport::new("verify", Some(&curve));
            report.param("count", count);
            report.param("inject-failure", inject);
            let mut summary = IdentitySummary::default();
            for (i, p) in points.iter().enumerate() {
                let record = PointRecord::new(&curve, p, None, None)?;
                if inject && i == 0 {
                    // Shift y off the curve and run the identities regardless.
                    let mut bad = p.clone();
                    bad.y.u += rat(1);
                    summary.add(&bad.encode(), &verify_identities_unchecked(&curve, &bad));
                } else {
                    summary.add(&p.encode(), &record.identities);
                }
            }
            let failed = summary.failures > 0;
            report.identity_summary = Some(summary);
            Ok((report, failed))
        }
        Command::Bounds { s, h } => {
            let s = required(s.or(cfg.s), "s")?;
            let h = h.or(cfg.h).unwrap_or(1);
            let (n1, n2) = compute_bounds(s, h)?;
            let mut report = RunReport::new("bounds", None);
            report.param("s", s);
            report.param("H", h);
            let (n1, n2) = (n1.to_string(), n2.to_string());
            report.bounds = Some(BoundsRecord { s, h, n1_digits: n1.len(), n2_digits: n2.len(), n1, n2 });
            Ok((report, false))
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let start = Instant::now();
    let cfg: Config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?
        }
        None => Config::default(),
    };
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let out_path = cli.out.clone().or(cfg.out.clone());
    let no_timing = cli.no_timing || cfg.no_timing.unwrap_or(false);
    let (mut report, failed) = execute(cli.command, cfg)?;
    if !no_timing {
        report.timing = Some(Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    let mut sink: Box<dyn Write> = match &out_path {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => report.write_json(&mut sink)?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush()?;
    if let Some(summary) = report.identity_summary.as_ref().filter(|_| failed) {
        for f in &summary.failed_checks {
            eprintln!("identity failure: {f}");
        }
    }
    Ok(failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(e) => {
            let message = match &e {
                CliError::Core(err) => err.to_string(),
                CliError::Usage(msg) => msg.clone(),
            };
            eprintln!("error: {message}");
            ExitCode::from(e.exit_code())
        }
    }
}
