//! Command-line front end: iterated Tor towers, higher THH series with
//! residue-field coefficients, ramification reports, and the engine-vs-
//! closed-form verifier.
//!
//! Exit codes: 0 success, 1 verifier divergence, 2 invalid input,
//! 3 resource limit, 4 internal inconsistency.

mod polyparse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bartor::bar::Limits;
use bartor::error::Error;
use bartor::oracle::OracleFault;
use bartor::thh::{ramification, LocalKind, RamificationReport, Session, ThhAnswer};
use bartor::tower::{run_tower, run_tower_detailed, TowerSpec, TowerStart};
use bartor::verify::{self, VerifyConfig};

use report::{csv_field, dims_line, series_value, Format, Report};

#[derive(Parser)]
#[command(name = "bartor", version, about = "Iterated Tor towers and higher THH series over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the report to this path (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Per-bidegree word budget; exceeding it is an error, not a truncation.
    #[arg(long, global = true)]
    max_words: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run an iterated Tor tower and print every stage's series.
    Tower(TowerArgs),
    /// Higher THH series of Z or of a p-completed number ring.
    Thh(ThhArgs),
    /// Factor a monic integer polynomial mod p and report ramification.
    Ramify(RamifyArgs),
    /// Compare the homology engine against the closed-form recursion.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TowerArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u32,
    /// Starting algebra: poly:<d> or ext:<d>.
    #[arg(long)]
    start: String,
    /// Number of Tor steps to take.
    #[arg(long, default_value_t = 1)]
    iterations: usize,
    /// Largest total degree to track.
    #[arg(long)]
    cap: usize,
    /// Also report (s, t)-bidegree dimensions for each computed stage.
    #[arg(long)]
    bidims: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    /// The integers.
    Z,
    /// A p-completed number ring, described by --ramified or --poly.
    Local,
}

#[derive(Args)]
struct ThhArgs {
    /// Level of the theory (n >= 1).
    #[arg(long)]
    n: u32,
    /// Field characteristic.
    #[arg(long)]
    p: u32,
    /// Largest total degree to track.
    #[arg(long)]
    cap: usize,
    /// Base ring.
    #[arg(long, value_enum, default_value_t = Ring::Z)]
    ring: Ring,
    /// The local ring is ramified (with --ring local).
    #[arg(long)]
    ramified: bool,
    /// Monic defining polynomial; its factorization mod p decides the
    /// local behaviour (with --ring local).
    #[arg(long)]
    poly: Option<String>,
    /// Which irreducible factor's prime to use (0-based, sorted order).
    #[arg(long)]
    prime_index: Option<usize>,
    /// Residue field size, a power of p (default p; derived from the
    /// factor when --poly is given).
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args)]
struct RamifyArgs {
    /// Monic integer polynomial in x, e.g. "x^2 - 2".
    #[arg(long)]
    poly: String,
    /// The prime to reduce at.
    #[arg(long)]
    p: u32,
    /// Report only this factor (0-based, sorted order).
    #[arg(long)]
    prime_index: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Primes to scan.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
    primes: Vec<u32>,
    /// Tor steps per tower.
    #[arg(long, default_value_t = 3)]
    iterations: usize,
    /// Largest total degree to compare.
    #[arg(long, default_value_t = 24)]
    cap: usize,
    /// Re-check multiplication-table invariants on one sampled tower per
    /// prime after the scan.
    #[arg(long)]
    check_invariants: bool,
    /// Seed for the invariant spot-check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Deliberately mis-apply the polynomial suspension rule; the scan
    /// must then fail. Testing aid.
    #[arg(long, hide = true)]
    perturb_oracle: bool,
}

enum Failure {
    Args(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Args(_) | Failure::Io(_) => 2,
            Failure::Lib(e) => match e {
                Error::ResourceLimit { .. } => 3,
                Error::Internal(_)
                | Error::Untracked { .. }
                | Error::SubspaceNotContained { .. }
                | Error::ModulusMismatch { .. }
                | Error::LengthMismatch { .. }
                | Error::CapMismatch { .. } => 4,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Args(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = match cli.max_words {
        Some(n) => Limits { max_words_per_bidegree: n, ..Limits::default() },
        None => Limits::default(),
    };
    let (report, code) = match &cli.command {
        Command::Tower(args) => (cmd_tower(args, limits)?, 0),
        Command::Thh(args) => (cmd_thh(args, limits)?, 0),
        Command::Ramify(args) => (cmd_ramify(args)?, 0),
        Command::Verify(args) => cmd_verify(args, limits)?,
    };
    report.emit(cli.format, cli.out.as_deref())?;
    Ok(code)
}

fn parse_start(s: &str) -> Result<TowerStart, Failure> {
    let bad = || {
        Failure::Args(format!(
            "--start must be poly:<degree> or ext:<degree>, got {s:?}"
        ))
    };
    let (kind, degree) = s.split_once(':').ok_or_else(bad)?;
    let degree: u32 = degree.parse().map_err(|_| bad())?;
    match kind {
        "poly" => Ok(TowerStart::Polynomial { degree }),
        "ext" => Ok(TowerStart::Exterior { degree }),
        _ => Err(bad()),
    }
}

fn cmd_tower(args: &TowerArgs, limits: Limits) -> Result<Report, Failure> {
    let start = parse_start(&args.start)?;
    let spec = TowerSpec { p: args.p, start, iterations: args.iterations, cap: args.cap };
    let run = run_tower_detailed(&spec, limits)?;

    let mut stages = Vec::new();
    let mut plain = format!(
        "tower p={} start={} iterations={} cap={}\n",
        spec.p, start, spec.iterations, spec.cap
    );
    let mut csv = String::from("stage,degree,dim\n");
    for (k, stage) in run.stages.iter().enumerate() {
        let series = stage.poincare();
        let mut entry = serde_json::Map::new();
        entry.insert("stage".into(), json!(k + 1));
        entry.insert("series".into(), series_value(&series));
        plain.push_str(&format!("stage {} dims: {}\n", k + 1, dims_line(&series)));
        if args.bidims && k >= 1 {
            let tor_doc = run.tors[k - 1].to_json();
            let line = tor_doc["bidims"]
                .as_array()
                .map(|rows| {
                    rows.iter()
                        .map(|r| format!("({},{})={}", r[0], r[1], r[2]))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            plain.push_str(&format!("stage {} bidims: {}\n", k + 1, line));
            entry.insert("bidims".into(), tor_doc["bidims"].clone());
        }
        for (t, dim) in series.dims.iter().enumerate() {
            csv.push_str(&format!("{},{},{}\n", k + 1, t, dim));
        }
        stages.push(Value::Object(entry));
    }
    let document = json!({
        "query": {
            "command": "tower",
            "p": spec.p,
            "start": start.to_string(),
            "iterations": spec.iterations,
            "cap": spec.cap,
        },
        "stages": stages,
    });
    Ok(Report { document, plain, csv })
}

fn thh_query(args: &ThhArgs, answer: &ThhAnswer) -> Value {
    let mut query = serde_json::Map::new();
    query.insert("command".into(), json!("thh"));
    query.insert("n".into(), json!(args.n));
    query.insert("p".into(), json!(args.p));
    query.insert("cap".into(), json!(args.cap));
    match args.ring {
        Ring::Z => {
            query.insert("ring".into(), json!("z"));
        }
        Ring::Local => {
            query.insert("ring".into(), json!("local"));
            query.insert("q".into(), json!(answer.q));
            if let Some(poly) = &args.poly {
                query.insert("poly".into(), json!(poly));
                query.insert("prime_index".into(), json!(args.prime_index.unwrap_or(0)));
            }
        }
    }
    Value::Object(query)
}

fn cmd_thh(args: &ThhArgs, limits: Limits) -> Result<Report, Failure> {
    let session = Session::new(limits);
    let answer = match args.ring {
        Ring::Z => {
            if args.ramified || args.poly.is_some() || args.q.is_some() || args.prime_index.is_some() {
                return Err(Failure::Args(
                    "--ramified, --poly, --prime-index, and --q need --ring local".into(),
                ));
            }
            session.thh_z(args.n, args.p, args.cap)?
        }
        Ring::Local => {
            let (kind, q) = match (&args.poly, args.ramified) {
                (Some(_), true) => {
                    return Err(Failure::Args(
                        "--ramified and --poly are mutually exclusive".into(),
                    ))
                }
                (None, false) => {
                    return Err(Failure::Args(
                        "--ring local needs either --ramified or --poly".into(),
                    ))
                }
                (None, true) => (LocalKind::Ramified, args.q.unwrap_or(args.p as u64)),
                (Some(poly), false) => {
                    if args.q.is_some() {
                        return Err(Failure::Args(
                            "--q conflicts with --poly; the residue field comes from the factor"
                                .into(),
                        ));
                    }
                    let coeffs = polyparse::parse(poly).map_err(Failure::Args)?;
                    let report = ramification(&coeffs, args.p)?;
                    let index = args.prime_index.unwrap_or(0);
                    let factor = report.factors.get(index).ok_or_else(|| {
                        Failure::Args(format!(
                            "--prime-index {index} out of range; the reduction has {} factors",
                            report.factors.len()
                        ))
                    })?;
                    let kind = if factor.ramified {
                        LocalKind::Ramified
                    } else {
                        LocalKind::Unramified
                    };
                    let q = (args.p as u64)
                        .checked_pow(factor.degree as u32)
                        .ok_or_else(|| {
                            Failure::Args(format!(
                                "residue field p^{} does not fit in 64 bits",
                                factor.degree
                            ))
                        })?;
                    (kind, q)
                }
            };
            session.thh_local(args.n, kind, args.p, q, args.cap)?
        }
    };

    let plain = format!(
        "{}\nn={} p={} q={} cap={}\ndims: {}\n",
        answer.citation,
        answer.n,
        answer.p,
        answer.q,
        answer.cap,
        dims_line(&answer.series)
    );
    let mut csv = String::from("degree,dim\n");
    for (t, dim) in answer.series.dims.iter().enumerate() {
        csv.push_str(&format!("{t},{dim}\n"));
    }
    let document = json!({
        "query": thh_query(args, &answer),
        "citation": answer.citation,
        "series": series_value(&answer.series),
        "x_series": series_value(&answer.x_series),
        "y_series": series_value(&answer.y_series),
    });
    Ok(Report { document, plain, csv })
}

fn selected_factors(
    report: &RamificationReport,
    prime_index: Option<usize>,
) -> Result<Vec<usize>, Failure> {
    match prime_index {
        None => Ok((0..report.factors.len()).collect()),
        Some(i) if i < report.factors.len() => Ok(vec![i]),
        Some(i) => Err(Failure::Args(format!(
            "--prime-index {i} out of range; the reduction has {} factors",
            report.factors.len()
        ))),
    }
}

fn cmd_ramify(args: &RamifyArgs) -> Result<Report, Failure> {
    let coeffs = polyparse::parse(&args.poly).map_err(Failure::Args)?;
    let report = ramification(&coeffs, args.p)?;
    let picked = selected_factors(&report, args.prime_index)?;

    let mut plain = format!(
        "f = {} reduces mod {} to {}\nramified: {}\n",
        args.poly.trim(),
        args.p,
        report.reduction,
        if report.ramified { "yes" } else { "no" }
    );
    let mut csv = String::from("index,factor,degree,multiplicity,ramified,hh1_dimension\n");
    let mut factors = Vec::new();
    for &i in &picked {
        let f = &report.factors[i];
        let hh1: u64 = if f.ramified { 1 } else { 0 };
        plain.push_str(&format!(
            "factor {i}: {}  multiplicity {}  {}  hh1 = {hh1}\n",
            f.polynomial,
            f.multiplicity,
            if f.ramified { "ramified" } else { "unramified" }
        ));
        csv.push_str(&format!(
            "{i},{},{},{},{},{hh1}\n",
            csv_field(&f.polynomial),
            f.degree,
            f.multiplicity,
            f.ramified
        ));
        factors.push(json!({
            "index": i,
            "polynomial": f.polynomial,
            "degree": f.degree,
            "multiplicity": f.multiplicity,
            "ramified": f.ramified,
            "hh1_dimension": hh1,
        }));
    }
    plain.push_str(&format!("caveat: {}\n", report.caveat));

    let mut query = serde_json::Map::new();
    query.insert("command".into(), json!("ramify"));
    query.insert("p".into(), json!(args.p));
    query.insert("poly".into(), json!(args.poly));
    if let Some(i) = args.prime_index {
        query.insert("prime_index".into(), json!(i));
    }
    let document = json!({
        "query": Value::Object(query),
        "reduction": report.reduction,
        "ramified": report.ramified,
        "factors": factors,
        "caveat": report.caveat,
    });
    Ok(Report { document, plain, csv })
}

fn cmd_verify(args: &VerifyArgs, limits: Limits) -> Result<(Report, u8), Failure> {
    let config = VerifyConfig {
        primes: args.primes.clone(),
        iterations: args.iterations,
        cap: args.cap,
        limits,
        fault: args
            .perturb_oracle
            .then_some(OracleFault::ShiftPolynomialSuspension),
    };
    let outcome = verify::run(&config)?;

    let mut invariants_checked: Option<usize> = None;
    if args.check_invariants && outcome.divergence.is_none() {
        let mut checked = 0usize;
        for &p in &config.primes {
            let starts = verify::default_starts(p);
            let start = starts[(args.seed % starts.len() as u64) as usize];
            let spec =
                TowerSpec { p, start, iterations: config.iterations, cap: config.cap };
            for stage in run_tower(&spec, limits)? {
                stage.check_invariants(args.seed)?;
                checked += 1;
            }
        }
        invariants_checked = Some(checked);
    }

    let primes_str = config
        .primes
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut plain = format!(
        "verify primes={primes_str} iterations={} cap={}{}\n",
        config.iterations,
        config.cap,
        if args.perturb_oracle { " (oracle perturbed)" } else { "" }
    );
    let code = match &outcome.divergence {
        Some(d) => {
            plain.push_str(&format!("{d}\n"));
            1
        }
        None => {
            plain.push_str(&format!(
                "all {} dimensions agree across {} towers\n",
                outcome.comparisons, outcome.towers
            ));
            if let Some(n) = invariants_checked {
                plain.push_str(&format!("algebra invariants re-checked on {n} stages\n"));
            }
            0
        }
    };
    let mut csv = String::from(
        "primes,iterations,cap,towers,comparisons,divergent_stage,divergent_degree\n",
    );
    csv.push_str(&format!(
        "{},{},{},{},{},{},{}\n",
        csv_field(&primes_str),
        config.iterations,
        config.cap,
        outcome.towers,
        outcome.comparisons,
        outcome.divergence.as_ref().map(|d| d.stage.to_string()).unwrap_or_default(),
        outcome.divergence.as_ref().map(|d| d.degree.to_string()).unwrap_or_default(),
    ));
    let document = json!({
        "query": {
            "command": "verify",
            "primes": config.primes,
            "iterations": config.iterations,
            "cap": config.cap,
            "perturbed": args.perturb_oracle,
        },
        "towers": outcome.towers,
        "comparisons": outcome.comparisons,
        "invariants_checked": invariants_checked,
        "divergence": outcome.divergence.as_ref().map(|d| json!({
            "p": d.spec.p,
            "start": d.spec.start.to_string(),
            "cap": d.spec.cap,
            "stage": d.stage,
            "degree": d.degree,
            "engine": d.engine,
            "oracle": d.oracle,
        })),
    });
    Ok((Report { document, plain, csv }, code))
}
