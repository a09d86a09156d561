//! The `henon` command-line tool.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage errors, 3 for contract violations and internal errors. Data
//! goes to stdout (or `--out`); progress and failure details go to stderr.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    self, convergence_report, escape_radius, optimal_compression_search, padic_escape_check_rd,
    radius_below_prime, rd_compression, rd_preperiodic_set, real_escape_check_rd,
    up_to_target_reflection, verify_cd_bounds, verify_monotonicity, verify_sigma_agreement_with,
    verify_tail_growth, LemmaId, Place, SeriesKind, SigmaShift,
};
use crate::arith::{parse_rational, primes_up_to, rat, ExactRational};
use crate::dynamics::{
    enumerate_periodic, hinf_orbit_float, hinf_period_table, periodic_radius, perturbation_atlas,
    sweep, table_formula, HenonMap, Orientation, SweepRow, TABLE_RANGE,
};
use crate::error::{Error, Result};
use crate::exec::{init_threads, Exec};
use crate::output;
use crate::poly::{build_c, build_r, build_s};

/// Parsed command line. Serializes to JSON and back unchanged.
#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(
    name = "henon",
    version,
    about = "Integer-valued sine polynomials and lattice Hénon dynamics"
)]
pub struct RunConfig {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run every batch sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Print the parsed configuration as JSON to stderr before running.
    #[arg(long, global = true)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Evaluate and print the polynomial families.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Dynamical compression of r_d and the low-degree optimality search.
    #[command(subcommand)]
    Compress(CompressCmd),
    /// Exact checks of the estimates on c_d, s_d and r_d.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Enumerate the integer periodic points of one map.
    Periodic(PeriodicArgs),
    /// Enumerate periodic points over ranges of degree and shift.
    Sweep(SweepArgs),
    /// Cycle listings.
    #[command(subcommand)]
    Cycle(CycleCmd),
    /// Exact and perturbed dynamics of the limiting map.
    #[command(subcommand)]
    Hinf(HinfCmd),
    /// Archimedean and p-adic escape radii.
    Radius(RadiusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    S,
    C,
    R,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum PolyCmd {
    /// Exact value at a rational point, printed as "num/den".
    Eval {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: RationalArg,
        #[arg(long, value_enum, default_value = "s")]
        family: Family,
    },
    /// Coefficients in ascending powers of x.
    Coeffs {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "s")]
        family: Family,
    },
    /// CSV table of values at consecutive integers.
    Table {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "s")]
        family: Family,
        /// First integer (default: -(d+5)/2).
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        /// Last integer (default: (d+5)/2).
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum CompressCmd {
    /// Check r_d([d+6]) ⊆ [d+5] (even d) or [d+4] (odd d).
    Check(DegreeArgs),
    /// All integer-valued polynomials of the given degree with f([m]) ⊆ [m].
    Search {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        m: i64,
        /// Keep both members of each pair {f, m+1-f}.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdBound {
    Outer,
    Inner,
    DerivOuter,
    DerivInner,
    All,
}

impl CdBound {
    fn lemmas(self) -> Vec<LemmaId> {
        match self {
            CdBound::Outer => vec![LemmaId::CdSup],
            CdBound::Inner => vec![LemmaId::CdSupInner],
            CdBound::DerivOuter => vec![LemmaId::CdDeriv],
            CdBound::DerivInner => vec![LemmaId::CdDerivInner],
            CdBound::All => {
                vec![
                    LemmaId::CdSup,
                    LemmaId::CdSupInner,
                    LemmaId::CdDeriv,
                    LemmaId::CdDerivInner,
                ]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaConvention {
    /// σ(m + 3(d-1)/2)
    Plus,
    /// σ(m - 3(d-1)/2)
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesArg {
    Sine,
    Cosine,
    SineDerivative,
    CosineDerivative,
}

impl From<SeriesArg> for SeriesKind {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Sine => SeriesKind::Sine,
            SeriesArg::Cosine => SeriesKind::Cosine,
            SeriesArg::SineDerivative => SeriesKind::SineDerivative,
            SeriesArg::CosineDerivative => SeriesKind::CosineDerivative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum VerifyCmd {
    /// s_d against the 6-periodic sequence σ on -(d+1)/2..=(d+1)/2.
    Sigma {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long, value_enum, default_value = "plus")]
        convention: SigmaConvention,
    },
    /// Sup and derivative bounds on c_d over a 1/n grid.
    CdBounds {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long, value_enum, default_value = "all")]
        which: CdBound,
        #[arg(long, default_value = "1/4")]
        step: RationalArg,
    },
    /// s_d(x) >= 3x from (d+7)/2 up to the cap.
    Tail {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Last grid point (default: (d+7)/2 + 500).
        #[arg(long)]
        cap: Option<RationalArg>,
    },
    /// Strict increase of s_d beyond (d+3)/2.
    Monotone {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Last grid point (default: (d+3)/2 + 50).
        #[arg(long)]
        cap: Option<RationalArg>,
        #[arg(long, default_value = "1/4")]
        step: RationalArg,
    },
    /// Float sup-error of the normalised s_{2k+1} against its trigonometric limit.
    Convergence {
        #[arg(long, value_enum, default_value = "sine")]
        kind: SeriesArg,
        #[arg(long, default_value_t = 30)]
        kmax: usize,
        #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// |r_d(x)| > |x| on the real sample set.
    EscapeReal(DegreeArgs),
    /// |r_d(x)|_p > |x|_p on samples with |x|_p > 1.
    EscapePadic {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// The integer preperiodic set of r_d equals {1, ..., d+6}.
    Preperiodic(DegreeArgs),
}

/// A degree selection: `--d 7`, `--d 3..31`, `--d 5,7,9`, or `--dmin/--dmax`.
#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DegreeArgs {
    #[arg(long)]
    pub d: Option<DegreeSpec>,
    #[arg(long)]
    pub dmin: Option<usize>,
    #[arg(long)]
    pub dmax: Option<usize>,
}

impl DegreeArgs {
    fn resolve(&self, default_min: usize, default_max: usize) -> Result<Vec<usize>> {
        let ds = match (&self.d, self.dmin, self.dmax) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(Error::Argument(
                    "--d cannot be combined with --dmin/--dmax".into(),
                ))
            }
            (Some(spec), None, None) => spec.values.clone(),
            (None, lo, hi) => (lo.unwrap_or(default_min)..=hi.unwrap_or(default_max)).collect(),
        };
        if ds.is_empty() {
            return Err(Error::Argument("empty degree range".into()));
        }
        Ok(ds)
    }
}

/// Comma list of integers and inclusive ranges `a..b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DegreeSpec {
    text: String,
    values: Vec<usize>,
}

impl FromStr for DegreeSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let values = parse_int_list(s)?
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| format!("negative degree {v}")))
            .collect::<std::result::Result<_, _>>()?;
        Ok(DegreeSpec {
            text: s.to_string(),
            values,
        })
    }
}

impl TryFrom<String> for DegreeSpec {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<DegreeSpec> for String {
    fn from(d: DegreeSpec) -> String {
        d.text
    }
}

/// Comma list of signed integers and ranges, e.g. `-2..2` or `0,3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IntSpec {
    text: String,
    values: Vec<i64>,
}

impl FromStr for IntSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(IntSpec {
            text: s.to_string(),
            values: parse_int_list(s)?,
        })
    }
}

impl TryFrom<String> for IntSpec {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<IntSpec> for String {
    fn from(d: IntSpec) -> String {
        d.text
    }
}

fn parse_int_list(s: &str) -> std::result::Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        // a leading '-' belongs to the first bound
        let split = part
            .char_indices()
            .skip(1)
            .find(|&(i, _)| part[i..].starts_with(".."));
        match split {
            Some((i, _)) => {
                let hi_text = part[i + 2..].trim_start_matches('=');
                let lo: i64 = part[..i]
                    .parse()
                    .map_err(|_| format!("bad range {part:?}"))?;
                let hi: i64 = hi_text.parse().map_err(|_| format!("bad range {part:?}"))?;
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?),
        }
    }
    Ok(out)
}

/// An exact rational argument (`3`, `-7/2`, `0.25`), kept as text for serde.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalArg {
    text: String,
    value: ExactRational,
}

impl FromStr for RationalArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let value = parse_rational(s).map_err(|e| e.to_string())?;
        Ok(RationalArg {
            text: s.to_string(),
            value,
        })
    }
}

impl TryFrom<String> for RationalArg {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<RationalArg> for String {
    fn from(r: RationalArg) -> String {
        r.text
    }
}

impl fmt::Display for RationalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationArg {
    /// (x, y) -> (y, -x + s_d(y + c))
    Standard,
    /// (x, y) -> (-y, x + s_d(y + c))
    Shifted,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Standard => Orientation::Standard,
            OrientationArg::Shifted => Orientation::Swapped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    Svg,
    Text,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            return Err(Error::Argument(format!(
                "format {f:?} not supported here (expected one of {allowed:?})"
            )));
        }
        Ok(f)
    }

    fn open(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PeriodicArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub c: i64,
    #[arg(long, value_enum, default_value = "standard")]
    pub orientation: OrientationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Degrees; ranges keep their odd members only.
    #[arg(long, default_value = "15..61")]
    pub d: DegreeSpec,
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub c: IntSpec,
    #[arg(long, value_enum, default_value = "standard")]
    pub orientation: OrientationArg,
    /// Fill the elapsed_ms column (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum CycleCmd {
    /// Every cycle of the map, in orbit order from its least point.
    Dump(PeriodicArgs),
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum HinfCmd {
    /// Periods on [-M, M]^2 folded into the residue table, with exceptions.
    Periods {
        #[arg(long, default_value_t = 60)]
        range: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One perturbed floating-point orbit.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Perturbed orbits from every integer point of [-M, M]^2.
    Atlas {
        #[arg(long = "box", default_value_t = 6)]
        half_width: i64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 200_000)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Keep every n-th iterate.
        #[arg(long, default_value_t = 100)]
        stride: usize,
        /// Half-width of the SVG viewport.
        #[arg(long, default_value_t = 12.0)]
        view: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub degrees: DegreeArgs,
    /// Primes for R_p (default: all primes up to --pmax).
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, default_value_t = 7)]
    pub pmax: u64,
}

/// Outcome of a command that ran to completion.
enum Status {
    Pass,
    /// One or more checks failed; details as JSON.
    Fail(Value),
}

/// Parses `std::env::args` and runs. Returns the process exit code.
pub fn main() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if config.print_config {
        match serde_json::to_string(&config) {
            Ok(s) => eprintln!("{s}"),
            Err(e) => eprintln!("cannot serialize config: {e}"),
        }
    }
    init_threads(config.threads);
    match run(&config) {
        Ok(Status::Pass) => 0,
        Ok(Status::Fail(detail)) => {
            eprintln!("{}", json!({ "status": "fail", "failures": detail }));
            1
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::Argument(_) | Error::Domain(_) => ("usage", 2),
                Error::Diverged(_) => ("diverged", 1),
                Error::Contract(_) => ("contract", 3),
                _ => ("internal", 3),
            };
            eprintln!(
                "{}",
                json!({ "status": "error", "kind": kind, "message": e.to_string() })
            );
            code
        }
    }
}

fn run(config: &RunConfig) -> Result<Status> {
    let exec = if config.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &config.command {
        Command::Poly(cmd) => run_poly(cmd),
        Command::Compress(cmd) => run_compress(cmd, exec),
        Command::Verify(cmd) => run_verify(cmd, exec),
        Command::Periodic(args) => run_periodic(args, exec),
        Command::Sweep(args) => run_sweep(args, exec),
        Command::Cycle(CycleCmd::Dump(args)) => run_cycle_dump(args, exec),
        Command::Hinf(cmd) => run_hinf(cmd, exec),
        Command::Radius(args) => run_radius(args),
    }
}

fn family_poly(family: Family, d: usize) -> Result<crate::PolyExact> {
    match family {
        Family::S => Ok(build_s(d)),
        Family::C => Ok(build_c(d)),
        Family::R => build_r(d),
    }
}

fn run_poly(cmd: &PolyCmd) -> Result<Status> {
    let mut out = io::stdout().lock();
    match cmd {
        PolyCmd::Eval { d, x, family } => {
            writeln!(out, "{}", family_poly(*family, *d)?.eval(&x.value))?;
        }
        PolyCmd::Coeffs { d, family } => {
            writeln!(out, "{}", family_poly(*family, *d)?)?;
        }
        PolyCmd::Table {
            d,
            family,
            from,
            to,
        } => {
            let f = family_poly(*family, *d)?;
            let half = (*d as i64 + 5) / 2;
            let (lo, hi) = (from.unwrap_or(-half), to.unwrap_or(half));
            if lo > hi {
                return Err(Error::Argument(format!("empty table range {lo}..{hi}")));
            }
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["m", "value"])?;
            for m in lo..=hi {
                w.write_record([m.to_string(), f.eval_int(m).to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(Status::Pass)
}

/// Prints the records as a JSON array and fails if any has `"pass": false`.
fn report(records: Vec<Value>) -> Result<Status> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &records)?;
    writeln!(out)?;
    let failures: Vec<Value> = records
        .into_iter()
        .filter(|r| r.get("pass") == Some(&Value::Bool(false)))
        .collect();
    Ok(if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail(Value::Array(failures))
    })
}

fn run_compress(cmd: &CompressCmd, exec: Exec) -> Result<Status> {
    match cmd {
        CompressCmd::Check(degrees) => {
            let ds = degrees.resolve(2, 20)?;
            let results = exec.try_map(&ds, |&d| rd_compression(d))?;
            report(results.iter().map(|r| json!(r)).collect::<Vec<_>>())
        }
        CompressCmd::Search { degree, m, raw } => {
            let found = optimal_compression_search(exec, *degree, *m)?;
            let found = if *raw {
                found
            } else {
                up_to_target_reflection(found)
            };
            let mut out = io::stdout().lock();
            for f in &found {
                writeln!(out, "{f}")?;
            }
            eprintln!("{} solution(s) of degree {degree} on [{m}]", found.len());
            Ok(Status::Pass)
        }
    }
}

fn run_verify(cmd: &VerifyCmd, exec: Exec) -> Result<Status> {
    let records: Vec<Value> = match cmd {
        VerifyCmd::Sigma {
            degrees,
            convention,
        } => {
            let shift = match convention {
                SigmaConvention::Plus => SigmaShift::Plus,
                SigmaConvention::Minus => SigmaShift::Minus,
            };
            let ds = degrees.resolve(1, 200)?;
            let checks = exec.try_map(&ds, |&d| verify_sigma_agreement_with(d, shift))?;
            checks.iter().map(|c| json!(c)).collect()
        }
        VerifyCmd::CdBounds {
            degrees,
            which,
            step,
        } => {
            let ds = degrees.resolve(4, 100)?;
            let jobs: Vec<(usize, LemmaId)> = ds
                .iter()
                .flat_map(|&d| which.lemmas().into_iter().map(move |l| (d, l)))
                .collect();
            let reports = exec.try_map(&jobs, |&(d, l)| verify_cd_bounds(d, l, &step.value))?;
            reports.iter().map(|r| json!(r.record())).collect()
        }
        VerifyCmd::Tail { degrees, cap } => {
            let ds = degrees.resolve(3, 50)?;
            let reports = exec.try_map(&ds, |&d| {
                let cap = cap
                    .as_ref()
                    .map_or_else(|| rat(d as i64 + 1007, 2), |c| c.value.clone());
                verify_tail_growth(d, &cap)
            })?;
            reports.iter().map(|r| json!(r.record())).collect()
        }
        VerifyCmd::Monotone { degrees, cap, step } => {
            let ds = degrees.resolve(1, 50)?;
            let reports = exec.try_map(&ds, |&d| {
                let cap = cap
                    .as_ref()
                    .map_or_else(|| rat(d as i64 + 103, 2), |c| c.value.clone());
                verify_monotonicity(d, &cap, &step.value)
            })?;
            reports.iter().map(|r| json!(r.record())).collect()
        }
        VerifyCmd::Convergence {
            kind,
            kmax,
            lo,
            hi,
            step,
            tol,
        } => {
            if !(step > &0.0 && lo <= hi && *kmax >= 5) {
                return Err(Error::Argument(
                    "need step > 0, lo <= hi and kmax >= 5".into(),
                ));
            }
            let r = convergence_report(exec, (*kind).into(), *kmax, (*lo, *hi), *step, *tol);
            vec![json!(r)]
        }
        VerifyCmd::EscapeReal(degrees) => {
            let ds = degrees.resolve(2, 20)?;
            let reports = exec.try_map(&ds, |&d| real_escape_check_rd(d, None))?;
            reports.iter().map(|r| json!(r.record())).collect()
        }
        VerifyCmd::EscapePadic {
            degrees,
            primes,
            samples,
        } => {
            let ds = degrees.resolve(2, 20)?;
            let jobs: Vec<(usize, u64)> = ds
                .iter()
                .flat_map(|&d| primes.iter().map(move |&p| (d, p)))
                .collect();

            exec.try_map(&jobs, |&(d, p)| {
                let pts = analysis::default_padic_samples(p, *samples);
                padic_escape_check_rd(d, p, Some(pts)).map(|r| {
                    let mut v = json!(r.record());
                    v["prime"] = json!(p);
                    v
                })
            })?
        }
        VerifyCmd::Preperiodic(degrees) => {
            let ds = degrees.resolve(2, 20)?;
            exec.try_map(&ds, |&d| {
                let set = rd_preperiodic_set(d)?;
                let expected: Vec<i64> = (1..=d as i64 + 6).collect();
                let pass = set.iter().copied().eq(expected.iter().copied());
                Ok::<_, Error>(json!({ "d": d, "size": set.len(), "pass": pass }))
            })?
        }
    };
    report(records)
}

fn checked_map(args: &PeriodicArgs) -> Result<HenonMap> {
    if args.d < 3 || args.d.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "dynamics needs odd d >= 3, got {}",
            args.d
        )));
    }
    HenonMap::new(args.d, args.c, args.orientation.into())
}

fn run_periodic(args: &PeriodicArgs, exec: Exec) -> Result<Status> {
    let map = checked_map(args)?;
    let format = args
        .output
        .format(Format::Csv, &[Format::Csv, Format::Json])?;
    let e = enumerate_periodic(&map, exec)?;
    let expected = table_formula(args.d, args.c);
    let row = SweepRow {
        matches: expected.map(|(n, l)| n == e.report.total as i64 && l == e.report.longest as i64),
        expected,
        in_table_range: TABLE_RANGE.contains(&args.d),
        report: e.report,
    };
    let mut out = args.output.open()?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &row)?;
            writeln!(out)?;
        }
        _ => output::write_sweep_csv(&mut out, std::slice::from_ref(&row), false)?,
    }
    out.flush()?;
    Ok(Status::Pass)
}

fn run_sweep(args: &SweepArgs, exec: Exec) -> Result<Status> {
    // Ranges contribute their odd members; explicit even degrees are errors.
    let is_range = args.d.text.contains("..");
    let ds: Vec<usize> = args
        .d
        .values
        .iter()
        .copied()
        .filter(|d| !is_range || d % 2 == 1)
        .collect();
    if let Some(d) = ds.iter().find(|&&d| d < 3 || d % 2 == 0) {
        return Err(Error::Argument(format!("sweep needs odd d >= 3, got {d}")));
    }
    if ds.is_empty() || args.c.values.is_empty() {
        return Err(Error::Argument("empty sweep".into()));
    }
    args.output.format(Format::Csv, &[Format::Csv])?;
    let started = Instant::now();
    eprintln!(
        "sweep: {} degree(s) x {} shift(s)",
        ds.len(),
        args.c.values.len()
    );
    let rows = sweep(&ds, &args.c.values, args.orientation.into(), exec)?;
    eprintln!("sweep: done in {:.2?}", started.elapsed());
    let mut out = args.output.open()?;
    output::write_sweep_csv(&mut out, &rows, args.timing)?;
    out.flush()?;
    let failures: Vec<Value> = rows
        .iter()
        .filter(|r| r.is_failure())
        .map(|r| {
            json!({
                "d": r.report.d, "c": r.report.c,
                "count": r.report.total, "longest": r.report.longest,
                "expected": r.expected,
            })
        })
        .collect();
    Ok(if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail(Value::Array(failures))
    })
}

fn run_cycle_dump(args: &PeriodicArgs, exec: Exec) -> Result<Status> {
    let map = checked_map(args)?;
    let format = args
        .output
        .format(Format::Json, &[Format::Csv, Format::Json])?;
    let e = enumerate_periodic(&map, exec)?;
    let mut out = args.output.open()?;
    match format {
        Format::Csv => output::write_cycles_csv(&mut out, &e.cycles)?,
        _ => output::write_cycles_json(&mut out, &e.cycles)?,
    }
    out.flush()?;
    Ok(Status::Pass)
}

fn run_hinf(cmd: &HinfCmd, exec: Exec) -> Result<Status> {
    match cmd {
        HinfCmd::Periods { range, output } => {
            let format = output.format(Format::Text, &[Format::Text, Format::Json])?;
            let table = hinf_period_table(*range, exec)?;
            let mut out = output.open()?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &table)?;
                    writeln!(out)?;
                }
                _ => output::write_period_table(&mut out, &table)?,
            }
            out.flush()?;
        }
        HinfCmd::Orbit {
            x,
            y,
            eps,
            iters,
            seed,
            output,
        } => {
            output.format(Format::Csv, &[Format::Csv])?;
            let orbit = hinf_orbit_float((*x, *y), *eps, *iters, *seed)?;
            let mut out = output.open()?;
            output::write_trajectory_csv(&mut out, &orbit)?;
            out.flush()?;
        }
        HinfCmd::Atlas {
            half_width,
            eps,
            iters,
            seed,
            stride,
            view,
            output,
        } => {
            let format = output.format(Format::Csv, &[Format::Csv, Format::Svg])?;
            let started = Instant::now();
            let n = (2 * half_width + 1).pow(2);
            eprintln!("atlas: {n} orbit(s) of {iters} iterations");
            let atlas = perturbation_atlas(*half_width, *eps, *iters, *seed, *stride, exec)?;
            eprintln!("atlas: done in {:.2?}", started.elapsed());
            let mut out = output.open()?;
            match format {
                Format::Svg => output::write_atlas_svg(&mut out, &atlas, *view)?,
                _ => output::write_atlas_csv(&mut out, &atlas, *stride)?,
            }
            out.flush()?;
        }
    }
    Ok(Status::Pass)
}

fn run_radius(args: &RadiusArgs) -> Result<Status> {
    let ds = args.degrees.resolve(3, 31)?;
    if let Some(d) = ds.iter().find(|&&d| d < 3 || d % 2 == 0) {
        return Err(Error::Argument(format!("radius needs odd d >= 3, got {d}")));
    }
    let primes = match &args.primes {
        Some(ps) => ps.clone(),
        None => primes_up_to(args.pmax),
    };
    let records = ds
        .iter()
        .map(|&d| {
            let padic = primes
                .iter()
                .map(|&p| {
                    Ok(json!({
                        "p": p,
                        "r_p": escape_radius(d, Place::Prime(p))?.to_string(),
                        "below_p": radius_below_prime(d, p)?,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "d": d,
                "r_inf": escape_radius(d, Place::Infinity)?.to_string(),
                "box": ((d as i64 + 5) / 2),
                "periodic_radius": periodic_radius(d)?,
                "padic": padic,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &records)?;
    writeln!(out)?;
    Ok(Status::Pass)
}
