//! Command-line front end. Every command returns its report as a string and
//! an exit code; the binary only prints.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;

pub use commands::{run_check, run_constants, run_l_bound, run_search_height, run_sigma_a, run_trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_PIPELINE: i32 = 4;
/// A proven bound was observed to fail.
pub const EXIT_FALSIFIED: i32 = 5;

pub const MAX_DIGITS: u32 = 200;

#[derive(Parser, Debug, Clone)]
#[clap(
    name = "zeta-extremal",
    version,
    about = "Extremal constants, near-extremal heights and turning points of the Riemann zeta function",
    long_about = "Extremal constants, near-extremal heights and turning points of the Riemann zeta function.\n\n\
        Units: σ = Re s and t = Im s are dimensionless; --digits counts decimal digits.\n\
        Numbers in JSON output are decimal strings. Exit codes: 0 success, 2 usage, \
        3 precision escalation, 4 pipeline or no root, 5 a proven bound failed."
)]
pub struct Cli {
    #[clap(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Certified values of σ(1), E and A
    Constants(ConstantsArgs),
    /// σ(a): the real part bound for |ζ(s)| = a
    SigmaA(SigmaAArgs),
    /// Real part bound for L(s, χ) = a over characters mod q
    LBound(LBoundArgs),
    /// LLL search for a height where ζ is close to 1, with refinement
    SearchHeight(SearchArgs),
    /// Curves Im ζ = 0 (and Re ζ = 0) in a window, as CSV or SVG
    Trace(TraceArgs),
    /// Grid checks of the inequalities behind the bounds
    Check(CheckArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Text => "text",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    #[clap(name = "sigma1")]
    SigmaOne,
    #[clap(name = "E")]
    E,
    #[clap(name = "A")]
    A,
    #[clap(name = "all")]
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    A3,
    UBound,
    SeriesOracles,
    All,
}

fn digits_arg(s: &str) -> Result<u32, String> {
    let d: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if !(crate::numerics::MIN_DIGITS..=MAX_DIGITS).contains(&d) {
        return Err(format!("digits must lie in {}..={MAX_DIGITS}", crate::numerics::MIN_DIGITS));
    }
    Ok(d)
}

#[derive(clap::Args, Debug, Clone)]
pub struct ConstantsArgs {
    /// Which constant to compute
    #[clap(long, value_enum, default_value = "all")]
    pub which: Which,
    /// Decimal digits (10 to 200)
    #[clap(long, default_value = "45", value_parser = digits_arg)]
    pub digits: u32,
    /// json or text
    #[clap(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report to this file instead of stdout
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SigmaAArgs {
    /// The level a > 0, a ≠ 1, as a decimal
    #[clap(long, allow_hyphen_values = true)]
    pub a: String,
    /// Decimal digits (10 to 200)
    #[clap(long, default_value = "30", value_parser = digits_arg)]
    pub digits: u32,
    /// json or text
    #[clap(long, value_enum, default_value = "json")]
    pub format: Format,
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct LBoundArgs {
    /// Modulus q ≥ 3 of the characters
    #[clap(long)]
    pub q: u64,
    /// The level a in (0, 1], as a decimal
    #[clap(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Decimal digits (10 to 200)
    #[clap(long, default_value = "30", value_parser = digits_arg)]
    pub digits: u32,
    /// json or text
    #[clap(long, value_enum, default_value = "json")]
    pub format: Format,
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SearchArgs {
    /// Number of primes in the lattice
    #[clap(long, default_value = "10")]
    pub n: usize,
    /// Scale exponent: entries are scaled by 2^nu
    #[clap(long, default_value = "90")]
    pub nu: u32,
    /// The height is resolved to 2^-r
    #[clap(long, default_value = "30")]
    pub r: u32,
    /// Weights are base^(40-j) for the j-th prime
    #[clap(long, default_value = "1.15")]
    pub weights_base: String,
    /// Target phases θ_j in [0, 2π), comma separated (default π, 0, 0, ...)
    #[clap(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Primes in the Euler product above height 10^5
    #[clap(long, default_value = "1000000")]
    pub prime_limit: u64,
    /// Decimal digits of the refined roots (10 to 200)
    #[clap(long, default_value = "20", value_parser = digits_arg)]
    pub digits: u32,
    /// Report lattice candidates only, without Newton refinement
    #[clap(long)]
    pub no_refine: bool,
    /// Skip the search and look for a root of ζ(s) = 1 near this height t
    #[clap(long)]
    pub verify_height: Option<String>,
    /// json or text
    #[clap(long, value_enum, default_value = "json")]
    pub format: Format,
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct TraceArgs {
    /// σ_min,σ_max,t_min,t_max
    #[clap(long, default_value = "1.2,3,1,50", allow_hyphen_values = true)]
    pub window: String,
    /// Grid step in σ and t
    #[clap(long, default_value = "0.05")]
    pub grid_step: String,
    /// Also trace Re ζ = 0
    #[clap(long)]
    pub overlay_re_zero: bool,
    /// Locate turning points of the Im ζ = 0 curves and mark them
    #[clap(long)]
    pub turning_points: bool,
    /// Euler–Maclaurin everywhere: allows 0.1 ≤ σ and |t| ≤ 10^4 (slow)
    #[clap(long)]
    pub heavy: bool,
    /// Decimal digits (10 to 200)
    #[clap(long, default_value = "20", value_parser = digits_arg)]
    pub digits: u32,
    /// csv or svg
    #[clap(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CheckArgs {
    /// Which suite to run
    #[clap(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// json or text
    #[clap(long, value_enum, default_value = "json")]
    pub format: Format,
    #[clap(long)]
    pub out: Option<std::path::PathBuf>,
}

/// A finished command: the report and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// The output is an error report rather than a result.
    pub failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: EXIT_OK, failed: false }
    }

    fn with_code(output: String, code: i32) -> Self {
        Self { output, code, failed: false }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidPrecision(_)
        | Error::InvalidParams(_)
        | Error::Parse(_)
        | Error::UndefinedInput(_)
        | Error::Redirect(_)
        | Error::Domain(_)
        | Error::PoleProximity(_)
        | Error::EmptyPrimeTable(_) => EXIT_USAGE,
        Error::PrecisionEscalation { .. } | Error::PrecisionInsufficient(_) => EXIT_PRECISION,
        Error::NoSignChange { .. }
        | Error::DependentRows
        | Error::NoSentinelRow
        | Error::NoRoot(_)
        | Error::OutOfRegion(_)
        | Error::NoTurningPoint(_)
        | Error::ZeroOnContour(_) => EXIT_PIPELINE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::EmptyPrimeTable(_) => "empty_prime_table",
        Error::UndefinedInput(_) => "undefined_input",
        Error::InvalidPrecision(_) => "invalid_precision",
        Error::Parse(_) => "parse",
        Error::Domain(_) => "domain",
        Error::PoleProximity(_) => "pole_proximity",
        Error::Redirect(_) => "redirect",
        Error::PrecisionEscalation { .. } => "precision_escalation",
        Error::NoSignChange { .. } => "no_sign_change",
        Error::DependentRows => "dependent_rows",
        Error::PrecisionInsufficient(_) => "precision_insufficient",
        Error::NoSentinelRow => "no_sentinel_row",
        Error::NoRoot(_) => "no_root",
        Error::OutOfRegion(_) => "out_of_region",
        Error::NoTurningPoint(_) => "no_turning_point",
        Error::ZeroOnContour(_) => "zero_on_contour",
        Error::InvalidParams(_) => "invalid_params",
    }
}

/// The machine-readable failure report.
pub fn error_report(command: &str, e: &Error) -> Value {
    let mut v = json!({ "command": command, "error": error_kind(e), "message": e.to_string() });
    if let Error::PrecisionEscalation { required_digits } = e {
        v["required_digits"] = json!(required_digits.to_string());
    }
    if let Error::Redirect(_) = e {
        v["message"] = json!("a = 1 is the separate constant sigma1; use `constants --which sigma1`");
    }
    v
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Constants(_) => "constants",
        Command::SigmaA(_) => "sigma-a",
        Command::LBound(_) => "l-bound",
        Command::SearchHeight(_) => "search-height",
        Command::Trace(_) => "trace",
        Command::Check(_) => "check",
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Constants(a) => run_constants(a),
        Command::SigmaA(a) => run_sigma_a(a),
        Command::LBound(a) => run_l_bound(a),
        Command::SearchHeight(a) => run_search_height(a),
        Command::Trace(a) => run_trace(a),
        Command::Check(a) => run_check(a),
    };
    res.unwrap_or_else(|e| Outcome { output: render(&error_report(name(&cli.command), &e)), code: exit_code(&e), failed: true })
}

/// Where the report goes: the --out path, if any.
pub fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Constants(a) => a.out.as_deref(),
        Command::SigmaA(a) => a.out.as_deref(),
        Command::LBound(a) => a.out.as_deref(),
        Command::SearchHeight(a) => a.out.as_deref(),
        Command::Trace(a) => a.out.as_deref(),
        Command::Check(a) => a.out.as_deref(),
    }
}

#[cfg(test)]
mod tests;
