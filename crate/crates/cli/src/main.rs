//! `extropy`: compute, scan and verify extropy-family measures from the shell.

mod format;
mod spec;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extropy_core::order_stats::Extreme;
use extropy_core::scan::{self, Axis, Measure};
use extropy_core::{verify, Distribution, Error, EvalOptions, Execution, QuadratureConfig};

use crate::format::real;
use crate::spec::{parse_distribution, parse_n, parse_t, NSpec, ParseError, TSpec};

#[derive(Debug, Parser)]
#[command(
    name = "extropy",
    version,
    about = "Extropy, past extropy and related measures of lifetime distributions"
)]
struct Cli {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    quad_rel_tol: f64,

    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-12)]
    quad_abs_tol: f64,

    /// Maximum number of interval bisections per integral.
    #[arg(long, global = true, default_value_t = 2000)]
    max_subdiv: usize,

    /// Skip closed forms and integrate numerically.
    #[arg(long, global = true)]
    force_quadrature: bool,

    /// Evaluate grid points one after another.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one value and the method used.
    Compute {
        measure: String,
        distribution: String,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// CSV of a measure over a t grid (`--t start:stop:count`) or an n range (`--n start:stop`).
    Scan {
        measure: String,
        distribution: String,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<String>,
        #[arg(long)]
        n: Option<String>,
    },
    /// CSV dataset behind figure 1, 2 or 3.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Run the numerical checks on each distribution.
    Verify {
        #[arg(required = true)]
        distributions: Vec<String>,
        /// Also compare every distribution against this one.
        #[arg(long)]
        against: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// CSV of the past extropy rebuilt from the reversed failure rate next to the direct value.
    Reconstruct {
        distribution: String,
        #[arg(long, allow_negative_numbers = true)]
        t: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

enum Failure {
    Parse(String),
    Compute(Error),
    ChecksFailed,
    Io(io::Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::ChecksFailed => 1,
            Failure::Parse(_) | Failure::Compute(Error::InvalidParameter(_)) => 2,
            Failure::Compute(Error::Domain(_)) => 3,
            Failure::Compute(Error::DivergentIntegral(_) | Error::ToleranceNotReached { .. }) => 4,
            Failure::Io(_) => 5,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Parse(msg) => eprintln!("error: {msg}"),
                Failure::Compute(e) => eprintln!("error: {e}"),
                Failure::ChecksFailed => eprintln!("error: verification failed"),
                Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn options(cli: &Cli) -> Result<EvalOptions, Failure> {
    let quadrature = QuadratureConfig::new(cli.quad_rel_tol, cli.quad_abs_tol, cli.max_subdiv)
        .map_err(|e| Failure::Parse(e.to_string()))?;
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    Ok(EvalOptions {
        quadrature,
        force_quadrature: cli.force_quadrature,
        execution,
    })
}

fn measure(name: &str) -> Result<Measure, Failure> {
    Measure::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
        Failure::Parse(format!(
            "unknown measure `{name}`; expected one of {}",
            known.join(", ")
        ))
    })
}

fn grid(text: &str) -> Result<Vec<f64>, Failure> {
    Ok(match parse_t(text)? {
        TSpec::Point(t) => vec![t],
        TSpec::Grid { start, stop, count } => {
            scan::linspace(start, stop, count).map_err(|e| Failure::Parse(format!("`{text}`: {e}")))?
        }
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let opts = options(cli)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Compute {
            measure: name,
            distribution,
            t,
            n,
        } => {
            let m = measure(name)?;
            let dist = parse_distribution(distribution)?;
            let v = scan::evaluate(m, &dist, *t, *n, &opts)?;
            writeln!(out, "{} ({})", real(v.value), v.method)?;
        }
        Command::Scan {
            measure: name,
            distribution,
            t,
            n,
        } => {
            let m = measure(name)?;
            let dist = parse_distribution(distribution)?;
            scan_command(&mut out, m, &dist, t.as_deref(), n.as_deref(), &opts)?;
        }
        Command::Figure { which } => figure_command(&mut out, *which, &opts)?,
        Command::Verify {
            distributions,
            against,
            report,
        } => verify_command(&mut out, distributions, against.as_deref(), *report, &opts)?,
        Command::Reconstruct { distribution, t } => {
            let dist = parse_distribution(distribution)?;
            let rows = scan::reconstruction_table(&dist, &grid(t)?, &opts)?;
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["t", "reconstructed", "direct", "abs_diff"])?;
            for r in rows {
                w.write_record([real(r.t), real(r.reconstructed), real(r.direct), real(r.abs_diff)])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

fn scan_command(
    out: &mut impl Write,
    m: Measure,
    dist: &Distribution,
    t: Option<&str>,
    n: Option<&str>,
    opts: &EvalOptions,
) -> Result<(), Failure> {
    let n = n.map(parse_n).transpose()?;
    let result = match n {
        Some(NSpec::Range(a, b)) => {
            let t = match t.map(parse_t).transpose()? {
                None => None,
                Some(TSpec::Point(t)) => Some(t),
                Some(TSpec::Grid { .. }) => {
                    return Err(Failure::Parse("scan over n takes a single --t value".into()));
                }
            };
            scan::scan_n(m, dist, a, b, t, opts)?
        }
        point => {
            let t = t.ok_or_else(|| Failure::Parse("scan needs --t start:stop:count or --n start:stop".into()))?;
            let n = match point {
                Some(NSpec::Point(n)) => Some(n),
                _ => None,
            };
            scan::scan_t(m, dist, &grid(t)?, n, opts)?
        }
    };
    let axis = match result.axis {
        Axis::T => "t",
        Axis::N => "n",
    };
    for (p, e) in &result.skipped {
        eprintln!("warning: {axis} = {} skipped: {e}", real(*p));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record([axis, "value", "method", "error_estimate"])?;
    for (p, v) in result.points.iter().zip(&result.values) {
        w.write_record([real(*p), real(v.value), v.method.to_string(), real(v.error_estimate)])?;
    }
    w.flush()?;
    Ok(())
}

fn figure_command(out: &mut impl Write, which: u8, opts: &EvalOptions) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    if which == 3 {
        w.write_record(["t", "past_extropy", "neg_half_tau"])?;
        for r in scan::bound_figure(opts)? {
            w.write_record([real(r.t), real(r.past_extropy), real(r.neg_half_tau)])?;
        }
    } else {
        let which = if which == 1 { Extreme::Max } else { Extreme::Min };
        w.write_record(["n", "value"])?;
        for (n, v) in scan::order_statistic_figure(which, opts)? {
            w.write_record([n.to_string(), real(v)])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn verify_command(
    out: &mut impl Write,
    specs: &[String],
    against: Option<&str>,
    format: ReportFormat,
    opts: &EvalOptions,
) -> Result<(), Failure> {
    let dists = specs
        .iter()
        .map(|s| parse_distribution(s))
        .collect::<Result<Vec<_>, _>>()?;
    let other = against.map(|s| parse_distribution(s).map(|d| (s, d))).transpose()?;
    let mut report = verify::VerificationReport::default();
    for (label, dist) in specs.iter().zip(&dists) {
        report.merge(verify::verify_distribution(dist, label, opts));
        if let Some((other_label, other)) = &other {
            report.merge(verify::compare(dist, label, other, other_label, opts));
        }
    }
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            for (name, check) in &report.checks {
                let status = if check.pass { "PASS" } else { "FAIL" };
                write!(out, "{status} {name} max_error={}", real(check.max_error))?;
                if let Some(v) = check.verdict {
                    write!(out, " verdict={v:?}")?;
                }
                writeln!(out)?;
                for wit in check
                    .witnesses
                    .iter()
                    .filter(|_| !check.pass || check.verdict.is_some())
                {
                    writeln!(out, "    {}", wit.detail)?;
                }
                if let Some(note) = &check.note {
                    writeln!(out, "    note: {note}")?;
                }
            }
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}
