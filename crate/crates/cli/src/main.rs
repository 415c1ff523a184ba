//! Command-line frontend for the exact modified-equation engine.
//!
//! Every derivation pathway in the library is reachable from a subcommand;
//! exact values are printed as `num/den` strings so output can be piped
//! back into tests without loss, and floats appear only in the simulation
//! and figure outputs. Identical arguments produce byte-identical output.
//!
//! Exit codes: 0 success, 1 domain error (for example a step size outside
//! `(0, 2)` in a frequency query), 2 usage error.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use modeq_core::basel::{
    basel_partial_sum, central_partial_sum, decimal_string, factor_three_partial_check,
    DECIMAL_DIGITS,
};
use modeq_core::chebyshev::{
    periodicity_check, solve_recurrence, stencil_sum_identity_check, stencil_weight_polynomial,
};
use modeq_core::cramer::{
    coefficient_via_cramer, numerator_leading_minor, vandermonde_denominator,
};
use modeq_core::modified_eq::{
    arcsin_sq_expansion, arcsin_sq_via_reversion, arcsine_multiplier, SchemeKind,
};
use modeq_core::rational::{parse_rational, rat_int, to_fraction_string};
use modeq_core::series::SeriesJson;
use modeq_core::simulate::{
    discrete_trace, figure1_csv, format_significant, frequency_ladder, residual_order_estimate,
    standard_residual_grid, write_figure1_csv, write_figure1_svg,
};
use modeq_core::{Rational, RationalSeries};

#[derive(Parser)]
#[command(
    name = "modeq",
    version,
    about = "Exact modified equations for linear difference schemes",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Euler,
    Verlet,
}

impl Scheme {
    fn kind(self) -> SchemeKind {
        match self {
            Scheme::Euler => SchemeKind::Euler,
            Scheme::Verlet => SchemeKind::Verlet,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pathway {
    /// Order-by-order substitution into the stencil.
    Substitution,
    /// Series reversion of sine; symmetric scheme only.
    Arcsine,
    /// The product formula for the coefficients.
    ClosedForm,
}

impl Pathway {
    fn label(self) -> &'static str {
        match self {
            Pathway::Substitution => "substitution",
            Pathway::Arcsine => "arcsine",
            Pathway::ClosedForm => "closed_form",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutArg {
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the modified-equation multiplier series of a scheme.
    Derive {
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Truncation order of the series in the step size.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "substitution")]
        pathway: Pathway,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compare the arcsine-squared expansion with its reversion-built twin.
    Arcsin {
        /// Even truncation order.
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Determinant route to the k-th closed-form coefficient.
    Cramer {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Stencil weight polynomial, shift identity, and periodicity checks.
    Chebyshev {
        /// Shift distance k of the identity x_{j-k} + x_{j+k} = w_k(h) x_j.
        #[arg(long)]
        k: usize,
        /// Step size as a rational, e.g. 1 or 1/2; enables the identity check.
        #[arg(long, value_parser = parse_rational_arg)]
        h: Option<Rational>,
        /// Also test whether every solution repeats with this period.
        #[arg(long, value_name = "PERIOD", requires = "h")]
        check_period: Option<usize>,
        /// Number of recurrence steps used by the checks.
        #[arg(long, default_value_t = 120)]
        span: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Partial sums converging to pi^2/6, raw or accelerated.
    Basel {
        /// Number of series terms.
        #[arg(long)]
        terms: usize,
        /// Sum the accelerated series times three (target pi^2/6).
        #[arg(long, conflicts_with = "central")]
        accelerated: bool,
        /// Sum the accelerated series alone (target pi^2/18).
        #[arg(long)]
        central: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Floating-point views: frequency ladder, residual orders, traces.
    Simulate {
        #[command(subcommand)]
        what: SimulateCommand,
    },
    /// Emit the unit-step comparison figure as CSV (optionally SVG).
    Figure1 {
        #[command(flatten)]
        out: OutArg,
        /// Also write an SVG rendering here.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Discrete frequency and its truncated approximations at step h.
    Ladder {
        /// Step size as a rational in (0, 2), e.g. 1 or 1/2.
        #[arg(long, value_parser = parse_rational_arg)]
        h: Rational,
        #[command(flatten)]
        out: OutArg,
    },
    /// Least-squares residual order on the dyadic grid 2^-3 ..= 2^-8.
    Residual {
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Keep the multiplier series through this order in the step size.
        #[arg(long)]
        keep: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// CSV trace of the recurrence next to the modified interpolants.
    Trace {
        /// Step size as a rational in (0, 2), e.g. 1 or 1/2.
        #[arg(long, value_parser = parse_rational_arg)]
        h: Rational,
        /// Number of recurrence steps.
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failures after argument parsing: domain errors exit 1; usage errors that
/// clap cannot see (inconsistent flag values) exit 2.
enum CliError {
    Domain(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<modeq_core::Error> for CliError {
    fn from(e: modeq_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str, out: &OutArg) -> Result<(), CliError> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output structs always serialize")
}

#[derive(Serialize)]
struct DeriveOutput {
    scheme: &'static str,
    order: usize,
    multiplier: SeriesJson,
    pathway: &'static str,
}

#[derive(Serialize)]
struct ArcsinOutput {
    order: usize,
    closed_form: SeriesJson,
    via_reversion: SeriesJson,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct CramerOutput {
    k: usize,
    denominator: String,
    minor: String,
    coefficient: String,
}

#[derive(Serialize)]
struct ChebyshevOutput {
    k: usize,
    weight_polynomial: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    periodic: Option<bool>,
}

#[derive(Serialize)]
struct BaselOutput {
    n: usize,
    exact: String,
    decimal: String,
    target: &'static str,
}

#[derive(Serialize)]
struct LadderOutput {
    h: f64,
    omega_exact: f64,
    omega_0: f64,
    omega_1: f64,
    omega_2: f64,
}

#[derive(Serialize)]
struct ResidualOutput {
    scheme: &'static str,
    keep_order: usize,
    grid: Vec<f64>,
    slope: f64,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Derive {
            scheme,
            order,
            pathway,
            format,
            out,
        } => derive_cmd(scheme, order, pathway, format, &out),
        Command::Arcsin { order, out } => {
            if order % 2 != 0 {
                return Err(CliError::Domain(format!(
                    "the expansion is even; order {order} must be even"
                )));
            }
            let closed = arcsin_sq_expansion(order);
            let reverted = arcsin_sq_via_reversion(order);
            let output = ArcsinOutput {
                order,
                matches: closed == reverted,
                closed_form: SeriesJson::from_series(&closed),
                via_reversion: SeriesJson::from_series(&reverted),
            };
            emit(&to_json(&output), &out)
        }
        Command::Cramer { k, out } => {
            if k == 0 {
                return Err(CliError::Domain("k must be at least 1".into()));
            }
            let output = CramerOutput {
                k,
                denominator: to_fraction_string(&vandermonde_denominator(k)),
                minor: to_fraction_string(&numerator_leading_minor(k)),
                coefficient: to_fraction_string(&coefficient_via_cramer(k)),
            };
            emit(&to_json(&output), &out)
        }
        Command::Chebyshev {
            k,
            h,
            check_period,
            span,
            out,
        } => chebyshev_cmd(k, h, check_period, span, &out),
        Command::Basel {
            terms,
            accelerated,
            central,
            out,
        } => {
            if terms == 0 {
                return Err(CliError::Domain("need at least one term".into()));
            }
            let output = if accelerated {
                let exact = factor_three_partial_check(terms);
                BaselOutput {
                    n: terms,
                    decimal: decimal_string(&exact, DECIMAL_DIGITS),
                    exact: to_fraction_string(&exact),
                    target: "pi^2/6",
                }
            } else if central {
                let tally = central_partial_sum(terms);
                BaselOutput {
                    n: terms,
                    exact: to_fraction_string(&tally.exact_sum),
                    decimal: tally.decimal_value,
                    target: "pi^2/18",
                }
            } else {
                let tally = basel_partial_sum(terms);
                BaselOutput {
                    n: terms,
                    exact: to_fraction_string(&tally.exact_sum),
                    decimal: tally.decimal_value,
                    target: "pi^2/6",
                }
            };
            emit(&to_json(&output), &out)
        }
        Command::Simulate { what } => simulate_cmd(what),
        Command::Figure1 { out, svg } => {
            if let Some(path) = svg {
                write_figure1_svg(&path)?;
            }
            match &out.out {
                Some(path) => write_figure1_csv(path)?,
                None => print!("{}", figure1_csv()),
            }
            Ok(())
        }
    }
}

fn derive_cmd(
    scheme: Scheme,
    order: usize,
    pathway: Pathway,
    format: Format,
    out: &OutArg,
) -> Result<(), CliError> {
    if pathway == Pathway::Arcsine && scheme != Scheme::Verlet {
        return Err(CliError::Usage(
            "the arcsine pathway applies to the symmetric scheme only (--scheme verlet)".into(),
        ));
    }
    let kind = scheme.kind();
    let multiplier: RationalSeries = match pathway {
        Pathway::Substitution => kind.derive(order)?.into_multiplier(),
        Pathway::ClosedForm => {
            if kind == SchemeKind::Verlet && !order.is_multiple_of(2) {
                return Err(modeq_core::Error::OddTruncationOrder(order).into());
            }
            kind.closed_form(order)
        }
        Pathway::Arcsine => {
            if !order.is_multiple_of(2) {
                return Err(modeq_core::Error::OddTruncationOrder(order).into());
            }
            arcsine_multiplier(order)
        }
    };
    match format {
        Format::Json => {
            let output = DeriveOutput {
                scheme: kind.name(),
                order,
                multiplier: SeriesJson::from_series(&multiplier),
                pathway: pathway.label(),
            };
            emit(&to_json(&output), out)
        }
        Format::Csv => {
            let mut text = String::from("power,coefficient\n");
            for (power, c) in multiplier.coeffs().iter().enumerate() {
                text.push_str(&format!("{power},{}\n", to_fraction_string(c)));
            }
            emit(&text, out)
        }
    }
}

fn chebyshev_cmd(
    k: usize,
    h: Option<Rational>,
    check_period: Option<usize>,
    span: usize,
    out: &OutArg,
) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Domain("the shift k must be at least 1".into()));
    }
    let weight_polynomial = stencil_weight_polynomial(k)
        .coeffs()
        .iter()
        .map(to_fraction_string)
        .collect();
    let mut output = ChebyshevOutput {
        k,
        weight_polynomial,
        h: None,
        identity_holds: None,
        periodic: None,
    };
    if let Some(h) = h {
        if span < 2 * k + 1 {
            return Err(CliError::Usage(format!(
                "--span {span} is too short to place the shift: need at least {}",
                2 * k + 1
            )));
        }
        // Linearity makes the two basis seeds cover every solution.
        let holds = [(rat_int(1), rat_int(0)), (rat_int(0), rat_int(1))]
            .into_iter()
            .map(|(x0, x1)| {
                let sol = solve_recurrence(&h, x0, x1, span);
                stencil_sum_identity_check(&sol, k)
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|ok| ok);
        output.identity_holds = Some(holds);
        if let Some(period) = check_period {
            if period == 0 {
                return Err(CliError::Domain("period must be at least 1".into()));
            }
            if span < 2 * period {
                return Err(CliError::Usage(format!(
                    "--span {span} cannot watch a period of {period}: need at least {}",
                    2 * period
                )));
            }
            output.periodic = Some(periodicity_check(&h, period, span));
        }
        output.h = Some(to_fraction_string(&h));
    }
    emit(&to_json(&output), out)
}

fn step_to_f64(h: &Rational) -> Result<f64, CliError> {
    h.to_f64().ok_or_else(|| {
        CliError::Domain(format!("step size {} overflows f64", to_fraction_string(h)))
    })
}

fn simulate_cmd(what: SimulateCommand) -> Result<(), CliError> {
    match what {
        SimulateCommand::Ladder { h, out } => {
            let ladder = frequency_ladder(step_to_f64(&h)?)?;
            let output = LadderOutput {
                h: ladder.h,
                omega_exact: ladder.omega_exact,
                omega_0: ladder.omega_0,
                omega_1: ladder.omega_1,
                omega_2: ladder.omega_2,
            };
            emit(&to_json(&output), &out)
        }
        SimulateCommand::Residual { scheme, keep, out } => {
            let grid = standard_residual_grid();
            let slope = residual_order_estimate(scheme.kind(), keep, &grid)?;
            let output = ResidualOutput {
                scheme: scheme.kind().name(),
                keep_order: keep,
                grid,
                slope,
            };
            emit(&to_json(&output), &out)
        }
        SimulateCommand::Trace { h, steps, out } => {
            if steps == 0 {
                return Err(CliError::Domain("need at least one step".into()));
            }
            let h = step_to_f64(&h)?;
            let ladder = frequency_ladder(h)?;
            let dots = discrete_trace(h, steps, 1.0, (ladder.omega_exact * h).cos());
            let mut text = String::from("t,discrete,exact,mod2,mod4\n");
            for &(t, x) in &dots.samples {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format_significant(t, 15),
                    format_significant(x, 15),
                    format_significant((ladder.omega_exact * t).cos(), 15),
                    format_significant((ladder.omega_1 * t).cos(), 15),
                    format_significant((ladder.omega_2 * t).cos(), 15),
                ));
            }
            emit(&text, &out)
        }
    }
}
