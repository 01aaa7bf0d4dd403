//! `rrpi` command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or
//! configuration error, 3 numeric failure.

pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rrpi_core::observations::{ellipse_readings, rho_variants};
use rrpi_core::piladder::context_for;
use rrpi_core::{
    digits_of_2pi, ellipse_axis_from_perimeter, ladder, table1, verify, DigitRounding, PrecisionContext, Real,
    Scheme, VerifyOptions,
};

use report::{
    DigitsReport, EllipseReport, EllipseRow, LadderReport, LadderRow, NamedValue, Report, RhoReport, RhoRow,
    Table1Report, VerifyRecord, VerifyReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

/// Precision used by the observation commands when none is given.
const DEFAULT_PRECISION: u32 = 64;

#[derive(Debug, Parser)]
#[command(name = "rrpi", version, about = "2π from the Rogers–Ramanujan continued fraction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Target decimal digits (at least 10). Ladder commands size themselves
    /// when omitted.
    #[arg(long, value_parser = clap::value_parser!(u32).range(10..))]
    pub precision: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LevelGuard {
    /// Permit levels beyond the tested range (deg5 <= 6, deg11 <= 3).
    #[arg(long)]
    pub allow_untested: bool,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: rrpi_core::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified leading digits of 2π from one ladder rung.
    Digits {
        #[arg(long, default_value = "deg5", value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[command(flatten)]
        guard: LevelGuard,
        #[command(flatten)]
        output: Output,
    },
    /// Check every published constant.
    Verify {
        /// Perturb the named check before matching.
        #[arg(long, hide = true)]
        tamper: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Error and correct digits at each rung of a ladder.
    Ladder {
        #[arg(long, default_value = "deg5", value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[command(flatten)]
        guard: LevelGuard,
        #[command(flatten)]
        output: Output,
    },
    /// The constant ρ from inverting R(q) = 2π − 6.
    Rho {
        #[command(flatten)]
        output: Output,
    },
    /// Near-circular ellipses with the observed perimeters.
    Ellipse {
        /// Invert this perimeter instead of the built-in ones.
        #[arg(long)]
        perimeter: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// The five ordered terms and their gaps.
    Table1 {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rrpi_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Write { .. } => EXIT_USAGE,
            CliError::Core(e) if e.is_configuration() => EXIT_USAGE,
            CliError::Core(_) | CliError::Json(_) => EXIT_NUMERIC,
        }
    }
}

/// A finished command: its report and whether it found a mismatch.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub mismatch: bool,
}

impl Command {
    pub fn output(&self) -> &Output {
        match self {
            Command::Digits { output, .. }
            | Command::Verify { output, .. }
            | Command::Ladder { output, .. }
            | Command::Rho { output }
            | Command::Ellipse { output, .. }
            | Command::Table1 { output } => output,
        }
    }
}

fn check_level(scheme: Scheme, level: u32, guard: &LevelGuard) -> Result<(), CliError> {
    if level > scheme.tested_max() && !guard.allow_untested {
        return Err(CliError::Usage(format!(
            "{scheme} level {level} is beyond the tested range (max {}); pass --allow-untested to run it anyway",
            scheme.tested_max()
        )));
    }
    Ok(())
}

fn ladder_context(scheme: Scheme, level: u32, precision: Option<u32>) -> Result<PrecisionContext, CliError> {
    Ok(match precision {
        Some(p) => PrecisionContext::new(p)?,
        None => context_for(scheme, level)?,
    })
}

/// Significant digits shown for a value at this precision.
fn shown(ctx: &PrecisionContext) -> usize {
    ctx.target_digits().min(40) as usize
}

fn plain(x: &Real, n: usize) -> String {
    x.sig_digits(n, DigitRounding::Nearest).to_plain()
}

/// Execute a command.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let precision = command.output().precision;
    let obs_ctx = || PrecisionContext::new(precision.unwrap_or(DEFAULT_PRECISION));
    let report = match command {
        Command::Digits {
            scheme, level, guard, ..
        } => {
            check_level(*scheme, *level, guard)?;
            let ctx = ladder_context(*scheme, *level, precision)?;
            let start = Instant::now();
            let d = digits_of_2pi(*scheme, *level, &ctx)?;
            Report::Digits(DigitsReport {
                scheme: scheme.to_string(),
                level: *level,
                k: d.k,
                working_digits: ctx.working_digits(),
                digits: d.digits,
                wall_time: format!("{:.3}", start.elapsed().as_secs_f64()),
            })
        }
        Command::Verify { tamper, .. } => {
            let opts = VerifyOptions {
                precision: precision.unwrap_or(DEFAULT_PRECISION),
                tamper: tamper.clone(),
            };
            let checks = verify(&opts)?
                .into_iter()
                .map(|c| VerifyRecord {
                    id: c.id,
                    computed: c.computed,
                    paper: c.paper,
                    matched: c.matched,
                    note: c.note,
                })
                .collect();
            Report::Verify(VerifyReport { checks })
        }
        Command::Ladder {
            scheme, levels, guard, ..
        } => {
            check_level(*scheme, *levels, guard)?;
            let ctx = ladder_context(*scheme, *levels, precision)?;
            let rows = ladder(*scheme, *levels, &ctx)?
                .iter()
                .map(|st| {
                    let rep = st.digit_report()?;
                    Ok(LadderRow {
                        level: st.level,
                        alpha: st.alpha,
                        error: st.signed_error.to_sci(12),
                        error_exponent: rep.error_exponent,
                        k_correct: rep.k_correct,
                    })
                })
                .collect::<Result<Vec<_>, rrpi_core::Error>>()?;
            Report::Ladder(LadderReport {
                scheme: scheme.to_string(),
                working_digits: ctx.working_digits(),
                rows,
            })
        }
        Command::Rho { .. } => {
            let ctx = obs_ctx()?;
            let n = shown(&ctx);
            let reps = rho_variants(&ctx)?;
            Report::Rho(RhoReport {
                precision: ctx.target_digits(),
                q: reps[0].q.to_sci(n),
                rows: reps
                    .iter()
                    .map(|r| RhoRow {
                        base_label: r.label.to_string(),
                        base: plain(&r.base, n),
                        ratio: plain(&r.ratio, n),
                        rho: plain(&r.rho, n),
                    })
                    .collect(),
            })
        }
        Command::Ellipse { perimeter, .. } => {
            let ctx = obs_ctx()?;
            let n = shown(&ctx);
            match perimeter {
                Some(p) => {
                    let p_val = ctx.parse(p)?;
                    let d = ellipse_axis_from_perimeter(&p_val, &ctx)?;
                    Report::Ellipse(EllipseReport {
                        precision: ctx.target_digits(),
                        rows: vec![EllipseRow {
                            label: "input".into(),
                            perimeter: p.clone(),
                            d: Some(plain(&d, n)),
                        }],
                        comparison: None,
                    })
                }
                None => {
                    let (readings, cmp) = ellipse_readings(&ctx)?;
                    Report::Ellipse(EllipseReport {
                        precision: ctx.target_digits(),
                        rows: readings
                            .iter()
                            .map(|r| EllipseRow {
                                label: r.label.to_string(),
                                perimeter: plain(&r.perimeter, n),
                                d: r.d.as_ref().map(|d| plain(d, n)),
                            })
                            .collect(),
                        comparison: Some(plain(&cmp, n)),
                    })
                }
            }
        }
        Command::Table1 { .. } => {
            let ctx = obs_ctx()?;
            let n = shown(&ctx);
            let t = table1(&ctx)?;
            let named = |(name, v): &(&str, Real)| NamedValue {
                name: name.to_string(),
                value: plain(v, n),
            };
            Report::Table1(Table1Report {
                precision: ctx.target_digits(),
                values: t.values.iter().map(named).collect(),
                differences: t.differences.iter().map(named).collect(),
            })
        }
    };
    let mismatch = matches!(&report, Report::Verify(v) if v.failures().next().is_some());
    Ok(Outcome { report, mismatch })
}

/// Render an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Text => outcome.report.render_text(),
        Format::Json => outcome.report.to_json()?,
    })
}

/// Run a parsed command line, writing output, and return the exit code.
pub fn run(cli: &Cli) -> u8 {
    let output = cli.command.output();
    let result = execute(&cli.command).and_then(|o| {
        let text = render(&o, output.format)?;
        match &output.out {
            Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?,
            None => print!("{text}"),
        }
        Ok(o)
    });
    match result {
        Ok(o) if o.mismatch => {
            if let Report::Verify(v) = &o.report {
                for f in v.failures() {
                    eprintln!("mismatch: {} computed {} paper {}", f.id, f.computed, f.paper);
                }
            }
            EXIT_MISMATCH
        }
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("rrpi: {e}");
            e.exit_code()
        }
    }
}
