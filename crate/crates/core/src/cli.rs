//! Command-line front end: emits the energy sweep as CSV or JSON, plus
//! single-point reports, the copy bound, channel tables, and the Monte Carlo
//! validations. Data goes to stdout (or `--out`), diagnostics to stderr;
//! exit status 0 on success, 2 on argument or domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{joint_distribution, mutual_information};
use crate::copier::{copy_closed_form, MediumNoise, SourceDistribution};
use crate::energy::{copy_bound, energy_report, sweep, GridSpacing, SweepRow};
use crate::error::Error;
use crate::matrix::DensityMatrix;
use crate::mc::{
    empirical_energy_audit, empirical_mutual_information, mutual_information_standard_error,
    simulate_channel, McConfig,
};
use crate::thermo::ThermalMedium;

#[derive(Debug, Parser)]
#[command(
    name = "qcopy",
    about = "Energy cost of copying one bit onto a thermally noisy two-level medium",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy-per-useful-bit curve over a grid of level splittings.
    Sweep {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        delta_min: f64,
        #[arg(long)]
        delta_max: f64,
        #[arg(long)]
        steps: usize,
        /// Use logarithmic grid spacing instead of linear.
        #[arg(long)]
        log: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum energy per useful copied bit, ln(4)/beta.
    Limit {
        #[arg(long)]
        beta: f64,
    },
    /// Full energy bookkeeping at one level splitting.
    Report {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Post-copy states for given source populations and error rate.
    Copy {
        #[arg(long)]
        p0: f64,
        #[arg(long)]
        b: f64,
    },
    /// Joint source/copy table and its transinformation.
    Channel {
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
    },
    /// Sample the channel and estimate the transinformation empirically.
    Mc {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
    },
    /// Sample the thermal energy bookkeeping empirically.
    McEnergy {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// Parses `argv` and runs the selected subcommand. Returns the process exit
/// status: 0 on success (also for --help/--version), 2 on argument or domain
/// errors, with a one-line diagnostic on stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{err}");
                return 0;
            }
            _ => {
                let rendered = err.to_string();
                eprintln!("{}", rendered.lines().next().unwrap_or("invalid arguments"));
                return 2;
            }
        },
    };
    let stdout = io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(CliError::Domain(err)) => {
            eprintln!("error: {err}");
            2
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {err}");
            2
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Serialize)]
struct SweepParams {
    beta: f64,
    delta_min: f64,
    delta_max: f64,
    steps: usize,
    spacing: &'static str,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    params: SweepParams,
    rows: &'a [SweepRow],
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Sweep {
            beta,
            delta_min,
            delta_max,
            steps,
            log,
            format,
            out,
        } => {
            let spacing = if log { GridSpacing::Log } else { GridSpacing::Linear };
            let rows = sweep(beta, delta_min, delta_max, steps, spacing)?;
            let params = SweepParams {
                beta,
                delta_min,
                delta_max,
                steps,
                spacing: if log { "log" } else { "linear" },
            };
            match out {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    write_sweep(&mut file, format, &params, &rows)?;
                    file.flush()?;
                }
                None => write_sweep(stdout, format, &params, &rows)?,
            }
        }
        Command::Limit { beta } => {
            ensure_positive("beta", beta)?;
            writeln!(stdout, "{}", copy_bound(beta))?;
        }
        Command::Report { beta, delta } => {
            let report = energy_report(&ThermalMedium::new(beta, delta)?)?;
            writeln!(stdout, "beta = {beta}")?;
            writeln!(stdout, "delta = {}", report.delta)?;
            writeln!(stdout, "b = {}", report.b)?;
            writeln!(stdout, "info_bits = {}", report.info_bits)?;
            writeln!(stdout, "redundancy_n = {}", report.redundancy_n)?;
            writeln!(stdout, "avg_energy_before = {}", report.avg_energy_before)?;
            writeln!(stdout, "avg_energy_after = {}", report.avg_energy_after)?;
            writeln!(stdout, "w_per_useful_bit = {}", report.w_per_useful_bit)?;
        }
        Command::Copy { p0, b } => {
            let result = copy_closed_form(&SourceDistribution::from_p0(p0)?, &MediumNoise::new(b)?);
            writeln!(stdout, "reduced_a = {}", format_diagonal(&result.reduced_a))?;
            writeln!(stdout, "reduced_b = {}", format_diagonal(&result.reduced_b))?;
            writeln!(stdout, "joint_diagonal = {}", format_diagonal(&result.joint_after))?;
            writeln!(stdout, "joint =")?;
            for row in 0..4 {
                let cells: Vec<String> = (0..4)
                    .map(|col| format_complex(result.joint_after.matrix().get(row, col)))
                    .collect();
                writeln!(stdout, "[{}]", cells.join(", "))?;
            }
        }
        Command::Channel { b, p0 } => {
            let joint = joint_distribution(&SourceDistribution::from_p0(p0)?, &MediumNoise::new(b)?);
            let p = joint.probabilities();
            writeln!(
                stdout,
                "joint = [[{}, {}], [{}, {}]]",
                p[0][0], p[0][1], p[1][0], p[1][1]
            )?;
            let px = joint.x_marginal();
            let py = joint.y_marginal();
            writeln!(stdout, "p_x = [{}, {}]", px[0], px[1])?;
            writeln!(stdout, "p_y = [{}, {}]", py[0], py[1])?;
            writeln!(stdout, "info_bits = {}", mutual_information(&joint).bits)?;
        }
        Command::Mc { b, trials, seed, p0 } => {
            let config = McConfig::new(
                trials,
                seed,
                SourceDistribution::from_p0(p0)?,
                MediumNoise::new(b)?,
            )?;
            let counts = simulate_channel(&config);
            writeln!(stdout, "n00 = {}", counts.n00)?;
            writeln!(stdout, "n01 = {}", counts.n01)?;
            writeln!(stdout, "n10 = {}", counts.n10)?;
            writeln!(stdout, "n11 = {}", counts.n11)?;
            writeln!(stdout, "trials = {}", counts.trials)?;
            writeln!(
                stdout,
                "empirical_info_bits = {}",
                empirical_mutual_information(&counts).bits
            )?;
            writeln!(
                stdout,
                "standard_error = {}",
                mutual_information_standard_error(&counts)
            )?;
        }
        Command::McEnergy {
            beta,
            delta,
            trials,
            seed,
        } => {
            let medium = ThermalMedium::new(beta, delta)?;
            let closed = energy_report(&medium)?.w_per_useful_bit;
            let audited = empirical_energy_audit(&medium, trials, seed)?;
            writeln!(stdout, "closed_form_w = {closed}")?;
            writeln!(stdout, "empirical_w = {audited}")?;
        }
    }
    Ok(())
}

fn ensure_positive(name: &'static str, value: f64) -> Result<(), Error> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            requirement: "positive and finite",
        })
    }
}

/// CSV uses the shortest round-trip decimal for each value (Rust's default
/// float formatting), LF line endings, no trailing separator. The JSON
/// document mirrors the same columns under `rows`.
fn write_sweep(
    out: &mut dyn Write,
    format: OutputFormat,
    params: &SweepParams,
    rows: &[SweepRow],
) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "delta,b,info_bits,redundancy_n,w")?;
            for r in rows {
                writeln!(out, "{},{},{},{},{}", r.delta, r.b, r.info_bits, r.redundancy_n, r.w)?;
            }
        }
        OutputFormat::Json => {
            let document = SweepDocument {
                params: SweepParams {
                    beta: params.beta,
                    delta_min: params.delta_min,
                    delta_max: params.delta_max,
                    steps: params.steps,
                    spacing: params.spacing,
                },
                rows,
            };
            serde_json::to_writer_pretty(&mut *out, &document)
                .map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn format_diagonal(rho: &DensityMatrix) -> String {
    let cells: Vec<String> = rho.diagonal().iter().map(|d| d.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
