//! Seeded experiment runner emitting machine-readable reports.
//!
//! Every subcommand is a pure function of its flags: JSON goes to standard
//! output (or `--out`) as a single line with a leading `schema_version`, CSV
//! uses LF endings and at least 12 significant digits per value. Exit codes:
//! 0 success, 1 tolerance breach or I/O failure, 2 usage error.

use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use entdisc::discrimination::{
    payoff_sweep, run_discrimination_mc_parallel, run_pryde_baseline, verify_rho,
    ExperimentConfig,
};
use entdisc::ensemble::{max_separability_margin, q_of};

/// Largest quadrature-versus-closed-form deviation `verify-rho` accepts.
const VERIFY_GATE: f64 = 1e-10;
/// Largest separability margin `separability` accepts.
const SEPARABILITY_GATE: f64 = 1e-12;
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "entdisc", version, about = "Two-qubit state-discrimination experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the ensemble average over the hidden angles with its closed form.
    VerifyRho {
        /// Schmidt angle α in radians; "0.5pi" style suffixes are accepted.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        /// Relative phase β in radians.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        beta: f64,
        /// Quadrature points per hidden angle.
        #[arg(long, default_value_t = 16, value_parser = parse_grid)]
        grid: usize,
    },
    /// Run the seeded two-ensemble discrimination experiment.
    Discriminate {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha1: f64,
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        beta1: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha2: f64,
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        beta2: f64,
        /// Probability of preparing the first ensemble.
        #[arg(long, default_value_t = 0.5, value_parser = parse_prior)]
        prior1: f64,
        #[arg(long, value_parser = parse_count)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the report is identical for any value.
        #[arg(long, default_value_t = 1, value_parser = parse_threads)]
        threads: usize,
    },
    /// Tabulate the optimal payoff over an (α₁, α₂) grid as CSV.
    Sweep {
        #[arg(long, value_parser = parse_steps)]
        alpha_steps: usize,
    },
    /// Run the product-state baseline with the symmetric/antisymmetric measurement.
    Pryde {
        #[arg(long, value_parser = parse_count)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that sampled ensemble averages stay separable.
    Separability {
        #[arg(long, value_parser = parse_count)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = if let Some(head) = t.strip_suffix("pi") {
        let factor = match head.trim_end() {
            "" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| format!("invalid angle '{s}'"))?,
        };
        factor * PI
    } else {
        t.parse::<f64>().map_err(|_| format!("invalid angle '{s}'"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle '{s}' is not finite"))
    }
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("invalid grid size '{s}'"))?;
    if v >= 8 {
        Ok(v)
    } else {
        Err("grid must be ≥ 8".into())
    }
}

fn parse_count(s: &str) -> Result<u64, String> {
    let v: u64 = s.parse().map_err(|_| format!("invalid count '{s}'"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be ≥ 1".into())
    }
}

fn parse_threads(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("invalid thread count '{s}'"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("threads must be ≥ 1".into())
    }
}

fn parse_steps(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("invalid step count '{s}'"))?;
    if v >= 2 {
        Ok(v)
    } else {
        Err("alpha-steps must be ≥ 2".into())
    }
}

fn parse_prior(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid probability '{s}'"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("prior1 must lie in [0, 1]".into())
    }
}

/// Wraps a report so the version marker is the first JSON key.
#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

impl<T: Serialize> Versioned<T> {
    fn new(body: T) -> Self {
        Versioned {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }
}

#[derive(Serialize)]
struct VerifyRhoReport {
    alpha: f64,
    beta: f64,
    q: f64,
    max_abs_diff: f64,
    grid: usize,
}

#[derive(Serialize)]
struct SeparabilityReport {
    samples: u64,
    seed: u64,
    max_margin: f64,
}

/// Formats with the shortest round-trip representation, zero-padded to at
/// least 12 significant digits.
fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".into();
    }
    let mut s = format!("{x}");
    if !s.contains('.') {
        s.push('.');
    }
    let unsigned = s.strip_prefix('-').unwrap_or(&s);
    let digits = unsigned.chars().filter(char::is_ascii_digit).count();
    let leading_zeros = unsigned
        .chars()
        .take_while(|&c| c == '0' || c == '.')
        .filter(|&c| c == '0')
        .count();
    let significant = digits - leading_zeros;
    s + &"0".repeat(12usize.saturating_sub(significant))
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, body: T) -> io::Result<()> {
    let line = serde_json::to_string(&Versioned::new(body)).expect("report serializes");
    emit(out, &format!("{line}\n"))
}

fn run(cli: Cli) -> io::Result<bool> {
    match cli.command {
        Command::VerifyRho { alpha, beta, grid } => {
            let max_abs_diff = verify_rho(alpha, beta, grid);
            emit_json(
                &cli.out,
                VerifyRhoReport {
                    alpha,
                    beta,
                    q: q_of(alpha, beta).value(),
                    max_abs_diff,
                    grid,
                },
            )?;
            Ok(max_abs_diff <= VERIFY_GATE)
        }
        Command::Discriminate {
            alpha1,
            beta1,
            alpha2,
            beta2,
            prior1,
            trials,
            seed,
            threads,
        } => {
            let config = ExperimentConfig {
                alpha1,
                beta1,
                alpha2,
                beta2,
                prior1,
                trials,
                seed,
            };
            let report = run_discrimination_mc_parallel(&config, threads)
                .map_err(|e| io::Error::other(e.to_string()))?;
            emit_json(&cli.out, report)?;
            Ok(true)
        }
        Command::Sweep { alpha_steps } => {
            let mut csv = String::from("alpha1,alpha2,optimal_payoff\n");
            for row in payoff_sweep(alpha_steps) {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    fmt_sig12(row.alpha1),
                    fmt_sig12(row.alpha2),
                    fmt_sig12(row.optimal_payoff)
                ));
            }
            emit(&cli.out, &csv)?;
            Ok(true)
        }
        Command::Pryde { trials, seed } => {
            let report =
                run_pryde_baseline(trials, seed).map_err(|e| io::Error::other(e.to_string()))?;
            emit_json(&cli.out, report)?;
            Ok(true)
        }
        Command::Separability { samples, seed } => {
            let max_margin = max_separability_margin(samples, seed);
            emit_json(
                &cli.out,
                SeparabilityReport {
                    samples,
                    seed,
                    max_margin,
                },
            )?;
            Ok(max_margin <= SEPARABILITY_GATE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
