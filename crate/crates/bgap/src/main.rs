use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bgap::report::{to_csv, to_text};
use bgap::{run_identity, run_scan, CliError, OutputFormat, ScanConfig, ScanReport, MAX_N};
use bgap_core::gap::gap_coefficients;
use bgap_core::{FunctionSpec, Mode, Rational};
use clap::{Parser, Subcommand};

/// Exact verification of Bernstein midpoint convexity gaps.
#[derive(Parser, Debug)]
#[command(name = "bgap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gap identity on seeded random (x, y, samples) cases.
    Identity {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_N as i64))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Taylor coefficients c_0..c_{2n-2} of the gap polynomial at -1.
    Coeffs {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_N as i64))]
        n: u32,
        /// Rational in [0, 1], as P/Q or an integer.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Evaluate every gap on the grid {0, 1/G, ..., 1}^2.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_N as i64))]
        n: u32,
        /// Function spec: eP, abs:C, hat:C, pwl:T,V;T,V;..., exp
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall time in the output (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_point(name: &str, text: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Identity { n, trials, seed } => {
            let summary = run_identity(n as usize, trials as usize, seed)?;
            println!("{summary}");
            if let Some(case) = &summary.first_failure {
                return Err(CliError::Violation(format!("first failing case: {case}")));
            }
        }
        Command::Coeffs { n, x, y } => {
            let (x, y) = (parse_point("x", &x)?, parse_point("y", &y)?);
            let coeffs = gap_coefficients(n as usize, &x, &y)?;
            let line: Vec<String> = coeffs.c.iter().map(ToString::to_string).collect();
            println!("{}", line.join(" "));
        }
        Command::Scan {
            n,
            function,
            grid,
            mode,
            format,
            out,
            seed,
            timing,
        } => {
            let function: FunctionSpec = function.parse()?;
            let config = ScanConfig {
                n: n as usize,
                function,
                grid: grid as usize,
                mode,
                seed,
                format,
            };
            let result = run_scan(&config)?;
            let bytes = match format {
                OutputFormat::Json => ScanReport::from_result(&result, timing).to_json().into_bytes(),
                OutputFormat::Csv => to_csv(&result)?,
                OutputFormat::Text => to_text(&result, timing).into_bytes(),
            };
            emit(out.as_ref(), &bytes)?;
            if !result.convex_input {
                eprintln!("note: samples of {} are not convex; no verdict on gap4", config.function);
            }
            let violations = result.violations();
            if let Some(first) = violations.first() {
                return Err(CliError::Violation(format!(
                    "{} violation(s); first: {first}",
                    violations.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A downstream reader such as `head` closed the pipe.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bgap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
