//! `semiwkb`: command-line spectra, eigenfunction sampling, and trajectory
//! fits for relativistic semiclassical bound states.
//!
//! Exit status: 0 on success, 1 on a usage error (bad flags or an invalid
//! combination), 2 on a numerical failure (no bound state, non-convergence,
//! degenerate fit, unreadable data).

mod commands;
mod record;

use std::process::ExitCode;

use clap::Parser;

use commands::{CompareArgs, Globals, ReggeArgs, SpectrumArgs, Table1Args, WavefunctionArgs};
use record::Format;

/// Errors surfaced to the shell, split by exit status.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself was wrong (exit 1).
    Usage(String),
    /// The requested computation failed (exit 2).
    Numerical(String),
}

impl From<semiwkb::Error> for CliError {
    fn from(e: semiwkb::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "semiwkb",
    version,
    about = "Relativistic semiclassical bound states: spectra, wavefunctions, trajectory fits",
    after_help = "Exit codes: 0 success, 1 usage error, 2 numerical failure.\n\
                  SEMIWKB_THREADS caps solver parallelism (0 or unset = automatic).\n\
                  Coulomb rows report bindings in the units of --mass (eV-scale for hydrogen \
                  runs); confining rows report absolute E and E^2 (GeV-scale for hadrons)."
)]
struct Cli {
    /// Output format for result rows.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Numeric-solver phase-residual tolerance (default 1e-10).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Random seed for jitter studies.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress advisory notes on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Solve eigenvalues over a quantum-number range
    Spectrum(SpectrumArgs),
    /// Reproduce the stored hydrogen reference table from the closed forms
    Table1(Table1Args),
    /// Sample one eigenstate's radial wavefunction on a radius grid
    Wavefunction(WavefunctionArgs),
    /// Generate trajectory points or fit string parameters to meson data
    Regge(ReggeArgs),
    /// Cross-method eigenvalue differences over a quantum-number range
    Compare(CompareArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_thread_pool();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!(
                "--tolerance must be positive and finite, got {t}"
            )));
        }
    }
    let globals = Globals {
        seed: cli.seed,
        tolerance: cli.tolerance,
    };
    let output = match &cli.command {
        Command::Spectrum(args) => commands::spectrum(args, &globals)?,
        Command::Table1(args) => commands::table1(args)?,
        Command::Wavefunction(args) => commands::wavefunction(args, &globals)?,
        Command::Regge(args) => commands::regge(args, &globals)?,
        Command::Compare(args) => commands::compare(args, &globals)?,
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = record::emit(&mut stdout, &output.rows, cli.format) {
        // A closed pipe (e.g. `semiwkb ... | head`) is the reader's choice,
        // not a failure; exit quietly like any well-behaved filter.
        if is_broken_pipe(&e) {
            return Ok(());
        }
        return Err(CliError::Numerical(format!("output write failed: {e}")));
    }
    if !cli.quiet {
        for note in &output.notes {
            eprintln!("note: {note}");
        }
    }
    Ok(())
}

/// True for EPIPE, whether raised directly or wrapped by the CSV writer.
fn is_broken_pipe(e: &std::io::Error) -> bool {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return true;
    }
    matches!(
        e.get_ref()
            .and_then(|inner| inner.downcast_ref::<csv::Error>())
            .map(csv::Error::kind),
        Some(csv::ErrorKind::Io(io)) if io.kind() == std::io::ErrorKind::BrokenPipe
    )
}

/// Honor the SEMIWKB_THREADS cap; 0 or anything unparsable falls back to
/// automatic sizing.
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("SEMIWKB_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}
