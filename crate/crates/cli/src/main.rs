use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdeform_cli::commands::{self, SpectrumFlags};
use qdeform_cli::config::parse_q_list;
use qdeform_cli::{thread_count, CliError, CliResult, RunConfig, Table};

/// Bound states of the Dirac equation with the deformed generalized
/// Pöschl-Teller potential under spin symmetry.
#[derive(Parser)]
#[command(name = "qdeform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Bound levels for the configured potential.
    Spectrum {
        /// Add |E - E_oracle| per level from the shooting solver.
        #[arg(long)]
        verify: bool,
        /// Add the closed-form energies evaluated at q < 1, for comparison.
        #[arg(long)]
        show_disputed: bool,
    },
    /// Normalized upper and lower components of one level.
    Wavefunction {
        #[arg(long)]
        n_r: Option<usize>,
    },
    /// Levels along a decreasing q sequence next to the Morse limit.
    MorseLimit {
        #[arg(long)]
        q_list: Option<String>,
    },
    /// Analytic levels against the shooting oracle; exit 3 on disagreement.
    Verify {
        #[arg(long)]
        q_list: Option<String>,
    },
}

fn q_list(flag: &Option<String>, cfg: &RunConfig) -> CliResult<Option<Vec<f64>>> {
    match flag {
        Some(text) => parse_q_list(text).map(Some),
        None => Ok(cfg.q_list.clone()),
    }
}

/// The table to write, plus an error to report after writing it.
fn run(cli: &Cli) -> CliResult<(Table, Option<CliError>)> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config", "a configuration file is required"))?;
    let cfg = RunConfig::load(path)?;
    match &cli.command {
        Command::Spectrum { verify, show_disputed } => {
            let flags = SpectrumFlags {
                verify: *verify,
                show_disputed: *show_disputed,
            };
            commands::spectrum(&cfg, flags).map(|t| (t, None))
        }
        Command::Wavefunction { n_r } => {
            let n_r = n_r
                .or(cfg.n_r)
                .ok_or_else(|| CliError::config("n_r", "pass --n-r or set `n_r` in the config"))?;
            commands::wavefunction(&cfg, n_r).map(|t| (t, None))
        }
        Command::MorseLimit { q_list: flag } => {
            let qs = q_list(flag, &cfg)?
                .ok_or_else(|| CliError::config("q_list", "pass --q-list or set `q_list` in the config"))?;
            commands::morse_limit(&cfg, &qs).map(|t| (t, None))
        }
        Command::Verify { q_list: flag } => commands::verify(&cfg, q_list(flag, &cfg)?.as_deref()),
    }
}

fn emit(cli: &Cli, table: &Table) -> CliResult<()> {
    let target = cli
        .out
        .as_ref()
        .map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
    let io_err = |source| CliError::Output {
        path: target.clone(),
        source,
    };
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match cli.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &table.to_json())
                .map_err(|e| io_err(io::Error::other(e)))?;
            writeln!(sink).map_err(io_err)?;
        }
    }
    sink.flush().map_err(io_err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = thread_count(std::env::var("QDEFORM_THREADS").ok().as_deref()).and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::config("QDEFORM_THREADS", e.to_string()))?;
        pool.install(|| run(&cli))
    });
    let result = outcome.and_then(|(table, failure)| {
        for note in &table.notes {
            eprintln!("note: {note}");
        }
        emit(&cli, &table)?;
        failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
