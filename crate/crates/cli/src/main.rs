use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spbw_cli::corpus::{load, CORPUS};
use spbw_cli::dsl::render_presentation;
use spbw_cli::error::CliError;
use spbw_cli::pipeline::{self, Command, Overrides};
use spbw_cli::report::Report;

/// Certify differential smoothness of skew PBW extensions.
#[derive(Parser)]
#[command(name = "spbw", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Degree bound for the calculus checks, or the filtration depth for `gkdim`.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Sample count for every randomized check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the machine report to PATH (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression.
    Normalize { file: String, expr: String },
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        file: String,
    },
    Calculus {
        #[arg(value_enum)]
        action: CalculusAction,
        file: String,
    },
    /// Full pipeline and verdict.
    Smooth { file: String },
    Gkdim { file: String },
    /// Full pipeline, printed as a machine report.
    Report { file: String },
    /// Print a document in canonical form.
    Render { file: String },
    /// List built-in presentations.
    Corpus,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Pbw,
    Hypotheses,
}

#[derive(Clone, Copy, ValueEnum)]
enum CalculusAction {
    Check,
}

fn emit(report: &Report, json: Option<&PathBuf>, force_json: bool) -> Result<(), CliError> {
    let text = report.to_json()?;
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{text}"),
        Some(p) => {
            std::fs::write(p, &text).map_err(|source| CliError::Io { path: p.clone(), source })?;
            print!("{report}");
        }
        None if force_json => print!("{text}"),
        None => print!("{report}"),
    }
    Ok(())
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    let ov = Overrides { max_degree: cli.max_degree, samples: cli.samples, seed: cli.seed };
    let json = cli.json.as_ref();
    let (file, command) = match cli.command {
        Cmd::Corpus => {
            for (name, _) in CORPUS {
                println!("{name}");
            }
            return Ok(0);
        }
        Cmd::Render { file } => {
            print!("{}", render_presentation(&load(&file)?));
            return Ok(0);
        }
        Cmd::Normalize { file, expr } => {
            let report = pipeline::normalize(&load(&file)?, &expr, &ov)?;
            match json {
                Some(_) => emit(&report, json, false)?,
                None => println!("{}", report.result.as_deref().unwrap_or_default()),
            }
            return Ok(0);
        }
        Cmd::Check { what: CheckKind::Pbw, file } => (file, Command::CheckPbw),
        Cmd::Check { what: CheckKind::Hypotheses, file } => (file, Command::CheckHypotheses),
        Cmd::Calculus { action: CalculusAction::Check, file } => (file, Command::CalculusCheck),
        Cmd::Smooth { file } => (file, Command::Smooth),
        Cmd::Gkdim { file } => (file, Command::Gkdim),
        Cmd::Report { file } => (file, Command::Report),
    };
    let report = pipeline::run(&load(&file)?, command, &ov)?;
    emit(&report, json, command == Command::Report)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
