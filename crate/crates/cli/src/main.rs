mod commands;
mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use commands::Options;
use input::{load_document, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Fan,
    Skeleton,
    Product,
    Weight,
    Ks,
    Essential,
    Quotient,
    Sym,
    Kummer,
    Homology,
    Classify,
    Resolve,
    Validate,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Kato fans, skeletons, weight functions and the topology of their quotients.
#[derive(Debug, Parser)]
#[command(name = "katoskel", version)]
struct Cli {
    command: Command,
    /// Corpus name or path to a JSON document.
    #[arg(long)]
    input: Option<String>,
    /// Symmetric power or Kummer index.
    #[arg(long)]
    n: Option<usize>,
    /// Divisor name in the document, or path to a divisor JSON file.
    #[arg(long)]
    divisor: Option<String>,
    /// Action name in the document.
    #[arg(long)]
    action: Option<String>,
    #[arg(long)]
    homology: bool,
    #[arg(long)]
    classify: bool,
    #[arg(long, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap_simplices: u64,
    /// Star subdivisions allowed by `resolve`.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn run(cli: &Cli) -> CliResult<Value> {
    let opts = Options {
        n: cli.n,
        divisor: cli.divisor.clone(),
        action: cli.action.clone(),
        homology: cli.homology,
        classify: cli.classify,
        cap_simplices: cli.cap_simplices as usize,
        cap_steps: cli.cap_steps as usize,
    };
    if cli.command == Command::Kummer {
        return commands::kummer(&opts);
    }
    let name = cli
        .input
        .as_deref()
        .ok_or_else(|| CliError::usage("--input is required"))?;
    let doc = load_document(name, cli.command == Command::Validate)?;
    match cli.command {
        Command::Fan => commands::fan(&doc),
        Command::Skeleton => commands::skeleton(&doc),
        Command::Product => commands::product(&doc, &opts),
        Command::Weight => commands::weight(&doc, &opts),
        Command::Ks => commands::ks(&doc, &opts),
        Command::Essential => commands::essential(&doc, &opts),
        Command::Quotient => commands::quotient(&doc, &opts),
        Command::Sym => commands::sym(&doc, &opts),
        Command::Homology => commands::homology_cmd(&doc),
        Command::Classify => commands::classify(&doc),
        Command::Resolve => commands::resolve_cmd(&doc, &opts),
        Command::Validate => Ok(commands::validate(&doc)),
        Command::Report => commands::report(&doc, &opts),
        Command::Kummer => unreachable!(),
    }
}

fn emit(cli: &Cli, value: &Value) -> CliResult<()> {
    let body = match cli.format {
        Format::Json => katoskel::io::to_canonical_json(value),
        Format::Text if cli.command == Command::Report => render::report(value),
        Format::Text => render::text(value),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::io(format!("{path}: {e}"))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({ "error": "Usage", "message": e.to_string().trim_end() });
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    match run(&cli).and_then(|v| emit(&cli, &v)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind, "message": e.message }));
            ExitCode::from(e.code as u8)
        }
    }
}
