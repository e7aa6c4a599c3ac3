use std::path::PathBuf;
use std::process::ExitCode;

use cextdisc::input::Problem;
use cextdisc::report::Report;
use cextdisc::{commands, render, worked, thread_cap, CliError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cextdisc", version, about = "Discriminants, fibers and orbits of central extension group algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every analysis requested in the spec.
    Check { spec: PathBuf },
    /// Structure, irreducible and stabilizer of one fiber.
    Fiber {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Gram determinant scan over sampled points.
    Scan {
        spec: PathBuf,
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        samples: usize,
    },
    /// Winding orbit of one point.
    Orbit {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Classification of the torsion classes of MaxSpec C.
    Table { spec: PathBuf },
    /// Built-in examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Print the example's spec instead of running it.
        #[arg(long)]
        print_spec: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Paper,
}

fn run(cli: &Cli) -> Result<Option<Report>, CliError> {
    let report = match &cli.command {
        Command::Check { spec } => commands::check(&Problem::from_file(spec)?)?,
        Command::Fiber { spec, point } => commands::fiber(&Problem::from_file(spec)?, point)?,
        Command::Scan { spec, max_k, samples } => commands::scan(&Problem::from_file(spec)?, *max_k, *samples)?,
        Command::Orbit { spec, point } => commands::orbit(&Problem::from_file(spec)?, point)?,
        Command::Table { spec } => commands::table(&Problem::from_file(spec)?)?,
        Command::Example { name: ExampleName::Paper, print_spec } => {
            if *print_spec {
                println!("{}", worked::WORKED_SPEC);
                return Ok(None);
            }
            commands::run_worked_example()?
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = thread_cap() {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure {n} threads: {e}");
        }
    }
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match cli.format {
                Format::Text => print!("{}", render::render_text(&report)),
                Format::Json => println!("{}", report.to_json()),
            }
            if let Some(path) = &cli.json_out {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("cextdisc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
