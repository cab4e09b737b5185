//! `gridtune` command-line front end; all the work happens in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gridtune::cli::{self, Command, RunOptions};

#[derive(Parser)]
#[command(
    name = "gridtune",
    version,
    about = "H2 performance, tuning, and delay robustness of inverter frequency control"
)]
struct Cli {
    #[command(subcommand)]
    command: Subcommands,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the TOML run config (schema in docs/config.md).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/SVG/JSON reports.
    #[arg(long, default_value = "gridtune-out")]
    out: PathBuf,
    /// Also write an SVG plot next to the CSV.
    #[arg(long)]
    plot: bool,
    /// Override the simulation seed from the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Subcommands {
    /// Squared H2 norm by closed form and Lyapunov solves, cross-checked.
    Analyze(RunArgs),
    /// Optimal lead-lag gain, improvement interval, and regime.
    Optimize(RunArgs),
    /// Delay robustness: closed forms and winding-number bisection.
    Delay(RunArgs),
    /// Monte Carlo estimate of the squared H2 norm vs the analytic value.
    Simulate(RunArgs),
    /// Closed-form H2 curves along one parameter axis.
    Sweep(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Subcommands::Analyze(args) => (Command::Analyze, args),
        Subcommands::Optimize(args) => (Command::Optimize, args),
        Subcommands::Delay(args) => (Command::Delay, args),
        Subcommands::Simulate(args) => (Command::Simulate, args),
        Subcommands::Sweep(args) => (Command::Sweep, args),
    };

    let text = match std::fs::read_to_string(&args.config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };

    let opts = RunOptions {
        out_dir: args.out.clone(),
        plot: args.plot,
        seed: args.seed,
    };

    let result = cli::parse_config(&text)
        .and_then(|run_config| cli::run_command(command, &run_config, &opts));
    match result {
        Ok(output) => {
            println!("gridtune {} — ok", command.name());
            for line in &output.summary_lines {
                println!("  {line}");
            }
            println!("  csv:                     {}", output.csv_path.display());
            if let Some(svg) = &output.svg_path {
                println!("  svg:                     {}", svg.display());
            }
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            let code = cli::exit_code(&error);
            if let Err(io) = cli::write_error_record(&args.out, command.name(), &error) {
                eprintln!("error: cannot write error record: {io}");
            }
            ExitCode::from(code as u8)
        }
    }
}
