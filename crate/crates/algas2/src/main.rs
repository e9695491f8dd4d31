use algas2::cli::{self, CliError, RunConfig, SweepParam, SweepSpec};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Quad-core fuzzy-logic landing guidance model.
#[derive(Parser)]
#[command(name = "algas2", version, about)]
struct Cli {
    /// Config file (TOML). The embedded default config is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the config's RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quantized engine against the golden set and the full
    /// input sweep.
    Verify {
        /// Golden sample file (input0_raw,input1_raw,reference CSV).
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Print the pipeline throughput report and measure host-side
    /// evaluation speed.
    Bench,
    /// Run one closed-loop landing and write trace/report files.
    Run {
        /// Directory for trace output (defaults to the config's output_dir).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Repeat the landing across a parameter range, one CSV row per run.
    Sweep {
        /// inclination_deg | noise_sigma_mm | fault_start_step | seed
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: u32,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::load_default()?,
    }
    .with_seed(cli.seed);

    match cli.command {
        Command::Verify { golden } => cli::cmd_verify(&config, golden.as_deref()),
        Command::Bench => cli::cmd_bench(&config),
        Command::Run { trace } => cli::cmd_run(&config, trace.as_deref()),
        Command::Sweep { param, from, to, steps } => {
            let spec = SweepSpec { param: SweepParam::parse(&param)?, from, to, steps };
            cli::cmd_sweep(&config, &spec)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
