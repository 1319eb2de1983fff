use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tvsa::annealer::check_cooling;
use tvsa::harness::verify::{self, Suite, VerifyReport};
use tvsa::harness::{ExperimentConfig, Experiment, RunOptions};
use tvsa::kernels::{CheckOptions, Mode};
use tvsa::Error;

#[derive(Parser)]
#[command(name = "tvsa", version, about = "Time-varying simulated annealing driven by (t,s)_R-sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the replications of an experiment.
    Run(RunArgs),
    /// Run a verification suite: nets, kernels or conditions.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to `out_dir` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent replications (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Keep every k-th trace row.
    #[arg(long, default_value_t = 1)]
    stride: u64,
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    /// Conditions suite: check this experiment instead of the built-in catalogue.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Conditions suite: thm1, thm2 or thm3 (default: from the config's R).
    #[arg(long)]
    mode: Option<String>,
    /// Nets suite: largest m.
    #[arg(long, default_value_t = 8)]
    max_m: u32,
    #[arg(long)]
    quiet: bool,
}

const EXIT_RUNTIME: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    })
}

fn run(args: RunArgs) -> ExitCode {
    let config = match ExperimentConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let Some(out) = args.out.or_else(|| config.out_dir.clone()) else {
        return fail(&Error::Config("no output directory: pass --out or set out_dir".into()));
    };
    let experiment = match Experiment::new(&config) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    if !args.quiet {
        for w in experiment.warnings() {
            eprintln!("warning: {w}");
        }
    }
    let opts = RunOptions { out_dir: out, workers: args.workers, stride: args.stride };
    match experiment.run(&opts) {
        Ok(report) => {
            if !args.quiet {
                for cp in &report.summary {
                    println!(
                        "n={} median_gap={:.6e} acceptance_rate={:.4}",
                        cp.n, cp.gap_median, cp.acceptance_rate
                    );
                }
                eprintln!("wall time {:.3} s", report.wall_seconds);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn verify_cmd(args: VerifyArgs) -> ExitCode {
    let suite = match args.suite.parse::<Suite>() {
        Ok(s) => s,
        Err(e) => return fail(&Error::Config(e.to_string())),
    };
    let report: Result<VerifyReport, Error> = match suite {
        Suite::Nets => verify::verify_nets(5, args.max_m, 100_000),
        Suite::Kernels => verify::verify_kernels(100, 1_000),
        Suite::Conditions => match &args.config {
            None => verify::verify_conditions_catalogue(),
            Some(path) => conditions_for_config(path, args.mode.as_deref()),
        },
    };
    match report {
        Ok(r) => {
            if !args.quiet {
                print!("{r}");
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_RUNTIME)
            }
        }
        Err(e) => fail(&e),
    }
}

fn conditions_for_config(path: &PathBuf, mode: Option<&str>) -> Result<VerifyReport, Error> {
    let config = ExperimentConfig::load(path)?;
    config.validate()?;
    let kernel = config.kernel_spec()?;
    let mode = match mode {
        Some(m) => m.parse::<Mode>().map_err(|e| Error::Config(e.to_string()))?,
        None => verify::mode_for(config.retained),
    };
    let mut r = verify::verify_conditions_for(&kernel, &config.cooling, &CheckOptions { mode, ..CheckOptions::default() });
    r.lines.push(verify::CheckLine {
        name: "check_cooling".into(),
        passed: check_cooling(&config.cooling) == tvsa::annealer::CoolingValidity::Valid,
        detail: config.cooling.to_string(),
    });
    Ok(r)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match cli.command {
        Command::Run(a) => run(a),
        Command::Verify(a) => verify_cmd(a),
    }
}
