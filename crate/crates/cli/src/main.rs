use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use torsionlab_cli::exec::{example_list, example_outcome, execute, harness_outcome, Options, Outcome, Status};
use torsionlab_cli::script::parse;
use torsionlab_core::family::{Schedule, DEFAULT_LEVELS, DEFAULT_WINDOW};
use torsionlab_core::harness::{DEFAULT_INSTANCES, DEFAULT_SEED};
use torsionlab_core::ideal::DEFAULT_SATURATION_CAP;
use torsionlab_core::report::ReportNode;
use torsionlab_core::Bounds;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "torsionlab", version, about = "Torsion, assassins and fairness for monomial quotient rings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Multiplier degree for bounded membership and colon searches.
    #[arg(long, global = true, default_value_t = Bounds::default().multiplier_degree)]
    max_degree: u32,
    /// Maximal number of colon steps in a saturation chain.
    #[arg(long, global = true, default_value_t = DEFAULT_SATURATION_CAP)]
    max_iter: u32,
    /// Number of trailing levels that must agree for a claim to be stable.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    stability_window: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Execute a script.
    Run {
        file: PathBuf,
        /// Seed for harness statements without one.
        #[arg(long, env = "TORSIONLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check the fairness propositions on random instances.
    Harness {
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
        #[arg(long, env = "TORSIONLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List or replicate the registered examples.
    Examples {
        #[arg(long, conflicts_with = "run", required_unless_present = "run")]
        list: bool,
        /// Tag of the example to replicate.
        #[arg(long)]
        run: Option<String>,
        /// Inclusive level range `a..b`.
        #[arg(long, value_parser = parse_levels)]
        levels: Option<(u32, u32)>,
        /// Stability window; defaults to --stability-window.
        #[arg(long)]
        window: Option<usize>,
    },
}

fn parse_levels(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, found `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad level `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad level `{b}`"))?;
    Ok((a, b))
}

fn emit(report: &ReportNode, format: Format) {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", report.render_json()),
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(Status::Error.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let bounds = Bounds {
        multiplier_degree: g.max_degree,
        saturation_cap: g.max_iter,
        witness_degree: None,
    };
    let outcome: Outcome = match &cli.command {
        Command::Run { file, seed } => {
            let src = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let script = match parse(&src) {
                Ok(s) => s,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let opts = Options {
                bounds,
                levels: DEFAULT_LEVELS,
                window: g.stability_window,
                seed: *seed,
            };
            execute(&script, &opts)
        }
        Command::Harness { instances, seed } => harness_outcome(*instances, *seed, &bounds),
        Command::Examples {
            list,
            run,
            levels,
            window,
        } => {
            if *list {
                emit(&example_list(), g.format);
                return ExitCode::SUCCESS;
            }
            let tag = run.as_deref().expect("clap requires --list or --run");
            let (lo, hi) = levels.unwrap_or(DEFAULT_LEVELS);
            let schedule = match Schedule::range(lo, hi, window.unwrap_or(g.stability_window)) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            match example_outcome(tag, None, &schedule) {
                Ok(o) => o,
                Err(e) => return fail(e),
            }
        }
    };
    emit(&outcome.report, g.format);
    ExitCode::from(outcome.status.exit_code() as u8)
}
