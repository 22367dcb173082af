//! `crossdecomp`: load a JSON model, run verification suites, and write a
//! JSON report. Exit status is 0 when every check passes, 1 when any check
//! fails and 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crossdecomp::model::Model;
use crossdecomp::report::{Report, Status};
use crossdecomp::scalar::parse_rational;
use crossdecomp::verify::{self, Fixture, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "crossdecomp", version, about = "Exact checks of discrete crossed-product decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral data, centralizer, partial action and factoriality of a model.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Run verification suites on a model.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated suite names, or `all`.
        #[arg(long)]
        suites: Option<String>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Record per-suite wall-clock time in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Tensor product of Powers truncations: `powers MU... K`.
    Powers {
        /// Parameters in (0, 1) followed by the truncation level.
        #[arg(required = true, num_args = 2..)]
        args: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induced system and comparison checks of a model.
    Induce {
        #[command(flatten)]
        input: Input,
    },
    /// Crossed product by the model's group action and its duality checks.
    Duality {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct InputError(String);

impl From<crossdecomp::Error> for InputError {
    fn from(e: crossdecomp::Error) -> Self {
        InputError(e.to_string())
    }
}

fn load(input: &Input) -> Result<Model, InputError> {
    let text = fs::read_to_string(&input.model)
        .map_err(|e| InputError(format!("cannot read {}: {e}", input.model.display())))?;
    Model::from_json(&text).map_err(|e| InputError(format!("{}: {e}", input.model.display())))
}

fn out_path(input: &Input, model: &Model) -> Option<PathBuf> {
    input.out.clone().or_else(|| model.out.as_ref().map(PathBuf::from))
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), InputError> {
    match cli.command {
        Command::Analyze { input, window } => {
            let model = load(&input)?;
            let fx = Fixture::from_model(&model)?;
            let radius = window.or(model.window).unwrap_or(2);
            Ok((verify::analyze(&fx, radius)?, out_path(&input, &model)))
        }
        Command::Verify { input, suites, window, seed, cases, timings } => {
            let model = load(&input)?;
            let fx = Fixture::from_model(&model)?;
            let names = suites.or_else(|| model.suites.as_ref().map(|s| s.join(","))).unwrap_or_else(|| "all".into());
            let suites = Suite::parse_list(&names)?;
            let window = window.or(model.window).unwrap_or(2);
            if window == 0 {
                return Err(InputError("window size must be at least 1".into()));
            }
            let cfg = SuiteConfig { window, seed, cases };
            Ok((verify::verify(&fx, &suites, &cfg, timings), out_path(&input, &model)))
        }
        Command::Powers { args, out } => {
            let (level, mus) = args.split_last().expect("at least two arguments");
            let level: usize = level.parse().map_err(|_| InputError(format!("invalid truncation level `{level}`")))?;
            let mus = mus.iter().map(|m| parse_rational(m)).collect::<crossdecomp::Result<Vec<_>>>()?;
            let report = verify::powers(&mus, level)
                .map_err(|e| InputError(format!("Powers truncation product: {e}")))?;
            Ok((report, out))
        }
        Command::Induce { input } => {
            let model = load(&input)?;
            let fx = Fixture::from_model(&model)?;
            Ok((verify::induce(&fx), out_path(&input, &model)))
        }
        Command::Duality { input } => {
            let model = load(&input)?;
            let fx = Fixture::from_model(&model)?;
            Ok((verify::duality(&fx), out_path(&input, &model)))
        }
    }
}

fn summarize(report: &Report) {
    let c = report.counts;
    eprintln!("{} {}: {} pass, {} fail, {} skipped", report.command, report.model, c.pass, c.fail, c.skipped);
    for r in report.checks.iter().filter(|r| r.status == Status::Fail) {
        eprintln!("  FAIL {}: {}", r.check_id, r.witness.as_deref().unwrap_or(""));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match run(cli) {
        Ok(r) => r,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    summarize(&report);
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
