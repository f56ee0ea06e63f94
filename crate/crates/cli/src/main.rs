use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hypwalk::estimators::Outcome;
use hypwalk::exec::{Executor, PARALLEL};
use hypwalk_cli::config::{self, ExperimentConfig};
use hypwalk_cli::presets;
use hypwalk_cli::report::Report;
use hypwalk_cli::runner;

const DEFAULT_OUT: &str = "hypwalk-out";

/// Reproducible random-walk experiments on groups acting on hyperbolic spaces.
///
/// Exit status: 0 all checks passed, 1 invalid config or usage,
/// 2 a declared tolerance failed, 3 a resource limit was hit.
#[derive(Parser)]
#[command(name = "hypwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config.
    Run {
        config: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run a bundled config.
    Preset {
        name: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// List the bundled configs.
    ListPresets,
    /// Print tool and library versions.
    Version,
    /// Print the JSON schema of the config format.
    Schema,
}

#[derive(Args)]
struct RunOpts {
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Output directory [default: the config's `output`, else hypwalk-out].
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    ExitCode::from(match cli.command {
        Command::Run { config, opts } => match load(&config) {
            Ok(c) => run(c, opts),
            Err(msg) => {
                eprintln!("error: {msg}");
                1
            }
        },
        Command::Preset { name, opts } => match presets::load(&name) {
            Some(c) => run(c, opts),
            None => {
                eprintln!("error: unknown preset `{name}`; see `hypwalk list-presets`");
                1
            }
        },
        Command::ListPresets => {
            for (name, _) in presets::PRESETS {
                let c = presets::load(name).expect("bundled preset");
                println!("{name:<24} {}", c.description.unwrap_or_default());
            }
            0
        }
        Command::Version => {
            println!(
                "hypwalk {} (library {}, {} executor)",
                env!("CARGO_PKG_VERSION"),
                hypwalk::VERSION,
                if PARALLEL { "parallel" } else { "sequential" }
            );
            0
        }
        Command::Schema => {
            println!("{}", serde_json::to_string_pretty(&config::schema()).expect("schema serializes"));
            0
        }
    })
}

fn load(path: &Path) -> Result<ExperimentConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    ExperimentConfig::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(mut config: ExperimentConfig, opts: RunOpts) -> u8 {
    if let Some(seed) = opts.seed {
        config.seed = seed;
    }
    let out = opts
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let executor = Executor::new(opts.jobs.map(|j| j as usize));
    let result = match runner::execute(&config, executor) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let report = Report::new(&config, result);
    let written = match report.write(&out) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: writing {}: {e}", out.display());
            return 1;
        }
    };
    summarize(&report, &written);
    match report.result.outcome {
        Outcome::Passed => 0,
        Outcome::ToleranceFailure => 2,
        Outcome::ResourceFailure => 3,
    }
}

fn summarize(report: &Report, written: &[PathBuf]) {
    let r = &report.result;
    println!(
        "{} (seed {}, {} trials): {:?}",
        r.experiment, r.seed, r.trials, r.outcome
    );
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("  {status}  {:<32} {} (value {})", c.name, c.requirement, c.value);
    }
    if !r.truncated.is_empty() {
        println!(
            "  truncated: {} of {} trials ({:.1}%)",
            r.truncated.len(),
            r.trials,
            100.0 * r.truncated_fraction()
        );
        for t in r.truncated.iter().take(5) {
            let raw = t.raw_degree.map_or(String::new(), |d| format!(", raw degree {d}"));
            println!("    trial {} at step {}{raw}: {}", t.trial, t.step, t.message);
        }
    }
    if r.retried > 0 || r.discarded > 0 {
        println!("  retried {}, discarded {}", r.retried, r.discarded);
    }
    for note in &r.notes {
        println!("  note: {note}");
    }
    println!("config {}", report.config_hash);
    for path in written {
        println!("wrote {}", path.display());
    }
}
