use std::path::{Path, PathBuf};
use std::process::ExitCode;

use calogero_cli::catalog::{default_config, list_scenarios};
use calogero_cli::config::{ConfigError, Scenario, ScenarioConfig};
use calogero_cli::report::VerificationReport;
use calogero_cli::runner::{run_scenario, RunError};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "calogero", version, about = "Symmetry checks for spin Calogero models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalogued scenarios.
    List,
    /// Run every check and print a text summary.
    Verify(RunArgs),
    /// Run every check and write the full report.
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file, or the name of a catalogued scenario.
    config: Option<String>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
    #[arg(long = "N")]
    n: Option<String>,
    /// k values as "ks,kl; ks,kl".
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    seed_point: Option<String>,
    #[arg(long)]
    time_limit: Option<String>,
    /// Output file; defaults to the configured report path, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero the wall times so the output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl RunArgs {
    fn config(&self) -> Result<ScenarioConfig, ConfigError> {
        let mut cfg = match (&self.config, &self.scenario) {
            (Some(c), _) if Path::new(c).exists() => ScenarioConfig::load(Path::new(c))?,
            (Some(c), _) => match c.parse::<Scenario>() {
                Ok(s) => default_config(s),
                Err(_) => return Err(ConfigError::Io { path: c.clone(), msg: "no such file or catalogued scenario".into() }),
            },
            (None, Some(s)) => default_config(s.parse().map_err(|msg| ConfigError::InvalidValue { key: "scenario".into(), msg })?),
            (None, None) => return Err(ConfigError::Missing("config or --scenario".into())),
        };
        if self.config.is_some() {
            if let Some(s) = &self.scenario {
                cfg.set("scenario", s)?;
            }
        }
        for (key, value) in [
            ("cutoff", &self.cutoff),
            ("N", &self.n),
            ("k", &self.k),
            ("seed_point", &self.seed_point),
            ("time_limit", &self.time_limit),
        ] {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn run(&self) -> Result<(ScenarioConfig, VerificationReport), RunError> {
        let cfg = self.config()?;
        let report = run_scenario(&cfg)?;
        Ok((cfg, if self.no_timing { report.without_timing() } else { report }))
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_for(report: &VerificationReport) -> ExitCode {
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, format) = match &cli.command {
        Command::List => {
            print!("{}", list_scenarios());
            return ExitCode::SUCCESS;
        }
        Command::Verify(run) => (run, None),
        Command::Report { run, format } => (run, Some(*format)),
    };
    let (cfg, report) = match run.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("calogero: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match format {
        None => emit(&report.to_text(), run.out.as_deref()),
        Some(f) => {
            let text = match f {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let out = run.out.clone().or(cfg.report_path.clone());
            emit(&text, out.as_deref())
        }
    };
    if let Err(e) = result {
        eprintln!("calogero: {e}");
        return ExitCode::from(2);
    }
    exit_for(&report)
}
