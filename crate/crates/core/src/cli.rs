//! Command-line front end: scenario JSON in, JSON or CSV out.
//!
//! Exit codes: 0 when output was produced (including non-converged
//! equilibria), 2 for invalid input, 1 for internal or I/O failures.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equilibrium::{evaluate, find_nash, Role, Strategy};
use crate::error::ModelError;
use crate::market::Scenario;
use crate::sim::{simulate, SimConfig};
use crate::sweep::{run_sweep, write_csv, write_json, SweepSpec, DEFAULT_STEPS};

/// Scenario document. Every key is optional and defaults to the reference
/// value; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub nu: Option<f64>,
    pub l: Option<f64>,
    pub p: Option<f64>,
    pub c: Option<f64>,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<Scenario, ModelError> {
        let mut s = Scenario::default();
        let entries = [
            ("M", self.m),
            ("nu", self.nu),
            ("l", self.l),
            ("p", self.p),
            ("c", self.c),
            ("alpha", self.alpha),
            ("epsilon", self.epsilon),
            ("delta", self.delta),
        ];
        for (name, value) in entries {
            if let Some(v) = value {
                s.set(name, v)?;
            }
        }
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(_) | CliError::Input(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }

    /// Downstream reader went away (`aoi-duopoly sweep ... | head`).
    pub fn is_broken_pipe(&self) -> bool {
        let io = match self {
            CliError::Io(e) => Some(e),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e),
                _ => None,
            },
            _ => None,
        };
        io.is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
    }
}

#[derive(Debug, Parser)]
#[command(name = "aoi-duopoly", version, about = "URLLC vs eMBB duopoly on peak Age of Information")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON file (keys M, nu, l, p, c, alpha, epsilon, delta).
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Override one scenario key, e.g. `--set epsilon=2.0`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

impl ScenarioArgs {
    pub fn load(&self) -> Result<Scenario, CliError> {
        let mut file = match &self.scenario {
            Some(path) => read_scenario_file(path)?,
            None => ScenarioFile::default(),
        };
        for kv in &self.overrides {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("expected KEY=VALUE, got `{kv}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("`{value}` is not a number")))?;
            let slot = match key.trim() {
                "M" => &mut file.m,
                "nu" => &mut file.nu,
                "l" => &mut file.l,
                "p" => &mut file.p,
                "c" => &mut file.c,
                "alpha" => &mut file.alpha,
                "epsilon" => &mut file.epsilon,
                "delta" => &mut file.delta,
                other => return Err(ModelError::UnknownParameter(other.to_string()).into()),
            };
            *slot = Some(value);
        }
        Ok(file.into_scenario()?)
    }
}

fn read_scenario_file(path: &Path) -> Result<ScenarioFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid scenario {}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Market outcome of a given strategy pair.
    Eval {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        mu1: f64,
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        mu2: f64,
        #[arg(long)]
        lambda2: f64,
    },
    /// Nash equilibrium of one scenario.
    Nash {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Equilibria along a parameter range.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Swept key (M, nu, l, p, c, alpha, epsilon, delta).
        #[arg(long)]
        param: String,
        /// Defaults to 0.3 for epsilon and 0.08 for c.
        #[arg(long)]
        start: Option<f64>,
        /// Defaults to 2.0 for epsilon and 0.4 for c.
        #[arg(long)]
        stop: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads; all cores when omitted.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Simulate the M/M/1-FCFS update queue.
    Simulate {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
        /// Defaults to 1% of the horizon.
        #[arg(long)]
        warmup: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated delay thresholds for the tail estimate.
        #[arg(long = "tail-eps", value_delimiter = ',')]
        tail_eps: Vec<f64>,
    },
}

fn preset_range(param: &str) -> Option<(f64, f64)> {
    match param {
        "epsilon" => {
            let s = SweepSpec::default_epsilon();
            Some((s.start, s.stop))
        }
        "c" => {
            let s = SweepSpec::default_c();
            Some((s.start, s.stop))
        }
        _ => None,
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Io(io::Error::other(e)))
}

/// Runs one command, writing its primary output to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Eval {
            scenario,
            mu1,
            lambda1,
            mu2,
            lambda2,
        } => {
            let s = scenario.load()?;
            let s1 = Strategy { mu: mu1, lambda: lambda1 };
            let s2 = Strategy { mu: mu2, lambda: lambda2 };
            s1.check(Role::Sp1, &s.sp1)?;
            s2.check(Role::Sp2, &s.sp2)?;
            writeln!(out, "{}", to_json(&evaluate(&s, &s1, &s2))?)?;
        }
        Command::Nash { scenario } => {
            let s = scenario.load()?;
            writeln!(out, "{}", to_json(&find_nash(&s))?)?;
        }
        Command::Sweep {
            scenario,
            param,
            start,
            stop,
            steps,
            out: path,
            format,
            jobs,
        } => {
            let base = scenario.load()?;
            let preset = preset_range(&param);
            let start = start
                .or(preset.map(|r| r.0))
                .ok_or_else(|| CliError::Input(format!("--start is required for `{param}`")))?;
            let stop = stop
                .or(preset.map(|r| r.1))
                .ok_or_else(|| CliError::Input(format!("--stop is required for `{param}`")))?;
            let spec = SweepSpec::new(base, &param, start, stop, steps);
            let records = run_sweep(&spec, jobs)?;
            let write = |w: &mut dyn Write| -> Result<(), CliError> {
                match format {
                    Format::Csv => write_csv(w, &param, &records)?,
                    Format::Json => write_json(w, &records)?,
                }
                Ok(())
            };
            match path {
                Some(p) => {
                    let mut f = BufWriter::new(File::create(&p)?);
                    write(&mut f)?;
                    f.flush()?;
                }
                None => write(out)?,
            }
        }
        Command::Simulate {
            lambda,
            mu,
            horizon,
            warmup,
            seed,
            tail_eps,
        } => {
            let mut config = SimConfig::new(lambda, mu, horizon, seed);
            if let Some(w) = warmup {
                config.warmup = w;
            }
            let report = simulate(&config, &tail_eps)?;
            writeln!(out, "{}", to_json(&report)?)?;
        }
    }
    Ok(())
}
