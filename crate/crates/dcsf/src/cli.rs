use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcsf_core::advisor::AdvisorMode;
use dcsf_core::solver::RunMode;
use dcsf_core::Position3;

use crate::commands::{cmd_compare, cmd_export_deployment, cmd_generate, cmd_solve, SolveOptions};
use crate::error::{CliError, Result};
use crate::files::ScenarioSpec;

#[derive(Debug, Parser)]
#[command(
    name = "dcsf",
    version,
    about = "Deployment, clustering and semantic-symbol planning for UAV swarms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random scenario file.
    Generate(GenerateArgs),
    /// Optimize a scenario and write a run directory.
    Solve(SolveArgs),
    /// Compare finished runs on a shared normalization.
    Compare(CompareArgs),
    /// Write plot-ready user and UAV tables for a run's knee deployment.
    ExportDeployment(ExportArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 500)]
    pub users: usize,
    #[arg(long, default_value_t = 8)]
    pub uavs: usize,
    /// Side of the square service area, m.
    #[arg(long, default_value_t = 1000.0)]
    pub area: f64,
    #[arg(long, default_value_t = 60.0)]
    pub z_min: f64,
    #[arg(long, default_value_t = 120.0)]
    pub z_max: f64,
    /// Base station position as `x,y,z`.
    #[arg(long, value_parser = parse_position, default_value = "5000,5000,0")]
    pub bs: Position3,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    LlmAoa,
    Aoa,
    MonolithicNsga2,
}

impl From<ModeArg> for RunMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::LlmAoa => RunMode::LlmAoa,
            ModeArg::Aoa => RunMode::Aoa,
            ModeArg::MonolithicNsga2 => RunMode::MonolithicNsga2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AdvisorArg {
    Llm,
    Fallback,
    Static,
}

impl From<AdvisorArg> for AdvisorMode {
    fn from(a: AdvisorArg) -> Self {
        match a {
            AdvisorArg::Llm => AdvisorMode::Llm,
            AdvisorArg::Fallback => AdvisorMode::Fallback,
            AdvisorArg::Static => AdvisorMode::Static,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Scenario file; defaults to the standard 500-user, 8-UAV scenario.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// JSON with optional `params` and `solver` sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Similarity table replacing the configured one.
    #[arg(long)]
    pub similarity: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "llm-aoa")]
    pub mode: ModeArg,
    /// Parameter advisor for llm-aoa; the other modes keep p_c and p_m fixed.
    #[arg(long, value_enum, default_value = "llm")]
    pub advisor: AdvisorArg,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub ao_iterations: Option<usize>,
    #[arg(long)]
    pub local_generations: Option<usize>,
    #[arg(long)]
    pub model: Option<String>,
    /// Run directory to create.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(required = true)]
    pub runs: Vec<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub run: PathBuf,
    /// Output directory; the run directory by default.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn parse_position(s: &str) -> std::result::Result<Position3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Position3::new(x, y, z)),
        _ => Err("expected x,y,z".into()),
    }
}

impl From<SolveArgs> for SolveOptions {
    fn from(a: SolveArgs) -> Self {
        Self {
            scenario: a.scenario,
            config: a.config,
            similarity: a.similarity,
            mode: a.mode.into(),
            advisor: a.advisor.into(),
            seed: a.seed,
            population: a.population,
            ao_iterations: a.ao_iterations,
            local_generations: a.local_generations,
            model: a.model,
            out: a.out,
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let spec = ScenarioSpec {
                users: a.users,
                uavs: a.uavs,
                area: a.area,
                z_min: a.z_min,
                z_max: a.z_max,
                bs: a.bs,
                seed: a.seed,
            };
            println!("{}", cmd_generate(&spec, &a.out)?);
        }
        Command::Solve(a) => {
            let report = cmd_solve(&a.into())?;
            println!(
                "{}: {} solutions on the final front, {:.1} s",
                report.run_id, report.front_size, report.wall_time_s
            );
            if let Some(k) = report.knee {
                println!(
                    "knee: f1 = {:.4e} bps, f2 = {:.4e} suts/s, f3 = {:.4e} J",
                    k.f1, k.f2, k.f3
                );
            }
        }
        Command::Compare(a) => print!("{}", cmd_compare(&a.runs, a.csv.as_deref())?.render()),
        Command::ExportDeployment(a) => {
            let (json, csv) = cmd_export_deployment(&a.run, a.out.as_deref())?;
            println!("{}\n{}", json.display(), csv.display());
        }
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit code.
/// Usage errors count as input errors.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

impl From<clap::Error> for CliError {
    fn from(e: clap::Error) -> Self {
        Self::Input(e.to_string())
    }
}
