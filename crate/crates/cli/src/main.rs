//! `cosmofate` command-line front end.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cosmofate", version, about = "Integrate and classify homogeneous cosmologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one trajectory and write it as CSV or JSON.
    Simulate(SimulateArgs),
    /// Classify the past and future of one initial state.
    Classify(ClassifyArgs),
    /// Tabulate the closed-form dust scenarios over a grid of α.
    DustScan(DustScanArgs),
    /// Check the admissibility conditions of an equation of state.
    EosCheck(EosCheckArgs),
    /// Fit a trajectory against its leading-order asymptotics.
    Fit(FitArgs),
    /// Perturb the static dust universe and measure the growth rate.
    Stability(StabilityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// c = G = 1
    Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Direct,
    Constrained,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Speed of light.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Gravitational constant.
    #[arg(long = "G", alias = "g", default_value_t = 1.0)]
    pub g: f64,
    /// Cosmological constant.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Unit preset; overrides --c and --G.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// dust, gamma:<Γ>, poly:<γ>:<coef> or neutron:<A>.
    #[arg(long, default_value = "dust")]
    pub eos: String,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct InitialArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub adot0: f64,
    /// Initial density (not the effective density).
    #[arg(long, allow_negative_numbers = true)]
    pub rho0: f64,
}

#[derive(Debug, Args)]
pub struct IntegrationArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, value_enum, default_value = "constrained")]
    pub mode: ModeArg,
    #[arg(long)]
    pub a_min_stop: Option<f64>,
    #[arg(long)]
    pub a_max_stop: Option<f64>,
    #[arg(long)]
    pub rho_max_stop: Option<f64>,
    #[arg(long, default_value_t = 500_000)]
    pub max_steps: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub initial: InitialArgs,
    #[command(flatten)]
    pub integration: IntegrationArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    /// End time; `inf` or `-inf` run until a stop event.
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
    /// Also write `<prefix>_a.dat`, `<prefix>_rho.dat` and `<prefix>_adot.dat`.
    #[arg(long)]
    pub plot_data: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub initial: InitialArgs,
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Low,
    High,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "positive")]
    Positive,
    #[value(name = "-", alias = "negative")]
    Negative,
}

#[derive(Debug, Args)]
pub struct DustScanArgs {
    /// Grid as `lo:hi:n`.
    #[arg(long, default_value = "0.1:3:100")]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "low")]
    pub branch: BranchArg,
    /// Sign of the initial expansion rate.
    #[arg(long, value_enum, default_value = "+")]
    pub sign: SignArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct EosCheckArgs {
    #[arg(long, default_value = "dust")]
    pub eos: String,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Lower end of the density grid, in units of the model's reference density.
    #[arg(long, default_value_t = 1e-6)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 121)]
    pub points: usize,
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Bigbang,
    Latetime,
    Static,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub initial: InitialArgs,
    #[command(flatten)]
    pub integration: IntegrationArgs,
    /// Length of the run for the static regime, in units of 1/(c√Λ).
    #[arg(long, default_value_t = 40.0)]
    pub horizon: f64,
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Initial expansion rate of the kick.
    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, short)]
    pub out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Simulate(args) => commands::simulate(args),
        Command::Classify(args) => commands::classify(args),
        Command::DustScan(args) => commands::dust_scan(args),
        Command::EosCheck(args) => commands::eos_check(args),
        Command::Fit(args) => commands::fit(args),
        Command::Stability(args) => commands::stability(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("cosmofate: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
