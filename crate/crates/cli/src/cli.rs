use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::{parse_number, Grid};

pub const DEFAULT_THETA: &str = "0.01pi:0.99pi:512";

#[derive(Debug, Parser)]
#[command(name = "anyon", version, about = "Scattering data for two anyons in the plane", args_override_self = true)]
pub struct Cli {
    /// Flat key=value file with flag values; flags on the command line take precedence
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output file; standard output when absent
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Also write a matplotlib script that plots the CSV output
    #[arg(long, global = true, value_name = "FILE")]
    pub plot_script: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Aharonov-Bohm differential cross-section
    #[command(args_override_self = true)]
    AbXsec(AbXsecArgs),
    /// Bound-state momentum of the contact interaction over (s, alpha)
    #[command(args_override_self = true)]
    DeltaBound(DeltaBoundArgs),
    /// Contact-interaction cross-sections, one column per extension parameter
    #[command(args_override_self = true)]
    DeltaXsec(DeltaXsecArgs),
    /// Contact-interaction phase shift with the Levinson summary
    #[command(args_override_self = true)]
    DeltaPhase(DeltaPhaseArgs),
    /// Square-well differential cross-section
    #[command(args_override_self = true)]
    WellXsec(WellXsecArgs),
    /// Square-well Regge trajectories and their terminations
    #[command(args_override_self = true)]
    WellRegge(WellReggeArgs),
    /// Jost function of a potential, closed form and/or numerical
    #[command(args_override_self = true)]
    JostEval(JostEvalArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AbXsecArgs {
    /// Statistics parameter in [0, 1]
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Relative momentum
    #[arg(long, value_parser = parse_number, default_value = "1", allow_hyphen_values = true)]
    pub k: f64,
    /// Scattering angles, start:stop:count[:log] or a comma list
    #[arg(long, default_value = DEFAULT_THETA, allow_hyphen_values = true)]
    pub theta: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaBoundArgs {
    /// Statistics parameters in [0, 1)
    #[arg(long, default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", allow_hyphen_values = true)]
    pub alpha: Grid,
    /// Extension parameters
    #[arg(long, default_value = "-5:5:201", allow_hyphen_values = true)]
    pub s: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaXsecArgs {
    #[arg(long, value_parser = parse_number, default_value = "0.5", allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_number, default_value = "1", allow_hyphen_values = true)]
    pub k: f64,
    /// Extension parameters; inf and -inf select the free extension
    #[arg(long, default_value = "-10,-8,-6,-4,-2,0,inf", allow_hyphen_values = true)]
    pub s: Grid,
    #[arg(long, default_value = DEFAULT_THETA, allow_hyphen_values = true)]
    pub theta: Grid,
    /// Divide by sin^2(pi alpha)
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaPhaseArgs {
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, default_value = "1e-3:1e3:121:log", allow_hyphen_values = true)]
    pub k: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct WellXsecArgs {
    #[arg(long, value_parser = parse_number, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Scattering energy E = k^2
    #[arg(long, value_parser = parse_number, default_value = "0.25", allow_hyphen_values = true)]
    pub energy: f64,
    /// Well depth
    #[arg(long, value_parser = parse_number, default_value = "25", allow_hyphen_values = true)]
    pub v0: f64,
    /// Well radius
    #[arg(long, value_parser = parse_number, default_value = "1", allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, default_value = DEFAULT_THETA, allow_hyphen_values = true)]
    pub theta: Grid,
    /// Fixed channel cut |m| <= m_max; grown adaptively when absent
    #[arg(long)]
    pub m_max: Option<u32>,
    /// Bound on the omitted channel amplitudes
    #[arg(long, value_parser = parse_number, default_value = "1e-8")]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct WellReggeArgs {
    #[arg(long, value_parser = parse_number, default_value = "25", allow_hyphen_values = true)]
    pub v0: f64,
    #[arg(long, value_parser = parse_number, default_value = "1", allow_hyphen_values = true)]
    pub d: f64,
    /// Channel orders, increasing
    #[arg(long, default_value = "0.1:3.5:341", allow_hyphen_values = true)]
    pub mu: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct JostEvalArgs {
    /// zero | square-well:v0=V,d=D | exponential:v0=V,range=R | table:FILE
    #[arg(long, default_value = "square-well:v0=25,d=1")]
    pub potential: String,
    #[arg(long, value_parser = parse_number, default_value = "0.5", allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value = "0.1:10:50", allow_hyphen_values = true)]
    pub k: Grid,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
}
