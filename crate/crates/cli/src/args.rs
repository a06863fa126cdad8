use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hyperc",
    version,
    about = "Optimal hypercontractive constants on Z_3 and for biased bits",
    after_help = "Exponents and lambda accept m/n or decimals. HYPERC_THREADS caps the worker count."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for r_{p,q}(Z_3).
    Compute(ComputeArgs),
    /// Solve for sigma_{p,q}(lambda).
    Sigma(SigmaArgs),
    /// Compare the solver with the brute-force oracle.
    Verify(VerifyArgs),
    /// Certify r_{p,q}(Z_3) as a root of an integer polynomial.
    Certify(CertifyArgs),
    /// Emit figure data as CSV or JSON.
    Sweep(Box<SweepArgs>),
    /// Run the batch identity suite.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Budget {
    Quick,
    Standard,
    Thorough,
}

impl Budget {
    pub fn as_str(&self) -> &'static str {
        match self {
            Budget::Quick => "quick",
            Budget::Standard => "standard",
            Budget::Thorough => "thorough",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Check sigma_{p,q}(lambda) instead of r_{p,q}(Z_3).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Oracle grid size.
    #[arg(long, value_enum, default_value_t = Budget::Standard)]
    pub budget: Budget,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// p as m/n or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    /// q as m/n or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Certificate path; `-` for standard output.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = 20)]
    pub sample_size: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    #[value(name = "curves-h")]
    CurvesH,
    #[value(name = "curves-H")]
    CurvesSym,
    #[value(name = "blowup-b")]
    BlowupB,
    #[value(name = "blowup-B")]
    BlowupThreeHalves,
    #[value(name = "curves-Hlambda")]
    CurvesHLambda,
    #[value(name = "sigma-heatmap")]
    SigmaHeatmap,
    #[value(name = "nonmult")]
    Nonmult,
    #[value(name = "defect")]
    Defect,
}

impl SweepKind {
    pub fn name(&self) -> &'static str {
        match self {
            SweepKind::CurvesH => "curves-h",
            SweepKind::CurvesSym => "curves-H",
            SweepKind::BlowupB => "blowup-b",
            SweepKind::BlowupThreeHalves => "blowup-B",
            SweepKind::CurvesHLambda => "curves-Hlambda",
            SweepKind::SigmaHeatmap => "sigma-heatmap",
            SweepKind::Nonmult => "nonmult",
            SweepKind::Defect => "defect",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub kind: SweepKind,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Comma-separated p values (curves-h).
    #[arg(long)]
    pub ps: Option<String>,
    /// Bias parameter (curves-Hlambda).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Number of alpha values in (-1, 1).
    #[arg(long)]
    pub alphas: Option<usize>,
    #[arg(long)]
    pub t_grid: Option<usize>,
    #[arg(long)]
    pub x_grid: Option<usize>,
    #[arg(long)]
    pub s_grid: Option<usize>,
    #[arg(long)]
    pub rho_grid: Option<usize>,
    #[arg(long)]
    pub lambda_grid: Option<usize>,
    /// Number of random exponent pairs (sigma-heatmap).
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Comma-separated values of r (defect); defaults to multiples of r_{p,q}.
    #[arg(long)]
    pub rs: Option<String>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path; `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}
