use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "lorentz", version, about = "Norms, seminorms and precompactness certificates in Lorentz sequence spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose ‖a‖^p.
    Norm(SeqArgs),
    /// Decide whether a sequence lies in the space.
    Member(SeqArgs),
    /// Seminorms S_i, one per --i.
    Seminorm(IndexedArgs),
    /// Head and tail split at each --i.
    Decompose(IndexedArgs),
    /// Certify precompactness of a family.
    Certify(FamilyArgs),
    /// Count bound λ(M, d) for each --d.
    Lambda(LambdaArgs),
    /// Uniform vanishing index γ(d) and its inverse.
    Gamma(GammaArgs),
    /// Build A − A and compare its equinorm indices with those of A.
    DiffFamily(FamilyArgs),
    /// Run the randomized self-test suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Numeric {
    /// Exponent p ≥ 1.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// harmonic, invsqrt or power:<beta>.
    #[arg(long, default_value = "harmonic", conflicts_with = "w_file")]
    pub w: String,
    /// Weight spec file (or inline JSON).
    #[arg(long)]
    pub w_file: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Horizon cap in terms.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the machine-readable report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the canonical input spec here.
    #[arg(long)]
    pub emit_spec: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// Sequence spec file (or inline JSON).
    #[arg(long)]
    pub seq: String,
    #[command(flatten)]
    pub numeric: Numeric,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct IndexedArgs {
    #[command(flatten)]
    pub target: SeqArgs,
    /// Split index; repeatable.
    #[arg(long = "i", default_values_t = [1u64])]
    pub indices: Vec<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Family spec file (or inline JSON).
    #[arg(long)]
    pub family: String,
    /// Tolerance ladder; repeatable.
    #[arg(long, default_values_t = [0.1, 0.01, 0.001])]
    pub eps: Vec<f64>,
    #[command(flatten)]
    pub numeric: Numeric,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArgs {
    /// Norm bound M on the p-th power.
    #[arg(long, required_unless_present = "family", conflicts_with = "family")]
    pub m: Option<f64>,
    /// Take M from the certified bound of this family.
    #[arg(long)]
    pub family: Option<String>,
    /// Threshold; repeatable.
    #[arg(long, required = true)]
    pub d: Vec<f64>,
    #[command(flatten)]
    pub numeric: Numeric,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub family: String,
    /// Threshold for γ; repeatable.
    #[arg(long)]
    pub d: Vec<f64>,
    /// Index for γ⁻¹; repeatable.
    #[arg(long)]
    pub n: Vec<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
