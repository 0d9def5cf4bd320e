use std::path::PathBuf;

use antidual::tolerance::TolerancePolicy;
use clap::{Args, Parser, Subcommand};

use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "antidual", version, about = "Complements, parallel operations and Lebesgue splits of positive matrices")]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Globals {
    /// Negative eigenvalues down to -tol·scale count as zero.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_psd: Option<f64>,
    /// Relative eigenvalue cutoff for ranks and pseudo-inverses.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_rank: Option<f64>,
    /// Matrix equality and range-residual tolerance.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_eq: Option<f64>,
    /// Stopping tolerance for the limit A:(nB).
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_lim: Option<f64>,
    /// Seed for the oracle and for generated instances.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Emit a JSON report (default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable summary.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal completion A_B of [[A, B*], [B, ?]].
    Complement(CompletionArgs),
    /// Schur complement C - A_B of a positive completion.
    Schur(CompletionArgs),
    /// Krein-von Neumann extension of a positive operator given on a subspace.
    Kvext(KvArgs),
    /// Parallel sum A:B, or A:(nB) with --weight.
    Parsum(PairArgs),
    /// Parallel difference B ÷ A.
    Pardiff(PairArgs),
    /// Lebesgue decomposition of A with respect to B.
    Lebesgue(PairArgs),
    /// GNS triple of a functional on a finite *-algebra.
    AlgGns(AlgebraArgs),
    /// Complement f_g of functionals.
    AlgComplement(AlgebraArgs),
    /// Lebesgue decomposition of f with respect to g.
    AlgLebesgue(AlgebraArgs),
    /// Cross-check closed forms against the variational oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CompletionArgs {
    /// Combined document {"a", "b", "c"?, "probes"?}; "-" reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    #[arg(long)]
    pub c: Option<PathBuf>,
    /// JSON array of probe vectors y for the constants M_y.
    #[arg(long)]
    pub probes: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KvArgs {
    /// Document {"ambientDim"?, "domainBasis", "values"}; "-" reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Domain basis V (n×k).
    #[arg(long)]
    pub v: Option<PathBuf>,
    /// Values W = AV (n×k).
    #[arg(long)]
    pub w: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Combined document {"a", "b", "weight"?}; "-" reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Weight n in A:(nB).
    #[arg(long)]
    pub weight: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Combined document {"algebra", "f", "g"?}; "-" reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long)]
    pub g: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check a supplied pair {"a", "b"} instead of random instances.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub a: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Random instances (or probe vectors for a supplied pair) per objective.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Largest dimension of random instances.
    #[arg(long, default_value_t = 6)]
    pub max_dim: usize,
    /// Oracle line searches per start.
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
    /// Oracle starts per probe.
    #[arg(long, default_value_t = 32)]
    pub starts: usize,
}

impl Cli {
    pub fn policy(&self) -> Result<TolerancePolicy, Failure> {
        let g = &self.globals;
        let mut pol = TolerancePolicy::default();
        if let Some(t) = g.tol_psd {
            pol.psd_tol = t;
        }
        if let Some(t) = g.tol_rank {
            pol.rank_tol = Some(t);
        }
        if let Some(t) = g.tol_eq {
            pol.eq_tol = t;
        }
        if let Some(t) = g.tol_lim {
            pol.lim_tol = t;
        }
        pol.validate().map_err(|e| Failure::Input(e.to_string()))?;
        Ok(pol)
    }
}
