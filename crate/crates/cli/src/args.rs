use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "dimgroup", version, about = "Exact computations in polynomial direct-limit dimension groups")]
pub struct Cli {
    /// TOML file with defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Stage cap for positivity searches.
    #[arg(long, global = true)]
    pub stage_cap: Option<usize>,
    /// Multiplier cap for order-unit searches.
    #[arg(long, global = true)]
    pub mult_cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Classify a sequence: density conditions, content dichotomy, endpoint ranges.
    Certify {
        #[command(flatten)]
        seq: SeqArgs,
        /// Number of endpoint multipliers to report.
        #[arg(long, default_value_t = 10)]
        stages: usize,
    },
    /// Traces and positivity of one element `f/Q_n`.
    Traces {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 0)]
        stage: usize,
        /// Positive rational evaluation points.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
    },
    /// Stage tables of a positive unital map into `Z[1/p]^k`.
    InitialHom {
        /// Binomial pairs `a,b;a,b;…` meaning `p_n = a + b x`.
        #[arg(long)]
        pairs: Option<String>,
        /// Use the per-vertex construction on a non-interactive sequence.
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        /// Required lower bound for the prefix d-value.
        #[arg(long, default_value = "0")]
        threshold: String,
        /// Re-check every identity and bound after construction.
        #[arg(long)]
        verify: bool,
    },
    /// Weighted Bratteli trees.
    Tree {
        /// Child multiplicities of every vertex on a level; repeat for a periodic rule.
        #[arg(long, value_delimiter = ';', required = true)]
        weights: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Emit the diagram in DOT format only.
        #[arg(long)]
        export_dot: bool,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Discreteness experiments on finitely generated subgroups of `R^k`.
    Lab {
        #[command(subcommand)]
        scenario: LabScenario,
    },
    /// Certified integer-polynomial approximation on an interval without integers.
    Approx {
        /// Target coefficients `c0,c1,…`.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<String>,
        #[arg(long, default_value = "1/3")]
        lo: String,
        #[arg(long, default_value = "2/3")]
        hi: String,
        #[arg(long, default_value = "1/10")]
        eps: String,
        #[arg(long, default_value_t = 100_000)]
        height: u64,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LabScenario {
    /// Coefficient vectors of `1, x, …, x^d` on an interval.
    Monomials {
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// `x_i = (α^i, 2^{-i})` with α transcendental.
    PowerPairs {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        bound: i64,
        /// Numeric shadow of α.
        #[arg(long, default_value_t = std::f64::consts::E - 2.0)]
        alpha: f64,
        /// Report the first combination shorter than this.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
    /// `Z^m + θZ` with independent transcendental θ.
    Critical {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Rational vectors, e.g. `--vec 1,1/2 --vec 0,3`.
    Vectors {
        #[arg(long = "vec", required = true, allow_hyphen_values = true)]
        vecs: Vec<String>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
}

#[derive(Args, Debug, Clone, Default, PartialEq, Eq)]
pub struct SeqArgs {
    /// Entries before the tail, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub prefix: Vec<String>,
    /// Entries repeated forever, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub period: Vec<String>,
    /// `c,k,b` for `p_i = c + k·x^(b^i)`.
    #[arg(long)]
    pub lacunary: Option<String>,
}

impl SeqArgs {
    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.period.is_empty() && self.lacunary.is_none()
    }
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Dimension of the target `Z[1/p]^k`.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    /// Order unit, comma separated; all ones by default.
    #[arg(long, value_delimiter = ',')]
    pub unit: Vec<String>,
}
