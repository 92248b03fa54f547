use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::parse::{parse_sweep, parse_values, SweepRanges, Values};

#[derive(Debug, Parser, Serialize)]
#[command(name = "sharphy", version, about = "Experiments on sharp Hausdorff-Young constants")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Grid points per axis
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Grid half width
    #[arg(long, global = true)]
    pub grid_r: Option<f64>,
    /// Truncation order (Hermite or Laguerre) or coefficient window
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Largest weight or index for sums over representations
    #[arg(long, global = true)]
    pub lmax: Option<usize>,
    /// Write the result document here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write curve data as CSV to this path
    #[arg(long, global = true)]
    pub emit_plot: Option<std::path::PathBuf>,
    /// Seed for random corpora
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (default: SHARP_HY_THREADS, else all cores)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Babenko-Beckner constant B_p
    Bb {
        #[arg(long)]
        p: f64,
    },
    /// Sharp Young constant on R^n
    Young {
        /// Exponents of the factors, comma separated
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Euclidean Hausdorff-Young ratios
    Euclid {
        #[command(subcommand)]
        action: EuclidAction,
    },
    /// Weyl transform experiments
    Weyl {
        #[command(subcommand)]
        action: WeylAction,
    },
    /// Heisenberg group experiments
    Heis {
        #[command(subcommand)]
        action: HeisAction,
    },
    /// Torus transplantation experiments
    Torus {
        #[command(subcommand)]
        action: TorusAction,
    },
    /// SU(2) central-function experiments
    Su2 {
        #[command(subcommand)]
        action: Su2Action,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EuclidAction {
    /// Gaussian ratio against B_p^dim, closed form and on a grid
    Ratio {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        dim: u32,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpProfile {
    Chi0,
    Gaussian,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeylAction {
    /// Ratios along the Gaussian family against (B_p)^2
    Ratio {
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Family::Gaussian)]
        family: Family,
        /// Values or log ranges lo:hi:count, comma separated
        #[arg(long, value_parser = parse_values, default_value = "1:1e6:50")]
        t: Values,
    },
    /// Plancherel, homomorphism and ordering identities on the planar corpus
    Verify,
    /// Weighted inequality for seeded radial bumps and tensor pairs
    Weighted {
        #[arg(long, value_parser = parse_values, default_value = "1.1,1.25,1.3333333333333333,1.5,1.75,2")]
        p: Values,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        pairs: usize,
    },
    /// Twisted versus Euclidean convolution of Laguerre functions
    Counterexample {
        #[arg(long, default_value_t = 60)]
        kmax: usize,
    },
    /// Schatten norm through the twisted convolution operator
    Opnorm {
        #[arg(long, value_enum, default_value_t = OpProfile::Chi0)]
        profile: OpProfile,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
    /// Scaled twisted convolution approaching Euclidean convolution
    Blowup {
        #[arg(long, value_parser = parse_values, default_value = "0.2,0.1,0.05")]
        lambda: Values,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeisAction {
    /// Supremum of the tensor ratio over Gaussian families
    Ratio {
        #[arg(long)]
        p: f64,
        /// Search box, e.g. t=0.1:1e4,mu=1e-4:1,lam0=0.25:4
        #[arg(long, value_parser = parse_sweep, default_value = "t=0.1:1e4,mu=1e-4:1,lam0=0.25:4")]
        sweep: SweepRanges,
    },
    /// Representation against Weyl transform, and Plancherel
    Verify {
        #[arg(long, value_parser = parse_values, default_value = "-1,1,2")]
        lambda: Values,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusAction {
    /// Local ratios of narrow periodized Gaussians
    Local {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 4.0 / 3.0)]
        p: f64,
        #[arg(long, value_parser = parse_values, default_value = "0.2,0.1,0.05,0.02")]
        width: Values,
    },
    /// The cut-off and the L1 norm of its transform
    Phi {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        a: f64,
        #[arg(long, default_value_t = 0.1)]
        b: f64,
    },
    /// Endpoint inequalities of the transplantation operator on seeded G
    Endpoint {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        a: f64,
        #[arg(long, default_value_t = 0.1)]
        b: f64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Su2Action {
    /// Haar normalization, orthonormality, Plancherel and the Lie-algebra correspondence
    Verify {
        #[arg(long, default_value_t = 0.6)]
        delta: f64,
    },
    /// The orbit formula for characters
    Kirillov,
    /// Local central ratios of Gaussian-in-angle profiles
    Local {
        #[arg(long, default_value_t = 4.0 / 3.0)]
        p: f64,
        #[arg(long, value_parser = parse_values, default_value = "0.8,0.4,0.2,0.1")]
        delta: Values,
    },
}
