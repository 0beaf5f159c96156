use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hermite-spread", version, about = "Spreading lengths of Hermite polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Working precision of floating-point evaluations.
    #[arg(long, default_value_t = 128, global = true)]
    pub precision_bits: usize,
    /// Significant digits written for floating-point columns.
    #[arg(long, default_value_t = 20, global = true)]
    pub digits: usize,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Lift the caps on degree and order.
    #[arg(long, global = true)]
    pub no_limits: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard deviation, Rényi, Shannon and Fisher lengths per degree.
    Lengths {
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Rényi orders.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        q: Vec<u32>,
        /// Search cap for the optimal entropy bound.
        #[arg(long, default_value_t = 40)]
        k_max: u32,
    },
    /// Exact moments `<x^k>`.
    Moments {
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,4")]
        k: Vec<usize>,
    },
    /// Entropic moments with Rényi and Tsallis entropies, one row per (n, q).
    Entropic {
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        q: Vec<u32>,
    },
    /// Optimal Kullback-Leibler bounds on the Shannon length.
    Bounds {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 40)]
        k_max: u32,
    },
    /// Linear fits of the Shannon and Onicescu-Heller lengths against the
    /// standard deviation.
    Fits {
        /// Degree range `lo:hi`, inclusive.
        #[arg(long, default_value = "0:100")]
        range: String,
    },
    /// Harmonic-oscillator eigenstate lengths.
    Oscillator {
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Oscillator strength as an integer, fraction or decimal.
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Exact and quadrature values against their large-degree formulas.
    Asymptotics {
        #[arg(long, value_delimiter = ',', default_value = "25,50,100")]
        n: Vec<usize>,
        /// Entropic-moment order in [0, 4/3].
        #[arg(long, default_value_t = 0.5)]
        q: f64,
    },
}
