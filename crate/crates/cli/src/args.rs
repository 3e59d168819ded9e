use clap::{Parser, Subcommand, ValueEnum};

use quadgen_core::ScanKind;

#[derive(Debug, Parser)]
#[command(
    name = "quadgen",
    version,
    about = "Minimal-height generators of quadratic fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Worker threads for scans (default: available parallelism).
    #[arg(long, env = "QUADGEN_JOBS", global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Generator,
    Reduced,
}

impl From<Kind> for ScanKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Generator => ScanKind::Generator,
            Kind::Reduced => ScanKind::Reduced,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal height of a generator of Q(√D) and its witnesses.
    #[command(allow_negative_numbers = true)]
    Hmin {
        d: i64,
        /// Restrict to reduced elements (D > 0).
        #[arg(long)]
        reduced: bool,
        /// Check that a·x² + b·x + c generates Q(√D) instead of searching.
        #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
        verify: Option<String>,
    },
    /// Discriminant maximising H/√|D| in each window of [lo, hi].
    #[command(allow_negative_numbers = true)]
    Scan {
        lo: i64,
        hi: i64,
        #[arg(long, value_enum, default_value_t = Kind::Generator)]
        kind: Kind,
        #[arg(long)]
        window: i64,
    },
    /// Fundamental D ≤ limit with no suitable prime in [½√D, (½+ε)√D].
    #[command(allow_negative_numbers = true)]
    Meps {
        limit: i64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
    },
    /// Fraction of reduced forms in a box, per discriminant, against its measure.
    #[command(allow_negative_numbers = true)]
    Duke {
        lo: i64,
        hi: i64,
        #[arg(long, value_name = "X0,X1,Y0,Y1", allow_hyphen_values = true)]
        rect: String,
    },
    /// Cycles of reduced elements of a real quadratic field.
    #[command(allow_negative_numbers = true)]
    Cycles { d: i64 },
    /// Explicit generator constructions.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Monic generator of height < √D (D > 0).
    #[command(allow_negative_numbers = true)]
    Prop2 { d: i64 },
    /// Generator p·x² + b·x + c from a prime p ∈ [½√D, (½+ε)√D].
    #[command(allow_negative_numbers = true)]
    Lemma2 {
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
    },
    /// Integral generator of Q(√d) for squarefree d < 0.
    #[command(allow_negative_numbers = true)]
    Lemma1 { d: i64 },
    /// m·x² + x + m, discriminant 1 − 4m².
    #[command(allow_negative_numbers = true)]
    FamilyIm { m: i64 },
    /// m·x² + (m−1)·x − m, discriminant 5m² − 2m + 1.
    #[command(allow_negative_numbers = true)]
    FamilyRe { m: i64 },
    /// p·xⁿ + q for primes p < q < 2p.
    DegreeN { n: u32, p: u64, q: u64 },
}
