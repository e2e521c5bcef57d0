use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Certify mildness of finitely presented pro-p groups.
///
/// Exit status: 0 certified or computed, 1 criterion failed or inapplicable,
/// 2 input error.
#[derive(Debug, Parser)]
#[command(name = "mild", version)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Prime for inputs that do not set one (graph files, Lyndon reduction).
    #[arg(long, global = true)]
    pub prime: Option<u64>,

    /// Truncation degree or oracle depth, depending on the command.
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PresArg {
    /// Presentation file: {"prime", "generators", "relators"}.
    #[arg(long)]
    pub pres: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnus expansion of a group element.
    Expand {
        #[command(flatten)]
        pres: PresArg,
        /// Element in relator syntax, e.g. "[x1,x2]" or "x1^3*x2^-1".
        #[arg(long)]
        element: String,
    },
    /// Zassenhaus degrees of the relators (or of one element).
    Zassenhaus {
        #[command(flatten)]
        pres: PresArg,
        #[arg(long)]
        element: Option<String>,
    },
    /// The coefficient matrix M(r, B).
    Matrix {
        #[command(flatten)]
        pres: PresArg,
        /// Comma-separated words, e.g. "x1x2, x3x4".
        #[arg(long = "B")]
        b: String,
        /// Column order; defaults to length-lexicographic.
        #[arg(long)]
        order: Option<String>,
    },
    /// The main mildness criterion for given A, B and order.
    Check {
        #[command(flatten)]
        pres: PresArg,
        /// e.g. "lenlex:x2<x4<x1<x3" or "gorder:tau=1;parts=Y0:x1,x3|Y1:x2,x4".
        #[arg(long)]
        order: String,
        /// Defaults to all compatible words of the entry degree.
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long = "B")]
        b: String,
    },
    /// The partition criterion.
    Partition {
        #[command(flatten)]
        pres: PresArg,
        /// Parts, e.g. "Y0:x1,x3|Y1:x2,x4".
        #[arg(long)]
        parts: String,
        /// Multiplicities k_0,...,k_s, e.g. "1,1".
        #[arg(long)]
        k: String,
    },
    /// Circuit criteria for Koch-type presentations.
    Circuit {
        /// Koch file: {"prime", "d", "m", "a", "ajk"}.
        #[arg(long)]
        koch: PathBuf,
    },
    /// Bipartite criterion for right-angled Artin groups.
    Raag {
        /// Graph file: {"vertices", "edges"}.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Hilbert series against the Golod-Shafarevich series.
    Oracle {
        /// Forms file: {"prime", "generators", "forms"}.
        #[arg(long)]
        forms: PathBuf,
    },
    /// Lyndon words of a given length, or the Lyndon coordinates of a form.
    Lyndon {
        /// Comma-separated generator names.
        #[arg(long)]
        generators: String,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        order: Option<String>,
        /// Homogeneous form to reduce modulo shuffles; needs --prime.
        #[arg(long)]
        reduce: Option<String>,
    },
    /// Shuffle product of two words.
    Shuffle {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
}
