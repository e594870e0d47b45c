use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spectra",
    version,
    about = "Laplacian spectra of pure k-families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated family as a facet file.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Print the Laplacian spectrum, largest first.
    Spectrum {
        /// Facet file, or `-` for stdin.
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Derived statistics and structure as JSON.
    Analyze {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one checker on a family.
    Check {
        checker: CheckerArg,
        file: String,
        /// Restrict to one partial-sum index.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Complement, union, join or cone of facet files.
    Ops {
        #[command(subcommand)]
        op: OpsCommand,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Enumerate every family of a size up to isomorphism and run a checker.
    Search(SearchArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Every k-subset of [n].
    Complete {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// Facets {1..k-1} + {v} for every remaining vertex v.
    Star {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// The single facet [k].
    Simplex {
        #[arg(long)]
        k: usize,
    },
    /// Threshold graph from cone (c) and isolated (i) steps.
    Threshold {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        steps: Option<String>,
        /// Random sequence of this many steps.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shifted family generated by Gale-order maxima.
    Shifted {
        #[arg(long)]
        n: u32,
        /// Generators such as "1,2,5;1,3,4".
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        gens: Option<String>,
        /// Random generators with this facet size.
        #[arg(long, value_name = "K")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random simplicial tree.
    Tree {
        #[arg(long)]
        facets: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cycle graph of the given length, coned up to facet size k.
    Cycle {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OpsCommand {
    Complement {
        file: String,
    },
    Union {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Vertex)]
        mode: ModeArg,
    },
    Join {
        a: String,
        b: String,
    },
    Cone {
        file: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    /// Relabel the second family onto fresh vertices.
    Vertex,
    /// Share the vertex set; facets must differ.
    Facet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckerArg {
    Brouwer,
    Majorization,
    Dr,
    TreeBound,
    ThresholdCone,
    Forbidden,
    SpectralRadius,
    HigherSums,
    JoinLemma,
    TreeRemark,
    Structure,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: usize,
    /// Only ridge-connected families.
    #[arg(long)]
    pub connected: bool,
    /// Only families covering every vertex.
    #[arg(long)]
    pub spanning: bool,
    #[arg(long)]
    pub max_facets: Option<usize>,
    #[arg(long)]
    pub check: CheckerArg,
    #[arg(long)]
    pub t_max: Option<usize>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, env = "SPECTRA_JOBS")]
    pub jobs: Option<usize>,
    /// Write the full report as JSON to this file.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}
