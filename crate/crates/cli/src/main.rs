//! `equipart`: partition, merge, color, verify and generate planar graphs.
//!
//! Results go to stdout as JSON. Exit status: 0 on success (and a passing
//! verification), 1 on usage or I/O errors, 2 when an input violates an
//! algorithm's precondition (for example a non-planar graph), 3 when a
//! verification fails.

mod commands;
mod presets;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use equipart::coloring::DEFAULT_BUDGET;
use equipart::GraphFormat;

use crate::presets::Algorithm;

#[derive(Parser)]
#[command(name = "equipart", version, about = "Equitable partitions of planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphInput {
    /// Graph file, or `-` for stdin.
    #[arg(short, long)]
    input: PathBuf,
    /// Input format; detected from the content when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
}

#[derive(Args, Clone, Copy)]
struct Budget {
    /// Decision-node limit for coloring searches.
    #[arg(long, env = "EQUIPART_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify a partition of one graph.
    Partition {
        #[arg(long, value_enum)]
        alg: Algorithm,
        #[command(flatten)]
        graph: GraphInput,
        /// Coloring (JSON) to merge instead of searching for one.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        /// Record every replay step in the trace, not only swaps.
        #[arg(long)]
        full_trace: bool,
    },
    /// Merge disjoint classes into large blocks.
    Merge {
        /// JSON list of classes (or a coloring), or `sizes:4,2,2,2,2` for
        /// classes of consecutive integers.
        #[arg(long)]
        classes: String,
        #[arg(long, conflicts_with = "equitable", required_unless_present = "equitable")]
        ell: Option<usize>,
        /// Merge into `k - 1` blocks of equal size (up to one).
        #[arg(long)]
        equitable: bool,
    },
    /// Check a partition file against per-part constraints.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// JSON list of parts, or an object with a `parts` field.
        #[arg(long)]
        partition: PathBuf,
        /// Expected number of parts; defaults to the number in the file.
        #[arg(long)]
        parts: Option<usize>,
        /// Constraint per part (`3-degenerate`, `forest`, `linear-forest`,
        /// `independent`, `bipartite`, `any`). One value applies to every
        /// part; otherwise give one per part.
        #[arg(long = "constraint", required = true)]
        constraints: Vec<String>,
        #[arg(long)]
        equitable: bool,
    },
    /// Search for a proper or acyclic coloring with `k` colors.
    Color {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        acyclic: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Generate planar test graphs.
    Gen {
        /// `stacked-triangulation`, `flipped-triangulation`, `planar-sparse`,
        /// `triangle-free-planar`, or `exhaustive-planar` (every planar graph
        /// on `n` vertices up to isomorphism).
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of graphs, with seeds `seed, seed + 1, ...`.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = "graph6")]
        format: GraphFormat,
        /// Write to this file instead of stdout.
        #[arg(short, long, conflicts_with = "out_dir")]
        output: Option<PathBuf>,
        /// Write one file per graph into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run an algorithm over every graph in a directory and summarize.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        alg: Algorithm,
        #[command(flatten)]
        budget: Budget,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partition {
            alg,
            graph,
            coloring,
            budget,
            full_trace,
        } => commands::partition(alg, &graph, coloring.as_deref(), budget.budget, full_trace),
        Command::Merge {
            classes,
            ell,
            equitable,
        } => commands::merge(&classes, ell, equitable),
        Command::Verify {
            graph,
            partition,
            parts,
            constraints,
            equitable,
        } => commands::verify(&graph, &partition, parts, &constraints, equitable),
        Command::Color {
            graph,
            k,
            acyclic,
            budget,
        } => commands::color(&graph, k, acyclic, budget.budget),
        Command::Gen {
            kind,
            n,
            flips,
            edges,
            seed,
            count,
            format,
            output,
            out_dir,
        } => commands::generate(
            &commands::GenRequest {
                kind,
                n,
                flips,
                edges,
                seed,
                count,
                format,
            },
            output.as_deref(),
            out_dir.as_deref(),
        ),
        Command::Bench { corpus, alg, budget } => commands::bench(&corpus, alg, budget.budget),
    };
    match result {
        Ok(code) => code,
        Err(failure) => failure.report(),
    }
}
