use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "subcube", version, about = "MaxRes, MaxResW and SubCubeSums workbench")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "SUBCUBE_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Seed for every randomized generator, sampler and search.
    #[arg(long, global = true, env = "SUBCUBE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest variable count checked exhaustively; above it checks sample.
    #[arg(long, global = true, env = "SUBCUBE_EXHAUSTIVE_LIMIT", default_value_t = 24)]
    pub exhaustive_limit: usize,
    /// Output file (stdout when absent).
    #[arg(long, global = true, env = "SUBCUBE_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a formula family as DIMACS.
    Generate(Generate),
    /// Write an explicit proof or certificate.
    Witness(Witness),
    /// Check a proof log or a cube certificate against a formula.
    Check(Check),
    /// Translate a tree-like refutation into a MaxResW log.
    SimulateTreeres(SimulateTreeres),
    /// Run an oracle and print its verdict as JSON.
    Oracle(Oracle),
    /// Run a parameter sweep and print CSV.
    Report(Report),
}

#[derive(Args, Debug)]
pub struct Generate {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Family {
    /// Pigeonhole principle with m+1 pigeons and m holes.
    Php {
        #[arg(long)]
        m: usize,
    },
    /// Residual clauses whose cubes certify the pigeonhole principle.
    PhpDelta {
        #[arg(long)]
        m: usize,
    },
    /// Tseitin parity constraints on a charged graph.
    Tseitin(GraphArgs),
    /// Pebbling formula of the pyramid of height h.
    Pebbling {
        #[arg(long)]
        height: usize,
    },
    /// Pebbling formula with sibling hints, optionally composed.
    Pebhint {
        #[arg(long)]
        height: usize,
        #[arg(long)]
        gadget: Option<GadgetArg>,
    },
    /// Hinted pyramid pebbling composed with OR.
    PebhintOr {
        #[arg(long)]
        height: usize,
    },
    /// Subset-cardinality formula on a seeded bipartite graph.
    Subset {
        #[arg(long)]
        n: usize,
    },
    /// Compose a DIMACS formula with a two-bit gadget.
    Compose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        gadget: GadgetArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// `triangle`, `cycle:N`, `complete:N` or `regular:N:D` (seeded).
    #[arg(long)]
    pub graph: String,
    /// One 0/1 digit per vertex; defaults to the graph's odd charge.
    #[arg(long)]
    pub charge: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum GadgetArg {
    Or,
    Xor,
}

#[derive(Args, Debug)]
pub struct Witness {
    #[command(subcommand)]
    pub kind: WitnessKind,
}

#[derive(Subcommand, Debug)]
pub enum WitnessKind {
    /// Cube certificate for the pigeonhole principle.
    PhpScs {
        #[arg(long)]
        m: usize,
    },
    /// Cube certificate for a seeded subset-cardinality formula.
    SubsetScs {
        #[arg(long)]
        n: usize,
        /// Also write the formula here.
        #[arg(long)]
        formula: Option<PathBuf>,
        /// Also write the per-vertex LaTeX tables here.
        #[arg(long)]
        emit_latex: Option<PathBuf>,
    },
    /// MaxRes log refuting hinted pyramid pebbling composed with OR.
    PebhintOr {
        #[arg(long)]
        height: usize,
        /// Also write the formula here and name it in the log header.
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Tree-like refutation of the height-2 pyramid pebbling formula.
    PyramidTree {
        /// Also write the formula here.
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Cube certificate read off a MaxResW refutation.
    ScsFromLog {
        #[arg(long)]
        formula: Option<PathBuf>,
        #[arg(long)]
        log: PathBuf,
    },
    /// LaTeX table of the per-vertex clause multiplicities.
    VertexTable,
}

#[derive(Args, Debug)]
pub struct Check {
    #[command(subcommand)]
    pub kind: CheckKind,
}

#[derive(Subcommand, Debug)]
pub enum CheckKind {
    /// Replay a MaxRes/MaxResW log, check viol preservation and refutation.
    Maxres {
        /// Formula (defaults to the log header's `c formula` path).
        #[arg(long)]
        formula: Option<PathBuf>,
        #[arg(long)]
        proof: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Check `viol_F = 1 + viol_G` for a cube list `G`.
    Scs {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModeArgs {
    /// Sample this many assignments instead of checking all of them.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SimulateTreeres {
    #[arg(long)]
    pub formula: PathBuf,
    /// Tree as a nested s-expression.
    #[arg(long)]
    pub tree: PathBuf,
}

#[derive(Args, Debug)]
pub struct Oracle {
    #[command(subcommand)]
    pub name: OracleName,
}

#[derive(Subcommand, Debug)]
pub enum OracleName {
    /// Least resolution width refuting the formula.
    Width {
        #[arg(long)]
        formula: PathBuf,
    },
    /// Conical-junta and integral SubCubeSums degrees.
    Degree {
        #[arg(long)]
        formula: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact LP feasibility of `viol_F − 1` at one width.
    Junta {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Sliding pebble-game cost of the pyramid sink.
    Bpeb {
        #[arg(long)]
        pyramid: usize,
    },
    /// Level-set census of a Tseitin formula.
    Census(GraphArgs),
    /// Composed-formula Delayer against tree provers on a pyramid.
    Game {
        #[arg(long)]
        height: usize,
        /// Random DPLL trees tried in addition to the static orders.
        #[arg(long, default_value_t = 8)]
        trees: usize,
        #[arg(long, default_value_t = 200_000)]
        node_cap: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 5_000_000)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = 30)]
    pub max_seconds: u64,
}

#[derive(Args, Debug)]
pub struct Report {
    #[command(subcommand)]
    pub sweep: Sweep,
}

#[derive(Subcommand, Debug)]
pub enum Sweep {
    /// Proof size of the hinted pebbling MaxRes refutation against height.
    PebhintOrSize {
        #[arg(long, value_parser = parse_range, default_value = "1..5")]
        heights: RangeInclusive<usize>,
    },
    /// Tseitin level sets on odd cycles and complete graphs.
    Census {
        #[arg(long, value_parser = parse_range, default_value = "3..6")]
        sizes: RangeInclusive<usize>,
    },
    /// Pigeonhole certificate sizes and checks.
    PhpScs {
        #[arg(long, value_parser = parse_range, default_value = "1..3")]
        ms: RangeInclusive<usize>,
    },
    /// Pyramid pebbling costs.
    Bpeb {
        #[arg(long, value_parser = parse_range, default_value = "1..4")]
        heights: RangeInclusive<usize>,
    },
    /// Resolution width against SubCubeSums degree on small families.
    Degrees {
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected `a..b` or a number, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(format!("empty range `{s}`"));
            }
            Ok(a..=b)
        }
        None => s.trim().parse().map(|a| a..=a).map_err(|_| bad()),
    }
}
