mod check;
mod generate;
mod oracle;
mod report;
mod simulate;
mod witness;

use anyhow::{bail, Context, Result};
use subcube_core::families::ChargedGraph;
use subcube_core::CheckOptions;

use crate::args::{Cli, Command, GraphArgs, Global, ModeArgs};

/// Runs one subcommand and returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Generate(a) => generate::run(g, &a.family),
        Command::Witness(a) => witness::run(g, &a.kind),
        Command::Check(a) => check::run(g, &a.kind),
        Command::SimulateTreeres(a) => simulate::run(g, a),
        Command::Oracle(a) => oracle::run(g, &a.name),
        Command::Report(a) => report::run(g, &a.sweep),
    }
}

pub fn check_options(g: &Global, mode: ModeArgs) -> CheckOptions {
    let mut opts = match mode.samples {
        Some(k) => CheckOptions::sampled(k, g.seed),
        None => CheckOptions::default(),
    };
    opts.exhaustive_limit = g.exhaustive_limit;
    opts
}

/// Parses `triangle`, `cycle:N`, `complete:N` or `regular:N:D`, then
/// applies the `--charge` override.
pub fn graph(args: &GraphArgs, seed: u64) -> Result<ChargedGraph> {
    let parts: Vec<&str> = args.graph.split(':').collect();
    let num = |k: usize| -> Result<usize> {
        parts
            .get(k)
            .with_context(|| format!("graph `{}` needs more parameters", args.graph))?
            .parse()
            .with_context(|| format!("bad number in graph `{}`", args.graph))
    };
    let g = match (parts[0], parts.len()) {
        ("triangle", 1) => ChargedGraph::triangle(),
        ("cycle", 2) => {
            let n = num(1)?;
            if n < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            ChargedGraph::cycle(n)
        }
        ("complete", 2) => ChargedGraph::complete(num(1)?),
        ("regular", 3) => ChargedGraph::random_regular(num(1)?, num(2)?, seed)?,
        _ => bail!("unknown graph `{}` (triangle, cycle:N, complete:N, regular:N:D)", args.graph),
    };
    Ok(match &args.charge {
        Some(c) => g.with_charge(ChargedGraph::parse_charge(c)?)?,
        None => g,
    })
}

pub fn charge_string(g: &ChargedGraph) -> String {
    g.charge.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
