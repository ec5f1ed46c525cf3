use anyhow::{Context, Result};
use subcube_core::maxres::{simulate_treeres_detailed, write_log, TreeRefutation};

use crate::args::{Global, SimulateTreeres};
use crate::config::ExperimentConfig;
use crate::io;

pub fn run(g: &Global, a: &SimulateTreeres) -> Result<u8> {
    let f = io::read_cnf(&a.formula)?;
    let text = io::read(&a.tree)?;
    let tree = TreeRefutation::parse_sexpr(&text).with_context(|| format!("parsing {}", a.tree.display()))?;
    let sim = simulate_treeres_detailed(&f, &tree)?;
    let cfg = ExperimentConfig::new("simulate-treeres", g).param("tree", a.tree.display());
    let mut comments = cfg.header();
    comments.push(format!(
        "tree size {} resolutions {} regular {}",
        tree.size(),
        tree.resolutions(),
        tree.is_regular()
    ));
    comments.push(format!(
        "steps {} resolutions {} weakenings {}",
        sim.log.len(),
        sim.log.resolutions(),
        sim.weakenings
    ));
    let formula = a.formula.display().to_string();
    io::emit(g.out.as_ref(), &write_log(&sim.log.steps, Some(&formula), &comments))?;
    Ok(0)
}
