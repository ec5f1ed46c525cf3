use std::time::Duration;

use anyhow::Result;
use serde_json::{json, Value};
use subcube_core::families::{compose, pebhint, pyramid, Gadget};
use subcube_core::maxres::enumerate_dpll_trees;
use subcube_core::oracles::{
    bpeb_graph, conical_junta_feasible, min_res_width, prover_delayer_play, scs_min_degree, tseitin_level_census,
    verify_farkas, verify_junta_witness, JuntaVerdict, OrDelayer, PebblingAdversary, Scoring, SearchBudget,
    TreeProver,
};
use subcube_core::subcubesums::viol_table;
use subcube_core::Error;

use super::graph;
use crate::args::{BudgetArgs, Global, OracleName};
use crate::config::ExperimentConfig;
use crate::io;

impl From<BudgetArgs> for SearchBudget {
    fn from(b: BudgetArgs) -> Self {
        SearchBudget {
            max_nodes: b.max_nodes,
            max_time: Duration::from_secs(b.max_seconds),
        }
    }
}

/// Every oracle prints one JSON object whose `value` key holds the headline
/// number (null when it does not exist, e.g. width of a satisfiable formula).
pub fn run(g: &Global, name: &OracleName) -> Result<u8> {
    let cfg = ExperimentConfig::new("oracle", g);
    let mut out = match name {
        OracleName::Width { formula } => {
            let f = io::read_cnf(formula)?;
            let cfg = cfg.family("width").param("formula", formula.display());
            match min_res_width(&f) {
                Ok(w) => json!({ "value": w, "config": cfg }),
                Err(Error::Satisfiable) => json!({ "value": null, "detail": "formula is satisfiable", "config": cfg }),
                Err(e) => return Err(e.into()),
            }
        }
        OracleName::Degree { formula, budget } => {
            let f = io::read_cnf(formula)?;
            let cfg = cfg
                .family("degree")
                .param("formula", formula.display())
                .budget("max_nodes", budget.max_nodes)
                .budget("max_seconds", budget.max_seconds);
            match scs_min_degree(&f, (*budget).into()) {
                Ok(report) => {
                    let mut v = report.to_json();
                    v["value"] = report.junta_degree.into();
                    v["config"] = serde_json::to_value(cfg)?;
                    v
                }
                Err(Error::Satisfiable) => json!({ "value": null, "detail": "formula is satisfiable", "config": cfg }),
                Err(e) => return Err(e.into()),
            }
        }
        OracleName::Junta { formula, degree } => {
            let f = io::read_cnf(formula)?;
            let cfg = cfg
                .family("junta")
                .param("formula", formula.display())
                .param("degree", degree);
            let target = viol_table(&f)?.add_constant(-1);
            match conical_junta_feasible(&target, *degree)? {
                JuntaVerdict::Feasible(w) => json!({
                    "value": true,
                    "verified": verify_junta_witness(&target, *degree, &w)?,
                    "witness": w.to_json(),
                    "config": cfg,
                }),
                JuntaVerdict::Infeasible(c) => json!({
                    "value": false,
                    "verified": verify_farkas(&target, &c),
                    "farkas": c.to_json(),
                    "config": cfg,
                }),
            }
        }
        OracleName::Bpeb { pyramid: h } => {
            let cfg = cfg.family("bpeb").param("pyramid", h);
            json!({ "value": bpeb_graph(&pyramid(*h))?, "config": cfg })
        }
        OracleName::Census(args) => {
            let gr = graph(args, g.seed)?;
            let census = tseitin_level_census(&gr)?;
            let cfg = cfg.family("census").param("graph", &args.graph).param("charge", super::charge_string(&gr));
            let mut v = serde_json::to_value(&census)?;
            v["value"] = serde_json::to_value(&census.levels)?;
            v["config"] = serde_json::to_value(cfg)?;
            v
        }
        OracleName::Game { height, trees, node_cap } => game(g, cfg, *height, *trees, *node_cap)?,
    };
    if let Value::Object(map) = &mut out {
        map.retain(|k, v| k == "value" || !v.is_null());
    }
    io::emit(g.out.as_ref(), &io::json_line(&out))?;
    Ok(0)
}

/// Plays the composed pebbling Delayer against tree provers read off DPLL
/// refutations. `value` is the fewest points any prover conceded.
fn game(g: &Global, cfg: ExperimentConfig, h: usize, seeded: usize, node_cap: usize) -> Result<Value> {
    let dag = pyramid(h);
    let f = compose(&pebhint(&dag)?, Gadget::Or2);
    let trees = enumerate_dpll_trees(&f, node_cap, seeded, g.seed)?;
    let mut rows = Vec::with_capacity(trees.len());
    for t in &trees {
        let mut delayer = OrDelayer::new(dag.len(), PebblingAdversary::new(dag.clone())?);
        let tr = prover_delayer_play(&f, &mut TreeProver::new(t), &mut delayer, Scoring::Stars)?;
        rows.push(json!({
            "tree_size": t.size(),
            "points": tr.points,
            "size_at_least_2_pow_points": t.size() as u128 >= 1u128 << tr.points.min(127),
        }));
    }
    let min = rows.iter().filter_map(|r| r["points"].as_u64()).min();
    let cfg = cfg
        .family("game")
        .param("h", h)
        .param("trees", seeded)
        .budget("node_cap", node_cap as u64);
    Ok(json!({ "value": min, "trees": rows, "config": cfg }))
}
