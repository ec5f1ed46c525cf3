use crate::error::Result;
use crate::formula::{Clause, ClauseMultiset, Lit, Var};

use super::graph::Dag;

/// Variable of DAG vertex `v`.
pub fn vertex_var(v: usize) -> Var {
    Var::from_index(v as u32 + 1)
}

fn pos(v: usize) -> Lit {
    Lit::new(vertex_var(v), true)
}

/// Pebbling formula: source units, `(∧ preds) → v` for every other
/// vertex, and the negated sink.
pub fn pebbling(g: &Dag) -> Result<ClauseMultiset> {
    let z = g.sink()?;
    let mut clauses = Vec::new();
    for v in g.sources() {
        clauses.push(Clause::new([pos(v)]));
    }
    for v in 0..g.len() {
        if !g.preds(v).is_empty() {
            clauses.push(Clause::new(g.preds(v).iter().map(|&p| pos(p).negate()).chain([pos(v)])));
        }
    }
    clauses.push(Clause::new([pos(z).negate()]));
    ClauseMultiset::new(g.len(), clauses)
}

/// Pebbling formula plus a hint `u ∨ v` for every pair of siblings.
pub fn pebhint(g: &Dag) -> Result<ClauseMultiset> {
    let mut f = pebbling(g)?;
    for (u, v) in g.siblings() {
        f.push(Clause::new([pos(u), pos(v)]))?;
    }
    Ok(f)
}
