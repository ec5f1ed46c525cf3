use crate::error::Result;
use crate::formula::{Clause, ClauseMultiset, Lit, Var};

use super::graph::{BipartiteDegreeGraph, Side};

/// Variable of edge `e`.
pub fn edge_var(e: usize) -> Var {
    Var::from_index(e as u32 + 1)
}

/// All `k`-subsets of `items`, lexicographic by position.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Constraint clauses of one vertex: every `(⌊d/2⌋+1)`-subset of its edges,
/// positive on the left side and negated on the right.
pub fn vertex_constraint(g: &BipartiteDegreeGraph, side: Side, w: usize) -> Vec<Clause> {
    let inc = g.incident(side, w);
    let positive = side == Side::Left;
    subsets(&inc, inc.len() / 2 + 1)
        .into_iter()
        .map(|s| Clause::new(s.into_iter().map(|e| Lit::new(edge_var(e), positive))))
        .collect()
}

/// Subset-cardinality formula: left vertices in order, then right vertices.
pub fn subset_cardinality(g: &BipartiteDegreeGraph) -> Result<ClauseMultiset> {
    g.validate()?;
    let clauses = [Side::Left, Side::Right]
        .into_iter()
        .flat_map(|side| (0..g.n).flat_map(move |w| vertex_constraint(g, side, w)))
        .collect();
    ClauseMultiset::new(g.edges.len(), clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::random_regular_bipartite;

    #[test]
    fn clause_counts() {
        let g = random_regular_bipartite(5, 1).unwrap();
        let f = subset_cardinality(&g).unwrap();
        assert_eq!(f.num_vars(), 21);
        // Four degree-4 vertices and one degree-5 vertex per side.
        assert_eq!(f.len(), 2 * (4 * 4 + 10));
        assert!(f.clauses()[..26].iter().all(|c| c.lits().iter().all(|l| l.is_positive())));
        assert!(f.clauses()[26..].iter().all(|c| c.lits().iter().all(|l| !l.is_positive())));
    }

    #[test]
    fn ceiling_sums_are_2n_plus_1() {
        for n in 4..8 {
            let g = random_regular_bipartite(n, 3).unwrap();
            for side in [Side::Left, Side::Right] {
                let s: usize = (0..n).map(|w| g.degree(side, w).div_ceil(2)).sum();
                assert_eq!(s, 2 * n + 1);
            }
        }
    }

    #[test]
    fn bad_degrees_rejected() {
        let g = BipartiteDegreeGraph::new(1, vec![(0, 0); 3]).unwrap();
        assert!(subset_cardinality(&g).is_err());
    }
}
