use crate::formula::{Clause, ClauseMultiset, Lit, Var};

use super::graph::ChargedGraph;

/// Clauses `S_u` of one vertex: one clause per local assignment of the
/// incident edges whose parity differs from the charge, falsified exactly there.
pub fn tseitin_vertex(g: &ChargedGraph, u: usize) -> Vec<Clause> {
    let inc = g.incident(u);
    let d = inc.len();
    (0u64..1 << d)
        .filter(|s| (s.count_ones() % 2 == 1) != g.charge[u])
        .map(|s| {
            Clause::new(
                inc.iter()
                    .enumerate()
                    .map(|(k, &e)| Lit::new(Var::from_index(e as u32 + 1), (s >> k) & 1 == 0)),
            )
        })
        .collect()
}

/// Tseitin formula: edge `e` is variable `e + 1`; vertices in index order.
pub fn tseitin(g: &ChargedGraph) -> ClauseMultiset {
    let clauses = (0..g.num_vertices).flat_map(|u| tseitin_vertex(g, u)).collect();
    ClauseMultiset::new(g.edges.len(), clauses).expect("edge variables in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Assignment;

    #[test]
    fn single_edge_path() {
        let g = ChargedGraph::new(2, vec![(0, 1)], vec![true, false]).unwrap();
        let f = tseitin(&g);
        let got: Vec<Vec<i64>> = f.clauses().iter().map(Clause::to_dimacs).collect();
        assert_eq!(got, vec![vec![1], vec![-1]]);
    }

    #[test]
    fn triangle_has_two_clauses_per_vertex_and_odd_viol() {
        let f = tseitin(&ChargedGraph::triangle());
        assert_eq!(f.len(), 6);
        for i in 0..8 {
            assert_eq!(f.viol(&Assignment::from_lex_index(i, 3)).unwrap() % 2, 1);
        }
    }

    #[test]
    fn isolated_charged_vertex_gives_empty_clause() {
        let g = ChargedGraph::new(1, vec![], vec![true]).unwrap();
        assert_eq!(tseitin(&g).clauses(), &[Clause::empty()]);
    }

    #[test]
    fn even_charge_solution_count() {
        let g = ChargedGraph::complete(4).with_charge(vec![false; 4]).unwrap();
        let f = tseitin(&g);
        let sols = (0..1u64 << 6)
            .filter(|&i| f.viol(&Assignment::from_lex_index(i, 6)).unwrap() == 0)
            .count();
        assert_eq!(sols, 1 << (6 - 4 + 1));
    }
}
