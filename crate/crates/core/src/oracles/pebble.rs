//! Black pebbling with sliding moves.
//!
//! A pebble may be placed on a vertex whose predecessors all carry pebbles,
//! slid from one of those predecessors onto it, or removed. Vertices in the
//! free set carry permanent pebbles that are not counted.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::Dag;

pub const PEBBLE_VERTEX_LIMIT: usize = 24;

fn masks(g: &Dag) -> Result<Vec<u32>> {
    if g.len() > PEBBLE_VERTEX_LIMIT {
        return Err(Error::TooManyVars {
            num_vars: g.len(),
            limit: PEBBLE_VERTEX_LIMIT,
        });
    }
    Ok((0..g.len()).map(|v| g.preds(v).iter().fold(0u32, |m, &p| m | 1 << p)).collect())
}

fn to_mask(set: &BTreeSet<usize>) -> u32 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// `bpeb(free → v)` for every vertex `v`.
pub fn bpeb_all(g: &Dag, free: &BTreeSet<usize>) -> Result<Vec<usize>> {
    if let Some(&v) = free.iter().find(|&&v| v >= g.len()) {
        return Err(Error::Graph(format!("vertex {v} not in graph")));
    }
    let preds = masks(g)?;
    Ok(costs_from_mask(&preds, to_mask(free)))
}

fn costs_from_mask(preds: &[u32], free: u32) -> Vec<usize> {
    let n = preds.len();
    let mut cost: Vec<Option<usize>> = (0..n).map(|v| (free >> v & 1 == 1).then_some(0)).collect();
    let mut seen = vec![false; 1 << n];
    for budget in 1..=n {
        if cost.iter().all(Option::is_some) {
            break;
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut queue = vec![0u32];
        seen[0] = true;
        while let Some(s) = queue.pop() {
            let has = s | free;
            let count = s.count_ones() as usize;
            for v in 0..n {
                if has >> v & 1 == 1 {
                    if s >> v & 1 == 1 {
                        let t = s & !(1 << v);
                        if !seen[t as usize] {
                            seen[t as usize] = true;
                            queue.push(t);
                        }
                    }
                    continue;
                }
                if preds[v] & !has != 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(3);
                if count < budget {
                    next.push(s | 1 << v);
                }
                let mut slide = preds[v] & s;
                while slide != 0 {
                    let u = slide.trailing_zeros();
                    slide &= slide - 1;
                    next.push((s & !(1 << u)) | 1 << v);
                }
                if !next.is_empty() && cost[v].is_none() {
                    cost[v] = Some(budget);
                }
                for t in next {
                    if !seen[t as usize] {
                        seen[t as usize] = true;
                        queue.push(t);
                    }
                }
            }
        }
    }
    cost.into_iter().map(|c| c.unwrap_or(n)).collect()
}

/// Least number of non-free pebbles needed to pebble `w`.
pub fn bpeb(g: &Dag, free: &BTreeSet<usize>, w: usize) -> Result<usize> {
    if w >= g.len() {
        return Err(Error::Graph(format!("vertex {w} not in graph")));
    }
    Ok(bpeb_all(g, free)?[w])
}

/// `bpeb(∅ → sink)`.
pub fn bpeb_graph(g: &Dag) -> Result<usize> {
    bpeb(g, &BTreeSet::new(), g.sink()?)
}

/// A triple violating `bpeb(P→v) ≤ max(bpeb(P→w), bpeb(P∪{w}→v) + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateViolation {
    pub free: BTreeSet<usize>,
    pub v: usize,
    pub w: usize,
}

/// Checks the intermediate-vertex inequality for every free set and every
/// pair of vertices. Returns the number of triples checked and the first
/// violation found.
pub fn intermediate_sweep(g: &Dag) -> Result<(u64, Option<IntermediateViolation>)> {
    let preds = masks(g)?;
    let n = g.len();
    let table: Vec<Vec<usize>> = (0..1u32 << n).into_par_iter().map(|p| costs_from_mask(&preds, p)).collect();
    let bad = (0..1u32 << n).into_par_iter().find_first(|&p| {
        (0..n).any(|v| (0..n).any(|w| table[p as usize][v] > table[p as usize][w].max(table[(p | 1 << w) as usize][v] + 1)))
    });
    let checked = (1u64 << n) * (n * n) as u64;
    Ok((
        checked,
        bad.map(|p| {
            let p_ = p as usize;
            let (v, w) = (0..n)
                .flat_map(|v| (0..n).map(move |w| (v, w)))
                .find(|&(v, w)| table[p_][v] > table[p_][w].max(table[p_ | 1 << w][v] + 1))
                .expect("violation exists");
            IntermediateViolation {
                free: (0..n).filter(|&u| p >> u & 1 == 1).collect(),
                v,
                w,
            }
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::pyramid;

    #[test]
    fn pyramid_costs() {
        for h in 1..=4 {
            assert_eq!(bpeb_graph(&pyramid(h)).unwrap(), h + 1, "height {h}");
        }
    }

    #[test]
    fn single_source() {
        let g = Dag::new(vec![vec![]]).unwrap();
        assert_eq!(bpeb(&g, &BTreeSet::new(), 0).unwrap(), 1);
        assert_eq!(bpeb(&g, &BTreeSet::from([0]), 0).unwrap(), 0);
        assert!(bpeb(&g, &BTreeSet::new(), 1).is_err());
    }

    #[test]
    fn free_predecessors_make_cost_one() {
        let g = pyramid(2);
        let sink = g.sink().unwrap();
        let free: BTreeSet<usize> = g.preds(sink).iter().copied().collect();
        assert_eq!(bpeb(&g, &free, sink).unwrap(), 1);
    }

    #[test]
    fn intermediate_inequality_small_pyramids() {
        for h in 1..=2 {
            let (checked, bad) = intermediate_sweep(&pyramid(h)).unwrap();
            assert!(checked > 0);
            assert_eq!(bad, None);
        }
    }
}
