use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::sampler;

/// Directed acyclic graph with vertices `0..n` in topological order
/// (every predecessor has a smaller index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dag {
    preds: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Dag {
    pub fn new(preds: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..preds.len()).map(|v| format!("v{v}")).collect();
        Dag::with_labels(preds, labels)
    }

    pub fn with_labels(mut preds: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != preds.len() {
            return Err(Error::Graph("one label per vertex".into()));
        }
        for (v, ps) in preds.iter_mut().enumerate() {
            ps.sort_unstable();
            ps.dedup();
            if ps.iter().any(|&p| p >= v) {
                return Err(Error::Graph(format!("vertex {v} has a predecessor that does not precede it")));
            }
        }
        Ok(Dag { preds, labels })
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn preds(&self, v: usize) -> &[usize] {
        &self.preds[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn succs(&self, v: usize) -> Vec<usize> {
        (v + 1..self.len()).filter(|&w| self.preds[w].contains(&v)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.preds[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut has_succ = vec![false; self.len()];
        for ps in &self.preds {
            for &p in ps {
                has_succ[p] = true;
            }
        }
        (0..self.len()).filter(|&v| !has_succ[v]).collect()
    }

    /// The unique sink, or an error when there are several.
    pub fn sink(&self) -> Result<usize> {
        match self.sinks().as_slice() {
            [z] => Ok(*z),
            s => Err(Error::Graph(format!("expected a single sink, found {}", s.len()))),
        }
    }

    /// `ancestors[v]` holds every vertex with a path to `v` (excluding `v`).
    pub fn ancestors(&self) -> Vec<BTreeSet<usize>> {
        let mut anc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
        for v in 0..self.len() {
            let mut s = BTreeSet::new();
            for &p in &self.preds[v] {
                s.insert(p);
                s.extend(anc[p].iter().copied());
            }
            anc[v] = s;
        }
        anc
    }

    /// Pairs `(u, v)`, `u < v`, of incomparable vertices sharing a predecessor.
    pub fn siblings(&self) -> Vec<(usize, usize)> {
        let anc = self.ancestors();
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                let comparable = anc[v].contains(&u) || anc[u].contains(&v);
                let shared = self.preds[u].iter().any(|p| self.preds[v].contains(p));
                if shared && !comparable {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices with a path to `v` avoiding `avoid` (including `v` itself
    /// unless it is in `avoid`).
    pub fn subgraph_modulo(&self, v: usize, avoid: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        if avoid.contains(&v) {
            return seen;
        }
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(w) = stack.pop() {
            for &p in &self.preds[w] {
                if !avoid.contains(&p) && seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }
}

/// Position of a pyramid vertex: level `k` (0 = sink) and offset `i` in `0..=k`.
pub fn pyramid_vertex(h: usize, k: usize, i: usize) -> usize {
    // Levels are stored top (k = h) first.
    let above: usize = (k + 1..=h).map(|l| l + 1).sum();
    above + i
}

/// The pyramid of height `h`: `h + 1` levels, level `k` has `k + 1`
/// vertices, sources on level `h`, and vertex `(k, i)` has predecessors
/// `(k + 1, i)` and `(k + 1, i + 1)`.
pub fn pyramid(h: usize) -> Dag {
    let mut preds = Vec::new();
    let mut labels = Vec::new();
    for k in (0..=h).rev() {
        for i in 0..=k {
            labels.push(format!("p{k}_{i}"));
            if k == h {
                preds.push(Vec::new());
            } else {
                preds.push(vec![pyramid_vertex(h, k + 1, i), pyramid_vertex(h, k + 1, i + 1)]);
            }
        }
    }
    Dag::with_labels(preds, labels).expect("pyramid is topologically ordered")
}

/// Undirected multigraph with a 0/1 charge per vertex. Edges are indexed
/// in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargedGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub charge: Vec<bool>,
}

impl ChargedGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, charge: Vec<bool>) -> Result<Self> {
        if charge.len() != num_vertices {
            return Err(Error::Graph("charge vector length differs from vertex count".into()));
        }
        for &(u, v) in &edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::Graph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at {u}")));
            }
        }
        Ok(ChargedGraph {
            num_vertices,
            edges,
            charge,
        })
    }

    /// Parses a charge string such as `111`.
    pub fn parse_charge(s: &str) -> Result<Vec<bool>> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Graph(format!("bad charge digit `{c}`"))),
            })
            .collect()
    }

    pub fn with_charge(mut self, charge: Vec<bool>) -> Result<Self> {
        if charge.len() != self.num_vertices {
            return Err(Error::Graph("charge vector length differs from vertex count".into()));
        }
        self.charge = charge;
        Ok(self)
    }

    /// All vertices charged 1.
    fn all_ones(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        ChargedGraph::new(num_vertices, edges, vec![true; num_vertices]).expect("valid graph")
    }

    pub fn triangle() -> Self {
        Self::all_ones(3, vec![(0, 1), (1, 2), (0, 2)])
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::all_ones(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// `K_n`. The default charge puts a single 1 on vertex 0 (odd total).
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut charge = vec![false; n];
        if n > 0 {
            charge[0] = true;
        }
        ChargedGraph::new(n, edges, charge).expect("valid graph")
    }

    /// Seeded simple connected `d`-regular graph from the pairing model
    /// (rejection sampling). Charge: all ones when `n` is odd, otherwise a
    /// single 1 on vertex 0.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Self> {
        if !(n * d).is_multiple_of(2) || d >= n {
            return Err(Error::Graph(format!("no simple {d}-regular graph on {n} vertices")));
        }
        let mut rng = sampler(seed);
        for _ in 0..10_000 {
            let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            points.shuffle(&mut rng);
            let mut edges = Vec::new();
            let mut seen = BTreeSet::new();
            let mut ok = true;
            for pair in points.chunks(2) {
                let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if u == v || !seen.insert((u, v)) {
                    ok = false;
                    break;
                }
                edges.push((u, v));
            }
            if !ok {
                continue;
            }
            edges.sort_unstable();
            let mut charge = vec![n % 2 == 1; n];
            if n.is_multiple_of(2) {
                charge[0] = true;
            }
            let g = ChargedGraph::new(n, edges, charge)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
        Err(Error::Graph("pairing model did not produce a simple connected graph".into()))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    /// Indices of edges incident on `v`, in edge order.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn charge_parity(&self) -> bool {
        self.charge.iter().filter(|&&b| b).count() % 2 == 1
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `min |δ(S)| / |S|` over nonempty `S` with `|S| ≤ n/2`, by brute force.
    pub fn edge_expansion(&self) -> Result<f64> {
        let n = self.num_vertices;
        if n > 20 {
            return Err(Error::TooManyVars {
                num_vars: n,
                limit: 20,
            });
        }
        let mut best = f64::INFINITY;
        for s in 1u32..(1 << n) {
            let size = s.count_ones() as usize;
            if size > n / 2 {
                continue;
            }
            let cut = self
                .edges
                .iter()
                .filter(|&&(a, b)| ((s >> a) & 1) != ((s >> b) & 1))
                .count();
            best = best.min(cut as f64 / size as f64);
        }
        Ok(best)
    }
}

/// Bipartite multigraph between left vertices `U = 0..n` and right
/// vertices `V = 0..n`; `edges[e] = (u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDegreeGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl BipartiteDegreeGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u >= n || v >= n) {
            return Err(Error::Graph("edge endpoint out of range".into()));
        }
        Ok(BipartiteDegreeGraph { n, edges })
    }

    /// Edge indices at a vertex, in edge order.
    pub fn incident(&self, side: Side, w: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| match side {
                Side::Left => u == w,
                Side::Right => v == w,
            })
            .map(|(e, _)| e)
            .collect()
    }

    pub fn degree(&self, side: Side, w: usize) -> usize {
        self.incident(side, w).len()
    }

    /// Every vertex has degree 4 except one degree-5 vertex on each side.
    pub fn validate(&self) -> Result<()> {
        for side in [Side::Left, Side::Right] {
            let mut fives = 0;
            for w in 0..self.n {
                match self.degree(side, w) {
                    4 => {}
                    5 => fives += 1,
                    d => return Err(Error::Graph(format!("{side:?} vertex {w} has degree {d}"))),
                }
            }
            if fives != 1 {
                return Err(Error::Graph(format!("{side:?} side has {fives} degree-5 vertices, expected 1")));
            }
        }
        Ok(())
    }
}

/// A 4-regular bipartite circulant `u_i ~ v_{π(i + k mod n)}`, `k = 0..3`,
/// with a seeded permutation `π` of the right side, plus one edge joining
/// the designated vertices `u_0` and `v_{π(n-1)}` (a parallel edge when
/// `n = 4`). Needs `n ≥ 4`.
pub fn random_regular_bipartite(n: usize, seed: u64) -> Result<BipartiteDegreeGraph> {
    if n < 4 {
        return Err(Error::Graph("need at least 4 vertices per side".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut sampler(seed));
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..4).map(move |k| (i, (i + k) % n)))
        .map(|(u, v)| (u, perm[v]))
        .collect();
    edges.push((0, perm[n - 1]));
    let g = BipartiteDegreeGraph::new(n, edges)?;
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyramid_shape() {
        let p = pyramid(2);
        assert_eq!(p.len(), 6);
        assert_eq!(p.sources(), vec![0, 1, 2]);
        assert_eq!(p.preds(3), &[0, 1]);
        assert_eq!(p.preds(4), &[1, 2]);
        assert_eq!(p.preds(5), &[3, 4]);
        assert_eq!(p.sink().unwrap(), 5);
        assert_eq!(p.siblings(), vec![(3, 4)]);
        assert!(pyramid(1).siblings().is_empty());
        assert_eq!(pyramid(4).len(), 15);
    }

    #[test]
    fn multi_sink_is_reported() {
        let g = Dag::new(vec![vec![], vec![0], vec![0]]).unwrap();
        assert!(g.sink().is_err());
        assert!(Dag::new(vec![vec![1], vec![]]).is_err());
    }

    #[test]
    fn subgraph_modulo_avoids_set() {
        let p = pyramid(2);
        let all = p.subgraph_modulo(5, &BTreeSet::new());
        assert_eq!(all.len(), 6);
        let cut = p.subgraph_modulo(5, &BTreeSet::from([3]));
        assert_eq!(cut, BTreeSet::from([1, 2, 4, 5]));
    }

    #[test]
    fn random_regular_is_regular_and_seeded() {
        let g = ChargedGraph::random_regular(6, 3, 7).unwrap();
        assert_eq!(g.edges.len(), 9);
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
        assert!(g.charge_parity());
        assert_eq!(g, ChargedGraph::random_regular(6, 3, 7).unwrap());
    }

    #[test]
    fn expansion_of_small_graphs() {
        assert_eq!(ChargedGraph::triangle().edge_expansion().unwrap(), 2.0);
        assert_eq!(ChargedGraph::complete(4).edge_expansion().unwrap(), 2.0);
        assert_eq!(ChargedGraph::cycle(6).edge_expansion().unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn bipartite_generator_meets_degree_shape() {
        for n in 4..9 {
            let g = random_regular_bipartite(n, n as u64).unwrap();
            assert_eq!(g.edges.len(), 4 * n + 1);
            g.validate().unwrap();
        }
        assert!(random_regular_bipartite(3, 0).is_err());
    }
}
