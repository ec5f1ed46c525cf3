//! Tree-like resolution refutations and their translation into MaxResW.
//!
//! Text form is a nested s-expression: `(leaf 1 -2)` for an axiom and
//! `(res <pivot> <pos> <neg>)` for a resolution, where `pos` derives a
//! clause containing the pivot and `neg` one containing its negation.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::formula::{Clause, ClauseMultiset, Lit, Var};
use crate::verdict::sampler;

use super::log::ProofLog;
use super::rule::{MaxResStep, OccMultiset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Res { pivot: Var, pos: usize, neg: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub clause: Clause,
    pub kind: NodeKind,
}

/// A tree-shaped refutation stored as an arena; children precede parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRefutation {
    nodes: Vec<TreeNode>,
    root: usize,
}

/// Incremental construction of a [`TreeRefutation`].
#[derive(Clone, Debug, Default)]
pub struct TreeBuilder {
    nodes: Vec<TreeNode>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, clause: Clause) -> usize {
        self.nodes.push(TreeNode {
            clause,
            kind: NodeKind::Leaf,
        });
        self.nodes.len() - 1
    }

    /// Resolves node `pos` (containing `pivot`) with node `neg`.
    pub fn res(&mut self, pivot: Var, pos: usize, neg: usize) -> Result<usize> {
        let x = Lit::new(pivot, true);
        let (p, n) = match (self.nodes.get(pos), self.nodes.get(neg)) {
            (Some(p), Some(n)) => (&p.clause, &n.clause),
            _ => return Err(Error::Tree(format!("unknown child node {pos} or {neg}"))),
        };
        if !p.contains(x) || !n.contains(x.negate()) {
            return Err(Error::Tree(format!("cannot resolve {p} and {n} on {pivot}")));
        }
        let clause = p.without(x).union(&n.without(x.negate()));
        self.nodes.push(TreeNode {
            clause,
            kind: NodeKind::Res { pivot, pos, neg },
        });
        Ok(self.nodes.len() - 1)
    }

    pub fn clause(&self, id: usize) -> &Clause {
        &self.nodes[id].clause
    }

    /// Finishes with `root` as the final node, keeping only its subtree.
    pub fn finish(self, root: usize) -> Result<TreeRefutation> {
        if root >= self.nodes.len() {
            return Err(Error::Tree(format!("unknown root {root}")));
        }
        let mut out = TreeBuilder::new();
        let root = copy_subtree(&self.nodes, root, &mut out);
        let t = TreeRefutation { nodes: out.nodes, root };
        t.validate()?;
        Ok(t)
    }
}

fn copy_subtree(src: &[TreeNode], id: usize, out: &mut TreeBuilder) -> usize {
    match src[id].kind {
        NodeKind::Leaf => out.leaf(src[id].clause.clone()),
        NodeKind::Res { pivot, pos, neg } => {
            let p = copy_subtree(src, pos, out);
            let n = copy_subtree(src, neg, out);
            out.nodes.push(TreeNode {
                clause: src[id].clause.clone(),
                kind: NodeKind::Res { pivot, pos: p, neg: n },
            });
            out.nodes.len() - 1
        }
    }
}

impl TreeRefutation {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Number of clauses in the tree (leaves included).
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Leaf).count()
    }

    pub fn resolutions(&self) -> usize {
        self.size() - self.leaves()
    }

    pub fn max_var(&self) -> u32 {
        self.nodes.iter().map(|n| n.clause.max_var()).max().unwrap_or(0)
    }

    /// Distinct leaf clauses, in order of first appearance.
    pub fn axioms(&self) -> Vec<Clause> {
        let mut seen = HashSet::new();
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Leaf && seen.insert(n.clause.clone()))
            .map(|n| n.clause.clone())
            .collect()
    }

    /// Checks every resolution, the absence of tautologies, and that the
    /// root clause is empty.
    pub fn validate(&self) -> Result<()> {
        for (id, n) in self.nodes.iter().enumerate() {
            if n.clause.is_tautology() {
                return Err(Error::Tree(format!("node {id} is tautological: {}", n.clause)));
            }
            if let NodeKind::Res { pivot, pos, neg } = n.kind {
                if pos >= id || neg >= id {
                    return Err(Error::Tree(format!("node {id} has a child that does not precede it")));
                }
                let x = Lit::new(pivot, true);
                let (p, q) = (&self.nodes[pos].clause, &self.nodes[neg].clause);
                if !p.contains(x) || !q.contains(x.negate()) {
                    return Err(Error::Tree(format!("node {id}: children do not clash on {pivot}")));
                }
                if n.clause != p.without(x).union(&q.without(x.negate())) {
                    return Err(Error::Tree(format!("node {id}: clause is not the resolvent")));
                }
            }
        }
        if !self.nodes[self.root].clause.is_empty() {
            return Err(Error::Tree("root clause is not empty".into()));
        }
        Ok(())
    }

    /// Checks that every leaf is a clause of `f`.
    pub fn check_axioms(&self, f: &ClauseMultiset) -> Result<()> {
        let known: HashSet<&Clause> = f.clauses().iter().collect();
        for a in self.axioms() {
            if !known.contains(&a) {
                return Err(Error::Tree(format!("leaf {a} is not a clause of the formula")));
            }
        }
        Ok(())
    }

    /// No variable is a pivot twice on one root-to-leaf path.
    pub fn is_regular(&self) -> bool {
        fn go(t: &TreeRefutation, id: usize, seen: &mut Vec<Var>) -> bool {
            match t.nodes[id].kind {
                NodeKind::Leaf => true,
                NodeKind::Res { pivot, pos, neg } => {
                    if seen.contains(&pivot) {
                        return false;
                    }
                    seen.push(pivot);
                    let ok = go(t, pos, seen) && go(t, neg, seen);
                    seen.pop();
                    ok
                }
            }
        }
        go(self, self.root, &mut Vec::new())
    }

    /// Regular refutation of a subset of the same axioms, no larger than
    /// `self`. A resolution on a variable already resolved higher on the
    /// path is replaced by the child on the same side as the higher one;
    /// nodes whose pivot then disappears from a child collapse onto it.
    pub fn regularize(&self) -> Result<TreeRefutation> {
        fn go(t: &TreeRefutation, id: usize, path: &mut Vec<(Var, bool)>, out: &mut TreeBuilder) -> Result<usize> {
            match t.nodes[id].kind {
                NodeKind::Leaf => Ok(out.leaf(t.nodes[id].clause.clone())),
                NodeKind::Res { pivot, pos, neg } => {
                    // Below the positive side of `pivot` the path sets it to 0.
                    if let Some(&(_, value)) = path.iter().find(|(v, _)| *v == pivot) {
                        return go(t, if value { neg } else { pos }, path, out);
                    }
                    path.push((pivot, false));
                    let p = go(t, pos, path, out)?;
                    path.last_mut().expect("pushed").1 = true;
                    let n = go(t, neg, path, out)?;
                    path.pop();
                    let x = Lit::new(pivot, true);
                    if !out.clause(p).contains(x) {
                        Ok(p)
                    } else if !out.clause(n).contains(x.negate()) {
                        Ok(n)
                    } else {
                        out.res(pivot, p, n)
                    }
                }
            }
        }
        let mut out = TreeBuilder::new();
        let root = go(self, self.root, &mut Vec::new(), &mut out)?;
        let t = out.finish(root)?;
        if !t.is_regular() {
            return Err(Error::Tree("regularization left a repeated pivot".into()));
        }
        Ok(t)
    }

    pub fn to_sexpr(&self) -> String {
        fn go(t: &TreeRefutation, id: usize, out: &mut String) {
            match t.nodes[id].kind {
                NodeKind::Leaf => {
                    out.push_str("(leaf");
                    for l in t.nodes[id].clause.to_dimacs() {
                        let _ = write!(out, " {l}");
                    }
                    out.push(')');
                }
                NodeKind::Res { pivot, pos, neg } => {
                    let _ = write!(out, "(res {} ", pivot.index());
                    go(t, pos, out);
                    out.push(' ');
                    go(t, neg, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, self.root, &mut out);
        out
    }

    pub fn parse_sexpr(text: &str) -> Result<TreeRefutation> {
        let toks = sexpr_tokens(text);
        let mut pos = 0;
        let mut b = TreeBuilder::new();
        let root = parse_node(&toks, &mut pos, &mut b)?;
        if let Some(t) = toks.get(pos) {
            return Err(Error::parse(t.line, "trailing input after tree"));
        }
        b.finish(root)
    }
}

struct Tok<'a> {
    text: &'a str,
    line: usize,
}

fn sexpr_tokens(text: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split(';').next().unwrap_or_default();
        let mut start = None;
        for (k, ch) in body.char_indices() {
            let delim = ch == '(' || ch == ')' || ch.is_whitespace();
            if delim {
                if let Some(s) = start.take() {
                    out.push(Tok {
                        text: &body[s..k],
                        line: idx + 1,
                    });
                }
                if !ch.is_whitespace() {
                    out.push(Tok {
                        text: &body[k..k + 1],
                        line: idx + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(k);
            }
        }
        if let Some(s) = start {
            out.push(Tok {
                text: &body[s..],
                line: idx + 1,
            });
        }
    }
    out
}

fn parse_node(toks: &[Tok<'_>], pos: &mut usize, b: &mut TreeBuilder) -> Result<usize> {
    let last_line = toks.last().map(|t| t.line).unwrap_or(1);
    let next = |pos: &mut usize| -> Result<&Tok<'_>> {
        let t = toks.get(*pos).ok_or_else(|| Error::parse(last_line, "unexpected end of tree"))?;
        *pos += 1;
        Ok(t)
    };
    let open = next(pos)?;
    if open.text != "(" {
        return Err(Error::parse(open.line, format!("expected `(`, found `{}`", open.text)));
    }
    let head = next(pos)?;
    let line = head.line;
    match head.text {
        "leaf" => {
            let mut lits = Vec::new();
            loop {
                let t = next(pos)?;
                if t.text == ")" {
                    break;
                }
                let l = t
                    .text
                    .parse::<i64>()
                    .ok()
                    .filter(|&l| l != 0)
                    .ok_or_else(|| Error::parse(t.line, format!("bad literal `{}`", t.text)))?;
                lits.push(l);
            }
            Ok(b.leaf(Clause::from_dimacs(&lits)?))
        }
        "res" => {
            let t = next(pos)?;
            let pivot = t
                .text
                .parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .map(Var::from_index)
                .ok_or_else(|| Error::parse(t.line, format!("bad pivot `{}`", t.text)))?;
            let p = parse_node(toks, pos, b)?;
            let n = parse_node(toks, pos, b)?;
            let close = next(pos)?;
            if close.text != ")" {
                return Err(Error::parse(close.line, "expected `)` after two subtrees"));
            }
            b.res(pivot, p, n).map_err(|e| Error::parse(line, e.to_string()))
        }
        other => Err(Error::parse(line, format!("expected `leaf` or `res`, found `{other}`"))),
    }
}

/// Result of translating a tree-like refutation into MaxResW.
#[derive(Clone, Debug)]
pub struct TreeSimulation {
    pub log: ProofLog,
    /// The regular tree that was actually simulated.
    pub tree: TreeRefutation,
    /// Clause derived by the MaxResW log at each node of `tree`.
    pub derived: Vec<Clause>,
    pub weakenings: usize,
}

impl TreeSimulation {
    /// Each derived clause is the tree clause plus literals on pivots of
    /// its ancestors (the weakenings it inherited), and the root is `□`.
    pub fn matches_tree(&self) -> bool {
        let root = self.tree.root();
        if !self.derived[root].is_empty() {
            return false;
        }
        let mut stack = vec![(root, Vec::<Var>::new())];
        while let Some((id, above)) = stack.pop() {
            let node = self.tree.node(id);
            let d = &self.derived[id];
            if !node.clause.is_subset_of(d) || d.difference(&node.clause).iter().any(|l| !above.contains(&l.var())) {
                return false;
            }
            if let NodeKind::Res { pivot, pos, neg } = node.kind {
                let mut next = above.clone();
                next.push(pivot);
                stack.push((pos, next.clone()));
                stack.push((neg, next));
            }
        }
        true
    }
}

/// Translates a tree-like refutation of `f` into a MaxResW refutation:
/// each axiom is split into one disjoint weakening per leaf by walking its
/// subtree from the root, then every resolution of the tree is replayed.
pub fn simulate_treeres(f: &ClauseMultiset, t: &TreeRefutation) -> Result<ProofLog> {
    simulate_treeres_detailed(f, t).map(|s| s.log)
}

pub fn simulate_treeres_detailed(f: &ClauseMultiset, t: &TreeRefutation) -> Result<TreeSimulation> {
    t.validate()?;
    t.check_axioms(f)?;
    if t.max_var() as usize > f.num_vars() {
        return Err(Error::Tree("tree mentions variables outside the formula".into()));
    }
    let tree = if t.is_regular() { t.clone() } else { t.regularize()? };
    let n = tree.size();

    // Axioms below each node.
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let axioms = tree.axioms();
    let axiom_index: BTreeMap<&Clause, usize> = axioms.iter().enumerate().map(|(k, c)| (c, k)).collect();
    for id in 0..n {
        below[id] = match tree.nodes[id].kind {
            NodeKind::Leaf => BTreeSet::from([axiom_index[&tree.nodes[id].clause]]),
            NodeKind::Res { pos, neg, .. } => below[pos].union(&below[neg]).copied().collect(),
        };
    }

    let mut occ = OccMultiset::new(f);
    let mut steps = Vec::new();
    let mut leaf_occ: Vec<Option<usize>> = vec![None; n];

    for (k, axiom) in axioms.iter().enumerate() {
        let start = occ
            .iter()
            .find(|(_, c)| *c == axiom)
            .map(|(id, _)| id)
            .expect("axioms checked against the formula");
        let mut stack = vec![(tree.root, start)];
        while let Some((id, o)) = stack.pop() {
            match tree.nodes[id].kind {
                NodeKind::Leaf => leaf_occ[id] = Some(o),
                NodeKind::Res { pivot, pos, neg } => match (below[pos].contains(&k), below[neg].contains(&k)) {
                    (true, true) => {
                        let step = MaxResStep::Weaken { occ: o, var: pivot };
                        let tr = occ.apply(step)?;
                        steps.push(step);
                        // Consequents come as A' ∨ x, then A' ∨ ¬x.
                        stack.push((neg, tr.added_ids[1]));
                        stack.push((pos, tr.added_ids[0]));
                    }
                    (true, false) => stack.push((pos, o)),
                    (false, true) => stack.push((neg, o)),
                    (false, false) => unreachable!("walk stays inside the axiom's subtree"),
                },
            }
        }
    }
    let weakenings = steps.len();

    // Children precede parents in the arena, so index order is post-order.
    let mut node_occ: Vec<usize> = vec![0; n];
    let mut derived: Vec<Clause> = vec![Clause::empty(); n];
    for id in 0..n {
        match tree.nodes[id].kind {
            NodeKind::Leaf => {
                node_occ[id] = leaf_occ[id].expect("every leaf received a weakening");
            }
            NodeKind::Res { pivot, pos, neg } => {
                let step = MaxResStep::Resolve {
                    pos: node_occ[pos],
                    neg: node_occ[neg],
                    pivot,
                };
                let tr = occ.apply(step)?;
                steps.push(step);
                node_occ[id] = tr.added_ids[0];
            }
        }
        derived[id] = occ.get(node_occ[id]).expect("live occurrence").clone();
    }
    Ok(TreeSimulation {
        log: ProofLog::new(f.clone(), steps),
        tree,
        derived,
        weakenings,
    })
}

/// Tree-like refutation read off a DPLL search: a node is a leaf labelled
/// with the first clause its partial assignment falsifies, otherwise it
/// branches on the variable chosen by `choose`. Branches whose clause
/// lacks the branching literal are collapsed. Returns `None` when more than
/// `node_cap` search nodes would be needed.
pub fn dpll_tree<C>(f: &ClauseMultiset, node_cap: usize, mut choose: C) -> Result<Option<TreeRefutation>>
where
    C: FnMut(&[Option<bool>], &[Var]) -> Var,
{
    struct Search<'a, C> {
        f: &'a ClauseMultiset,
        cap: usize,
        visited: usize,
        choose: C,
        b: TreeBuilder,
    }
    impl<C: FnMut(&[Option<bool>], &[Var]) -> Var> Search<'_, C> {
        fn go(&mut self, rho: &mut Vec<Option<bool>>) -> Result<Option<usize>> {
            self.visited += 1;
            if self.visited > self.cap {
                return Ok(None);
            }
            let falsified = self.f.clauses().iter().find(|c| {
                c.lits()
                    .iter()
                    .all(|l| rho[l.var().index() as usize - 1] == Some(!l.is_positive()))
            });
            if let Some(c) = falsified {
                return Ok(Some(self.b.leaf(c.clone())));
            }
            // Candidates: unassigned variables of clauses not yet satisfied.
            let mut open: BTreeSet<Var> = BTreeSet::new();
            for c in self.f.clauses() {
                let sat = c
                    .lits()
                    .iter()
                    .any(|l| rho[l.var().index() as usize - 1] == Some(l.is_positive()));
                if !sat {
                    open.extend(c.lits().iter().map(|l| l.var()).filter(|v| rho[v.index() as usize - 1].is_none()));
                }
            }
            if open.is_empty() {
                return Err(Error::Satisfiable);
            }
            let open: Vec<Var> = open.into_iter().collect();
            let x = (self.choose)(rho, &open);
            if !open.contains(&x) {
                return Err(Error::Invalid(format!("branching variable {x} is not open")));
            }
            let k = x.index() as usize - 1;
            rho[k] = Some(false);
            let p = self.go(rho)?;
            rho[k] = Some(true);
            let n = match p {
                Some(_) => self.go(rho)?,
                None => None,
            };
            rho[k] = None;
            let (Some(p), Some(n)) = (p, n) else {
                return Ok(None);
            };
            let lit = Lit::new(x, true);
            Ok(Some(if !self.b.clause(p).contains(lit) {
                p
            } else if !self.b.clause(n).contains(lit.negate()) {
                n
            } else {
                self.b.res(x, p, n)?
            }))
        }
    }
    let mut s = Search {
        f,
        cap: node_cap,
        visited: 0,
        choose: &mut choose,
        b: TreeBuilder::new(),
    };
    let mut rho = vec![None; f.num_vars()];
    match s.go(&mut rho)? {
        Some(root) => s.b.finish(root).map(Some),
        None => Ok(None),
    }
}

/// Distinct tree-like refutations of `f` from DPLL runs: one per static
/// variable order (all orders when there are at most `max_static` variables
/// in use) plus `seeded` runs with random branching. Runs exceeding
/// `node_cap` are skipped.
pub fn enumerate_dpll_trees(f: &ClauseMultiset, node_cap: usize, seeded: usize, seed: u64) -> Result<Vec<TreeRefutation>> {
    const MAX_STATIC: usize = 6;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |t: Option<TreeRefutation>, out: &mut Vec<TreeRefutation>| {
        if let Some(t) = t {
            if seen.insert(t.to_sexpr()) {
                out.push(t);
            }
        }
    };
    let used: Vec<Var> = f
        .clauses()
        .iter()
        .flat_map(|c| c.lits().iter().map(|l| l.var()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut orders: Vec<Vec<Var>> = Vec::new();
    if used.len() <= MAX_STATIC {
        permutations(&used, &mut Vec::new(), &mut vec![false; used.len()], &mut orders);
    } else {
        orders.push(used.clone());
        orders.push(used.iter().rev().copied().collect());
    }
    for order in &orders {
        let t = dpll_tree(f, node_cap, |_, open| *order.iter().find(|v| open.contains(v)).expect("open var"))?;
        keep(t, &mut out);
    }
    let mut rng = sampler(seed);
    for _ in 0..seeded {
        let mut order = used.clone();
        order.shuffle(&mut rng);
        let dynamic = rng.random_bool(0.5);
        let mut inner = sampler(rng.random());
        let t = dpll_tree(f, node_cap, |_, open| {
            if dynamic {
                open[inner.random_range(0..open.len())]
            } else {
                *order.iter().find(|v| open.contains(v)).expect("open var")
            }
        })?;
        keep(t, &mut out);
    }
    Ok(out)
}

fn permutations(items: &[Var], cur: &mut Vec<Var>, used: &mut [bool], out: &mut Vec<Vec<Var>>) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for k in 0..items.len() {
        if !used[k] {
            used[k] = true;
            cur.push(items[k]);
            permutations(items, cur, used, out);
            cur.pop();
            used[k] = false;
        }
    }
}
