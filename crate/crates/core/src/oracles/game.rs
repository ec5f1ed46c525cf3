//! Prover–Delayer games and the 1-query game.
//!
//! Partial assignments are slices indexed by variable number (slot 0 is
//! unused).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{vertex_var, Dag};
use crate::formula::{Assignment, Clause, ClauseMultiset, Var};
use crate::maxres::{NodeKind, TreeRefutation};

use super::pebble::bpeb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Answer {
    Zero,
    One,
    Star,
}

impl Answer {
    fn of(value: bool) -> Self {
        if value { Answer::One } else { Answer::Zero }
    }
}

/// Which answers earn a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scoring {
    Stars,
    Ones,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameMove {
    pub var: u32,
    pub answer: Answer,
    pub value: bool,
    /// Points so far, including this move.
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameTranscript {
    pub moves: Vec<GameMove>,
    pub falsified: Vec<i64>,
    pub points: usize,
}

pub trait Prover {
    /// Next variable to query, or `None` if the prover has nothing to ask.
    fn query(&mut self, assigned: &[Option<bool>]) -> Option<Var>;
    /// Value picked after a `*` answer.
    fn choose(&mut self, var: Var, assigned: &[Option<bool>]) -> bool;
    fn observe(&mut self, _var: Var, _value: bool) {}
}

pub trait Delayer {
    fn answer(&mut self, var: Var, assigned: &[Option<bool>]) -> Result<Answer>;
}

/// Plays until the partial assignment falsifies a clause of `f`.
pub fn prover_delayer_play(f: &ClauseMultiset, prover: &mut dyn Prover, delayer: &mut dyn Delayer, scoring: Scoring) -> Result<GameTranscript> {
    let n = f.num_vars();
    let mut assigned = vec![None; n + 1];
    let mut moves = Vec::new();
    let mut points = 0;
    let falsified = |assigned: &[Option<bool>]| -> Option<Clause> {
        f.clauses()
            .iter()
            .find(|c| c.lits().iter().all(|l| assigned[l.var().index() as usize] == Some(!l.is_positive())))
            .cloned()
    };
    // Re-queries are allowed, but a run of them cannot exceed this.
    let max_moves = 4 * (n + 1);
    loop {
        if let Some(c) = falsified(&assigned) {
            return Ok(GameTranscript {
                moves,
                falsified: c.to_dimacs(),
                points,
            });
        }
        if moves.len() >= max_moves {
            return Err(Error::Protocol("game does not terminate".into()));
        }
        let var = prover
            .query(&assigned)
            .ok_or_else(|| Error::Protocol("prover stopped before a clause was falsified".into()))?;
        let slot = var.index() as usize;
        if slot == 0 || slot > n {
            return Err(Error::VarOutOfRange { var: var.index(), num_vars: n });
        }
        let answer = delayer.answer(var, &assigned)?;
        let value = match (answer, assigned[slot]) {
            (Answer::Star, None) => prover.choose(var, &assigned),
            (Answer::Star, Some(_)) => return Err(Error::Protocol(format!("`*` on assigned variable {}", var.index()))),
            (a, Some(old)) if a != Answer::of(old) => {
                return Err(Error::Protocol(format!("inconsistent answer on variable {}", var.index())))
            }
            (a, _) => a == Answer::One,
        };
        if assigned[slot].is_none() && matches!((scoring, answer), (Scoring::Stars, Answer::Star) | (Scoring::Ones, Answer::One)) {
            points += 1;
        }
        assigned[slot] = Some(value);
        prover.observe(var, value);
        moves.push(GameMove {
            var: var.index(),
            answer,
            value,
            points,
        });
    }
}

/// Walks a tree-like refutation from the root, querying pivots. `x = 0`
/// leads to the child containing `x`. After `*` it enters the smaller subtree.
pub struct TreeProver<'a> {
    tree: &'a TreeRefutation,
    node: usize,
    sizes: Vec<usize>,
}

impl<'a> TreeProver<'a> {
    pub fn new(tree: &'a TreeRefutation) -> Self {
        let mut sizes = vec![1; tree.nodes().len()];
        // Children precede parents in the arena.
        for (id, node) in tree.nodes().iter().enumerate() {
            if let NodeKind::Res { pos, neg, .. } = node.kind {
                sizes[id] = 1 + sizes[pos] + sizes[neg];
            }
        }
        TreeProver {
            tree,
            node: tree.root(),
            sizes,
        }
    }

    fn step(&mut self, value: bool) {
        if let NodeKind::Res { pos, neg, .. } = self.tree.node(self.node).kind {
            self.node = if value { neg } else { pos };
        }
    }
}

impl Prover for TreeProver<'_> {
    fn query(&mut self, assigned: &[Option<bool>]) -> Option<Var> {
        loop {
            match self.tree.node(self.node).kind {
                NodeKind::Leaf => return None,
                NodeKind::Res { pivot, .. } => match assigned.get(pivot.index() as usize).copied().flatten() {
                    Some(v) => self.step(v),
                    None => return Some(pivot),
                },
            }
        }
    }

    fn choose(&mut self, _var: Var, _assigned: &[Option<bool>]) -> bool {
        match self.tree.node(self.node).kind {
            NodeKind::Res { pos, neg, .. } => self.sizes[pos] > self.sizes[neg],
            NodeKind::Leaf => false,
        }
    }

    fn observe(&mut self, var: Var, value: bool) {
        if matches!(self.tree.node(self.node).kind, NodeKind::Res { pivot, .. } if pivot == var) {
            self.step(value);
        }
    }
}

/// Queries the lowest unassigned variable; picks 0 after `*`.
pub struct OrderProver;

impl Prover for OrderProver {
    fn query(&mut self, assigned: &[Option<bool>]) -> Option<Var> {
        (1..assigned.len()).find(|&v| assigned[v].is_none()).map(|v| Var::from_index(v as u32))
    }

    fn choose(&mut self, _var: Var, _assigned: &[Option<bool>]) -> bool {
        false
    }
}

/// Answers from a fixed total assignment.
pub struct AssignmentDelayer(pub Assignment);

impl Delayer for AssignmentDelayer {
    fn answer(&mut self, var: Var, _assigned: &[Option<bool>]) -> Result<Answer> {
        Ok(Answer::of(self.0.get(var)))
    }
}

/// Delayer for `F ∘ OR` built on a 1-query strategy for `F`: on a fresh
/// copy of `x` it asks the inner strategy about `x`, relaying 0 and turning
/// 1 into `*`; otherwise it answers with the known value of `x`.
pub struct OrDelayer<D> {
    n: usize,
    inner: D,
    inner_assigned: Vec<Option<bool>>,
}

impl<D: Delayer> OrDelayer<D> {
    /// `n` is the number of variables of the uncomposed formula.
    pub fn new(n: usize, inner: D) -> Self {
        OrDelayer {
            n,
            inner,
            inner_assigned: vec![None; n + 1],
        }
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }
}

impl<D: Delayer> Delayer for OrDelayer<D> {
    fn answer(&mut self, var: Var, assigned: &[Option<bool>]) -> Result<Answer> {
        if let Some(v) = assigned.get(var.index() as usize).copied().flatten() {
            return Ok(Answer::of(v));
        }
        let x = (var.index() as usize - 1) % self.n + 1;
        if let Some(v) = self.inner_assigned[x] {
            return Ok(Answer::of(v));
        }
        let xv = Var::from_index(x as u32);
        let inner = self.inner.answer(xv, &self.inner_assigned)?;
        let value = match inner {
            Answer::Zero => false,
            Answer::One => true,
            Answer::Star => return Err(Error::Protocol("inner strategy must answer 0 or 1".into())),
        };
        self.inner_assigned[x] = Some(value);
        Ok(if value { Answer::Star } else { Answer::Zero })
    }
}

/// Adversary for the 1-query game on the hinted pebbling formula of `g`.
///
/// Keeps a distinguished vertex `w` and a path `π` from `w` to the sink:
/// queried vertices are 0 exactly on `π`. Queries inside the subgraph of
/// `w` modulo the 1-vertices compare `p0 = bpeb(R → v)` with
/// `p1 = bpeb(R ∪ {v} → w)`. Only `p0 > p1` moves `w` to `v`: on a tie the
/// answer is 1, since a 0 would only keep `p0 ≥ bpeb(R → w) − 1`.
pub struct PebblingAdversary {
    g: Dag,
    ones: BTreeSet<usize>,
    w: usize,
    path: BTreeSet<usize>,
}

impl PebblingAdversary {
    pub fn new(g: Dag) -> Result<Self> {
        let z = g.sink()?;
        Ok(PebblingAdversary {
            g,
            ones: BTreeSet::new(),
            w: z,
            path: BTreeSet::from([z]),
        })
    }

    pub fn distinguished(&self) -> usize {
        self.w
    }

    pub fn path(&self) -> &BTreeSet<usize> {
        &self.path
    }

    /// Lowest-index path from `v` to `w` inside `sub`.
    fn extend_path(&mut self, v: usize, sub: &BTreeSet<usize>) {
        let mut x = v;
        self.path.insert(x);
        while x != self.w {
            x = self
                .g
                .succs(x)
                .into_iter()
                .filter(|s| sub.contains(s))
                .min()
                .expect("every vertex of the subgraph reaches w");
            self.path.insert(x);
        }
    }
}

impl Delayer for PebblingAdversary {
    fn answer(&mut self, var: Var, assigned: &[Option<bool>]) -> Result<Answer> {
        if let Some(v) = assigned.get(var.index() as usize).copied().flatten() {
            return Ok(Answer::of(v));
        }
        let v = var.index() as usize - 1;
        if v >= self.g.len() {
            return Err(Error::VarOutOfRange {
                var: var.index(),
                num_vars: self.g.len(),
            });
        }
        let sub = self.g.subgraph_modulo(self.w, &self.ones);
        let zero = if !sub.contains(&v) {
            self.path.contains(&v)
        } else {
            let p0 = bpeb(&self.g, &self.ones, v)?;
            let mut with_v = self.ones.clone();
            with_v.insert(v);
            let p1 = bpeb(&self.g, &with_v, self.w)?;
            if p0 > p1 {
                self.extend_path(v, &sub);
                self.w = v;
                true
            } else {
                false
            }
        };
        if !zero {
            self.ones.insert(v);
        }
        debug_assert_eq!(vertex_var(v), var);
        Ok(Answer::of(!zero))
    }
}
