use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Clause, ClauseMultiset, Lit, Var};

/// One step of a MaxRes/MaxResW derivation, addressing clause occurrences by id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxResStep {
    /// `pos` contains `pivot`, `neg` contains its negation.
    Resolve { pos: usize, neg: usize, pivot: Var },
    /// Replace occurrence `occ` (which lacks `var`) by its two extensions.
    Weaken { occ: usize, var: Var },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsequentKind {
    Resolvent,
    /// Weakening of the positive antecedent `x ∨ A`.
    WeakenPos,
    /// Weakening of the negative antecedent `¬x ∨ B`.
    WeakenNeg,
    /// Output of the weakening rule.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequent {
    pub clause: Clause,
    pub kind: ConsequentKind,
}

/// Consequents of the MaxSAT resolution rule on `x ∨ A` and `¬x ∨ B`, in
/// emission order: the resolvent `A ∨ B`, then `x ∨ A ∨ b_1 ∨ ... ∨ b_{k-1} ∨ ¬b_k`
/// for `B \ A = {b_1, ..., b_t}`, then the symmetric weakenings of `¬x ∨ B`.
/// `B \ A` and `A \ B` are taken in canonical literal order (by variable).
/// Tautological consequents are dropped.
pub fn resolve_consequents(pos: &Clause, neg: &Clause, pivot: Var) -> Result<Vec<Consequent>> {
    let x = Lit::new(pivot, true);
    if !pos.contains(x) {
        return Err(Error::InvalidStep(format!("{pos} does not contain {x}")));
    }
    if !neg.contains(x.negate()) {
        return Err(Error::InvalidStep(format!("{neg} does not contain {}", x.negate())));
    }
    let a = pos.without(x);
    let b = neg.without(x.negate());
    let mut out = Vec::with_capacity(1 + a.width() + b.width());
    let mut emit = |clause: Clause, kind| {
        if !clause.is_tautology() {
            out.push(Consequent { clause, kind });
        }
    };
    emit(a.union(&b), ConsequentKind::Resolvent);
    for (base, extra, kind) in [
        (pos, b.difference(&a), ConsequentKind::WeakenPos),
        (neg, a.difference(&b), ConsequentKind::WeakenNeg),
    ] {
        let mut prefix: Vec<Lit> = base.lits().to_vec();
        for lit in extra {
            emit(Clause::new(prefix.iter().copied().chain([lit.negate()])), kind);
            prefix.push(lit);
        }
    }
    Ok(out)
}

pub fn weaken_consequents(c: &Clause, var: Var) -> Result<Vec<Consequent>> {
    if c.mentions(var) {
        return Err(Error::VariablePresent(var));
    }
    Ok(vec![
        Consequent {
            clause: c.with(Lit::new(var, true)),
            kind: ConsequentKind::Split,
        },
        Consequent {
            clause: c.with(Lit::new(var, false)),
            kind: ConsequentKind::Split,
        },
    ])
}

/// Applies the MaxSAT resolution rule to the clauses at positions `i`
/// (containing `pivot`) and `j` (containing its negation). Consequents are
/// appended after the remaining clauses.
pub fn maxres_step(f: &ClauseMultiset, i: usize, j: usize, pivot: Var) -> Result<ClauseMultiset> {
    if i == j {
        return Err(Error::InvalidStep("antecedents must be distinct occurrences".into()));
    }
    let pos = f.clauses().get(i).ok_or(Error::NoSuchOccurrence(i))?;
    let neg = f.clauses().get(j).ok_or(Error::NoSuchOccurrence(j))?;
    let added = resolve_consequents(pos, neg, pivot)?;
    replace(f, &[i, j], added)
}

/// Applies the weakening rule to the clause at position `i`.
pub fn weaken_step(f: &ClauseMultiset, i: usize, var: Var) -> Result<ClauseMultiset> {
    let c = f.clauses().get(i).ok_or(Error::NoSuchOccurrence(i))?;
    let added = weaken_consequents(c, var)?;
    replace(f, &[i], added)
}

fn replace(f: &ClauseMultiset, drop: &[usize], added: Vec<Consequent>) -> Result<ClauseMultiset> {
    let clauses = f
        .clauses()
        .iter()
        .enumerate()
        .filter(|(k, _)| !drop.contains(k))
        .map(|(_, c)| c.clone())
        .chain(added.into_iter().map(|c| c.clause))
        .collect();
    ClauseMultiset::new(f.num_vars(), clauses)
}

/// Clause multiset whose occurrences carry stable ids.
///
/// The initial clauses get ids `1..=m` in order; every consequent gets the
/// next unused id in emission order. Consumed occurrences are never reused.
#[derive(Clone, Debug)]
pub struct OccMultiset {
    num_vars: usize,
    slots: Vec<Option<Clause>>,
    live: usize,
}

/// What one step removed and added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub step: MaxResStep,
    pub removed: Vec<Clause>,
    pub added: Vec<Consequent>,
    pub added_ids: Vec<usize>,
}

impl OccMultiset {
    pub fn new(f: &ClauseMultiset) -> Self {
        OccMultiset {
            num_vars: f.num_vars(),
            slots: f.clauses().iter().cloned().map(Some).collect(),
            live: f.len(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, id: usize) -> Option<&Clause> {
        id.checked_sub(1).and_then(|k| self.slots.get(k)).and_then(Option::as_ref)
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn next_id(&self) -> usize {
        self.slots.len() + 1
    }

    /// Live occurrences as `(id, clause)` pairs, in id order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Clause)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.as_ref().map(|c| (k + 1, c)))
    }

    /// Id of some live occurrence equal to `clause`.
    pub fn find(&self, clause: &Clause) -> Option<usize> {
        self.iter().find(|(_, c)| *c == clause).map(|(id, _)| id)
    }

    pub fn contains_empty(&self) -> bool {
        self.iter().any(|(_, c)| c.is_empty())
    }

    fn take(&mut self, id: usize) -> Result<Clause> {
        let slot = id
            .checked_sub(1)
            .and_then(|k| self.slots.get_mut(k))
            .ok_or(Error::NoSuchOccurrence(id))?;
        let c = slot.take().ok_or(Error::NoSuchOccurrence(id))?;
        self.live -= 1;
        Ok(c)
    }

    pub fn apply(&mut self, step: MaxResStep) -> Result<Transition> {
        let (removed, added) = match step {
            MaxResStep::Resolve { pos, neg, pivot } => {
                if pos == neg {
                    return Err(Error::InvalidStep("antecedents must be distinct occurrences".into()));
                }
                let p = self.get(pos).ok_or(Error::NoSuchOccurrence(pos))?;
                let n = self.get(neg).ok_or(Error::NoSuchOccurrence(neg))?;
                let added = resolve_consequents(p, n, pivot)?;
                (vec![self.take(pos)?, self.take(neg)?], added)
            }
            MaxResStep::Weaken { occ, var } => {
                let c = self.get(occ).ok_or(Error::NoSuchOccurrence(occ))?;
                if var.index() as usize > self.num_vars {
                    return Err(Error::VarOutOfRange {
                        var: var.index(),
                        num_vars: self.num_vars,
                    });
                }
                let added = weaken_consequents(c, var)?;
                (vec![self.take(occ)?], added)
            }
        };
        let mut added_ids = Vec::with_capacity(added.len());
        for c in &added {
            added_ids.push(self.next_id());
            self.slots.push(Some(c.clause.clone()));
            self.live += 1;
        }
        Ok(Transition {
            step,
            removed,
            added,
            added_ids,
        })
    }

    pub fn to_multiset(&self) -> ClauseMultiset {
        ClauseMultiset::new(self.num_vars, self.iter().map(|(_, c)| c.clone()).collect())
            .expect("occurrences stay within range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{viol, Assignment};

    fn cl(lits: &[i64]) -> Clause {
        Clause::from_dimacs(lits).unwrap()
    }

    fn cnf(n: usize, cs: &[&[i64]]) -> ClauseMultiset {
        ClauseMultiset::new(n, cs.iter().map(|c| cl(c)).collect()).unwrap()
    }

    fn same_viol(f: &ClauseMultiset, g: &ClauseMultiset) -> bool {
        (0..1u64 << f.num_vars()).all(|i| {
            let a = Assignment::from_lex_index(i, f.num_vars());
            viol(f, &a).unwrap() == viol(g, &a).unwrap()
        })
    }

    #[test]
    fn rule_with_one_side_literal_each() {
        // x=1, a=2, b=3
        let f = cnf(3, &[&[1, 2], &[-1, 3]]);
        let g = maxres_step(&f, 0, 1, Var::from_index(1)).unwrap();
        assert!(g.same_multiset(&cnf(3, &[&[2, 3], &[1, 2, -3], &[-1, 3, -2]])));
        assert!(same_viol(&f, &g));
    }

    #[test]
    fn complementary_units_give_empty_clause() {
        let f = cnf(1, &[&[1], &[-1]]);
        let g = maxres_step(&f, 0, 1, Var::from_index(1)).unwrap();
        assert_eq!(g.clauses(), &[Clause::empty()]);
    }

    #[test]
    fn shared_side_literal_has_no_weakenings() {
        let f = cnf(2, &[&[1, 2], &[-1, 2]]);
        let g = maxres_step(&f, 0, 1, Var::from_index(1)).unwrap();
        assert_eq!(g.clauses(), &[cl(&[2])]);
        assert!(same_viol(&f, &g));
    }

    #[test]
    fn weakenings_follow_variable_order() {
        // x ∨ a  and  ¬x ∨ b2 ∨ b1 with b1 < b2 by index
        let f = cnf(4, &[&[1, 2], &[-1, 4, 3]]);
        let g = maxres_step(&f, 0, 1, Var::from_index(1)).unwrap();
        assert_eq!(
            g.clauses(),
            &[cl(&[2, 3, 4]), cl(&[1, 2, -3]), cl(&[1, 2, 3, -4]), cl(&[-1, 3, 4, -2])]
        );
        assert!(same_viol(&f, &g));
    }

    #[test]
    fn tautological_consequents_are_dropped() {
        let f = cnf(2, &[&[1, 2], &[-1, -2]]);
        let g = maxres_step(&f, 0, 1, Var::from_index(1)).unwrap();
        assert!(g.same_multiset(&f));
    }

    #[test]
    fn invalid_resolve_steps() {
        let f = cnf(2, &[&[1, 2], &[1, -2]]);
        assert!(matches!(maxres_step(&f, 0, 1, Var::from_index(1)), Err(Error::InvalidStep(_))));
        assert!(matches!(maxres_step(&f, 1, 0, Var::from_index(2)), Err(Error::InvalidStep(_))));
        assert!(maxres_step(&f, 0, 0, Var::from_index(1)).is_err());
        assert!(maxres_step(&f, 0, 5, Var::from_index(1)).is_err());
    }

    #[test]
    fn weaken_examples() {
        let f = cnf(2, &[&[2]]);
        let g = weaken_step(&f, 0, Var::from_index(1)).unwrap();
        assert!(g.same_multiset(&cnf(2, &[&[2, 1], &[2, -1]])));
        let f = ClauseMultiset::new(1, vec![Clause::empty()]).unwrap();
        let g = weaken_step(&f, 0, Var::from_index(1)).unwrap();
        assert!(g.same_multiset(&cnf(1, &[&[1], &[-1]])));
        let f = cnf(2, &[&[2], &[2]]);
        let g = weaken_step(&f, 0, Var::from_index(1)).unwrap();
        assert!(g.same_multiset(&cnf(2, &[&[2], &[2, 1], &[2, -1]])));
        assert_eq!(
            weaken_step(&f, 0, Var::from_index(2)),
            Err(Error::VariablePresent(Var::from_index(2)))
        );
    }

    #[test]
    fn occurrence_ids_are_stable() {
        let f = cnf(2, &[&[1, 2], &[-1, 2], &[-2]]);
        let mut occ = OccMultiset::new(&f);
        let t = occ
            .apply(MaxResStep::Resolve {
                pos: 1,
                neg: 2,
                pivot: Var::from_index(1),
            })
            .unwrap();
        assert_eq!(t.added_ids, vec![4]);
        assert_eq!(occ.get(4), Some(&cl(&[2])));
        assert!(occ.get(1).is_none());
        assert!(occ
            .apply(MaxResStep::Weaken {
                occ: 1,
                var: Var::from_index(2)
            })
            .is_err());
        occ.apply(MaxResStep::Resolve {
            pos: 4,
            neg: 3,
            pivot: Var::from_index(2),
        })
        .unwrap();
        assert!(occ.contains_empty());
        assert_eq!(occ.len(), 1);
    }
}
