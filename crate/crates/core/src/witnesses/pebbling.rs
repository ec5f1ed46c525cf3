use crate::error::{Error, Result};
use crate::families::{compose, copy_var, pebbling, pebhint, pyramid, pyramid_vertex, vertex_var, Gadget};
use crate::formula::{Clause, ClauseMultiset, Lit};
use crate::maxres::{MaxResStep, OccMultiset, ProofLog, Transition, TreeBuilder, TreeRefutation};

/// Number of steps in [`pebhint_or_maxres_proof`] for height `h`.
pub fn pebhint_or_proof_len(h: usize) -> usize {
    4 * h * h + 2 * h + 2
}

struct Builder {
    n: usize,
    occ: OccMultiset,
    steps: Vec<MaxResStep>,
}

impl Builder {
    fn lit(&self, v: usize, copy: usize, positive: bool) -> Lit {
        Lit::new(copy_var(self.n, vertex_var(v), copy), positive)
    }

    fn axiom(&self, c: Clause) -> Result<usize> {
        self.occ
            .find(&c)
            .ok_or_else(|| Error::Invalid(format!("missing clause {c}")))
    }

    fn resolve(&mut self, pos: usize, neg: usize, v: usize, copy: usize) -> Result<Transition> {
        let step = MaxResStep::Resolve {
            pos,
            neg,
            pivot: copy_var(self.n, vertex_var(v), copy),
        };
        self.steps.push(step);
        self.occ.apply(step)
    }
}

/// Id of the consequent of `t` equal to `c`.
fn pick(t: &Transition, c: &Clause) -> Result<usize> {
    t.added
        .iter()
        .position(|k| &k.clause == c)
        .map(|k| t.added_ids[k])
        .ok_or_else(|| Error::Invalid(format!("step {:?} did not produce {c}", t.step)))
}

/// MaxRes refutation of `Peb_hint(P_h) ∘ OR` with `4h² + 2h + 2` steps.
///
/// Vertices are processed level by level from the sources down, left to
/// right. Each derives `s1 ∨ s2` and, when `s` has a right sibling `t`,
/// leaves `v1 ∨ v2 ∨ t1 ∨ t2` for it. Unused consequents stay behind.
pub fn pebhint_or_maxres_proof(h: usize) -> Result<ProofLog> {
    if h == 0 {
        return Err(Error::Invalid("pyramid height must be at least 1".into()));
    }
    let g = pyramid(h);
    let f = compose(&pebhint(&g)?, Gadget::Or2);
    let mut b = Builder {
        n: g.len(),
        occ: OccMultiset::new(&f),
        steps: Vec::new(),
    };
    // Occurrence of `v1 ∨ v2` per vertex.
    let mut pair = vec![None; g.len()];
    for s in g.sources() {
        pair[s] = Some(b.axiom(Clause::new([b.lit(s, 1, true), b.lit(s, 2, true)]))?);
    }
    for k in (0..h).rev() {
        let mut carry: Option<usize> = None;
        for i in 0..=k {
            let s = pyramid_vertex(h, k, i);
            let u = pyramid_vertex(h, k + 1, i);
            let v = pyramid_vertex(h, k + 1, i + 1);
            let [u1, u2, v1, v2, s1, s2] = [(u, 1), (u, 2), (v, 1), (v, 2), (s, 1), (s, 2)].map(|(x, c)| b.lit(x, c, true));
            let cl = |lits: &[Lit]| Clause::new(lits.iter().copied());
            let imp = |a: Lit, c: Lit| Clause::new([a.negate(), c.negate(), s1, s2]);
            let had_left = carry.is_some();
            let start = match carry.take() {
                Some(id) => id,
                None => pair[u].expect("predecessor already derived"),
            };

            let ax = b.axiom(imp(u1, v1))?;
            let t1 = b.resolve(start, ax, u, 1)?;
            let r1 = pick(&t1, &cl(&[u2, v1.negate(), s1, s2]))?;
            let side = if had_left { cl(&[u1, u2, v1, s1, s2]) } else { cl(&[u1, u2, v1]) };
            let side = pick(&t1, &side)?;

            let ax = b.axiom(imp(u2, v1))?;
            let t2 = b.resolve(r1, ax, u, 2)?;
            let not_v1 = pick(&t2, &cl(&[v1.negate(), s1, s2]))?;

            let ax = b.axiom(imp(u1, v2))?;
            let t3 = b.resolve(side, ax, u, 1)?;
            let r3 = pick(&t3, &cl(&[u2, v1, v2.negate(), s1, s2]))?;

            let ax = b.axiom(imp(u2, v2))?;
            let t4 = b.resolve(r3, ax, u, 2)?;
            let r4 = pick(&t4, &cl(&[v1, v2.negate(), s1, s2]))?;

            let t5 = b.resolve(pair[v].expect("predecessor already derived"), r4, v, 2)?;
            let r5 = pick(&t5, &cl(&[v1, s1, s2]))?;
            let w1 = pick(&t5, &cl(&[v1, v2, s1.negate()]))?;
            let w2 = pick(&t5, &cl(&[v1, v2, s1, s2.negate()]))?;

            let t6 = b.resolve(r5, not_v1, v, 1)?;
            pair[s] = Some(pick(&t6, &cl(&[s1, s2]))?);

            if i < k {
                let t = pyramid_vertex(h, k, i + 1);
                let (t1, t2) = (b.lit(t, 1, true), b.lit(t, 2, true));
                let hint = b.axiom(cl(&[s1, s2, t1, t2]))?;
                let t7 = b.resolve(hint, w2, s, 2)?;
                let r7 = pick(&t7, &cl(&[v1, v2, s1, t1, t2]))?;
                let t8 = b.resolve(r7, w1, s, 1)?;
                carry = Some(pick(&t8, &cl(&[v1, v2, t1, t2]))?);
            }
        }
    }
    let z = g.sink()?;
    let (z1, z2) = (b.lit(z, 1, true), b.lit(z, 2, true));
    let not_z1 = b.axiom(Clause::new([z1.negate()]))?;
    let t = b.resolve(pair[z].expect("sink derived"), not_z1, z, 1)?;
    let only_z2 = pick(&t, &Clause::new([z2]))?;
    let not_z2 = b.axiom(Clause::new([z2.negate()]))?;
    b.resolve(only_z2, not_z2, z, 2)?;
    Ok(ProofLog::new(f, b.steps))
}

/// Tree-like refutation of the plain pebbling formula of the height-2
/// pyramid (variables `a..f` = `1..6`, sink `f`), together with that formula.
///
/// Axiom `b` is used on both sides of the `e` resolution, so simulating the
/// tree needs one weakening.
pub fn pyramid2_pebbling_tree() -> (ClauseMultiset, TreeRefutation) {
    let f = pebbling(&pyramid(2)).expect("pyramid has one sink");
    let c = |lits: &[i64]| Clause::from_dimacs(lits).expect("valid literals");
    let var = |v: u32| crate::formula::Var::from_index(v);
    let mut t = TreeBuilder::new();
    let build = |t: &mut TreeBuilder| -> Result<usize> {
        // d from a, b
        let a = t.leaf(c(&[1]));
        let abd = t.leaf(c(&[-1, -2, 4]));
        let bd = t.res(var(1), a, abd)?;
        let b = t.leaf(c(&[2]));
        let d = t.res(var(2), b, bd)?;
        // e from b, c
        let cc = t.leaf(c(&[3]));
        let b2 = t.leaf(c(&[2]));
        let bce = t.leaf(c(&[-2, -3, 5]));
        let ce = t.res(var(2), b2, bce)?;
        let e = t.res(var(3), cc, ce)?;
        // f from d, e
        let def = t.leaf(c(&[-4, -5, 6]));
        let ef = t.res(var(4), d, def)?;
        let ff = t.res(var(5), e, ef)?;
        let nf = t.leaf(c(&[-6]));
        t.res(var(6), ff, nf)
    };
    let root = build(&mut t).expect("resolvents are well formed");
    (f, t.finish(root).expect("valid refutation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxres::{check_viol_invariant, replay, simulate_treeres};
    use crate::verdict::CheckMode;

    #[test]
    fn proof_lengths_match_formula() {
        for h in 1..=5 {
            let log = pebhint_or_maxres_proof(h).unwrap();
            assert_eq!(log.len(), pebhint_or_proof_len(h));
            let r = replay(&log).unwrap();
            assert!(r.refuted, "h = {h}");
        }
        let n = pyramid(3).len();
        assert_eq!(pebhint_or_proof_len(3), 8 * n - 10 * 3 - 6);
    }

    #[test]
    fn height_one_is_viol_preserving() {
        let log = pebhint_or_maxres_proof(1).unwrap();
        assert_eq!(log.len(), 8);
        assert!(check_viol_invariant(&log, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn pyramid2_tree_shape() {
        let (f, t) = pyramid2_pebbling_tree();
        assert_eq!(t.size(), 15);
        assert_eq!(t.resolutions(), 7);
        t.check_axioms(&f).unwrap();
        assert!(t.is_regular());
        let log = simulate_treeres(&f, &t).unwrap();
        assert_eq!(log.resolutions(), 7);
        assert_eq!(log.weakenings(), 1);
        assert!(replay(&log).unwrap().refuted);
    }
}
