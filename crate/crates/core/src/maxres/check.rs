use rand::Rng;

use crate::error::{Error, Result};
use crate::formula::{eval_clause, Assignment, Clause, ClauseMultiset};
use crate::packed::{first_lex_failure, PackedTerms, PACKED_LIMIT};
use crate::verdict::{miss_probability, sampler, CheckMode, CheckOptions, Verdict};

use super::log::ProofLog;
use super::rule::{OccMultiset, Transition};

#[derive(Clone, Debug)]
pub struct Replay {
    pub final_multiset: ClauseMultiset,
    pub refuted: bool,
    /// Proof size: the number of steps applied.
    pub steps: usize,
    pub trace: Vec<Transition>,
}

/// Applies every step of `log`. An invalid step aborts with its index.
pub fn replay(log: &ProofLog) -> Result<Replay> {
    let mut occ = OccMultiset::new(&log.initial);
    let mut trace = Vec::with_capacity(log.steps.len());
    for (index, &step) in log.steps.iter().enumerate() {
        let t = occ.apply(step).map_err(|e| Error::StepFailed {
            index,
            reason: e.to_string(),
        })?;
        trace.push(t);
    }
    let final_multiset = occ.to_multiset();
    Ok(Replay {
        refuted: final_multiset.contains_empty(),
        final_multiset,
        steps: log.steps.len(),
        trace,
    })
}

/// Replays `log` and checks that no step changes `viol` at any checked
/// assignment. Malformed logs are an error; a `viol` change is a failing verdict.
pub fn check_viol_invariant(log: &ProofLog, opts: impl Into<CheckOptions>) -> Result<Verdict> {
    let r = replay(log)?;
    Ok(check_trace(log.initial.num_vars(), &r.trace, opts))
}

/// Checks each transition locally: the falsified count of the removed
/// clauses must equal that of the added clauses, which is exactly
/// `viol` before = `viol` after.
pub fn check_trace(num_vars: usize, trace: &[Transition], opts: impl Into<CheckOptions>) -> Verdict {
    let opts = opts.into();
    let (mode, auto) = opts.effective(num_vars);
    let mut verdict = Verdict::new(mode, auto);
    match mode {
        CheckMode::Exhaustive => {
            for (k, t) in trace.iter().enumerate() {
                let (before, after) = packed_sides(t);
                let bad = first_lex_failure(num_vars, |a| before.count(a) != after.count(a));
                verdict.checked += 1u64 << num_vars;
                if let Some(idx) = bad {
                    let a = Assignment::from_lex_index(idx, num_vars);
                    let detail = step_detail(t, &a);
                    let mut v = verdict.fail(a, detail);
                    v.step = Some(k);
                    return v;
                }
            }
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = sampler(seed);
            let points: Vec<Assignment> = (0..samples).map(|_| Assignment::random(num_vars, &mut rng)).collect();
            let mut degree = 0;
            for (k, t) in trace.iter().enumerate() {
                degree = degree.max(t.removed.iter().chain(t.added.iter().map(|c| &c.clause)).map(Clause::width).max().unwrap_or(0));
                let bad = if num_vars <= PACKED_LIMIT {
                    let (before, after) = packed_sides(t);
                    points.iter().find(|a| before.count(a.packed()) != after.count(a.packed()))
                } else {
                    points.iter().find(|a| count(&t.removed, a) != count(t.added.iter().map(|c| &c.clause), a))
                };
                verdict.checked += samples;
                if let Some(a) = bad {
                    let detail = step_detail(t, a);
                    let mut v = verdict.fail(a.clone(), detail);
                    v.step = Some(k);
                    return v;
                }
            }
            verdict.miss_probability = Some(miss_probability(samples, degree));
        }
    }
    verdict
}

fn packed_sides(t: &Transition) -> (PackedTerms, PackedTerms) {
    (
        PackedTerms::from_clauses(&t.removed),
        PackedTerms::from_clauses(t.added.iter().map(|c| &c.clause)),
    )
}

fn count<'a>(clauses: impl IntoIterator<Item = &'a Clause>, a: &Assignment) -> u64 {
    clauses
        .into_iter()
        .filter(|c| !eval_clause(c, a).expect("clauses within range"))
        .count() as u64
}

fn step_detail(t: &Transition, a: &Assignment) -> String {
    format!(
        "{:?}: removed clauses falsify {} but consequents falsify {}",
        t.step,
        count(&t.removed, a),
        count(t.added.iter().map(|c| &c.clause), a)
    )
}

/// Removes one consequent of step `step` (for mutation testing).
pub fn drop_consequent(trace: &mut [Transition], step: usize, which: usize) -> Option<Clause> {
    let t = trace.get_mut(step)?;
    if which >= t.added.len() {
        return None;
    }
    t.added_ids.remove(which);
    Some(t.added.remove(which).clause)
}

/// Draws a uniformly random applicable step on `occ`, if any exists.
pub fn random_step<R: Rng + ?Sized>(occ: &OccMultiset, rng: &mut R, allow_weaken: bool) -> Option<super::MaxResStep> {
    use crate::formula::{Lit, Var};
    use super::MaxResStep;
    let live: Vec<(usize, &Clause)> = occ.iter().collect();
    let mut options = Vec::new();
    for &(i, ci) in &live {
        for l in ci.lits().iter().filter(|l| l.is_positive()) {
            for &(j, cj) in &live {
                if i != j && cj.contains(Lit::new(l.var(), false)) {
                    options.push(MaxResStep::Resolve {
                        pos: i,
                        neg: j,
                        pivot: l.var(),
                    });
                }
            }
        }
        if allow_weaken {
            for v in 1..=occ.num_vars() as u32 {
                let var = Var::from_index(v);
                if !ci.mentions(var) {
                    options.push(MaxResStep::Weaken { occ: i, var });
                }
            }
        }
    }
    if options.is_empty() {
        None
    } else {
        Some(options[rng.random_range(0..options.len())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Var;
    use crate::maxres::MaxResStep;

    fn cnf(n: usize, cs: &[&[i64]]) -> ClauseMultiset {
        ClauseMultiset::new(n, cs.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_resolution_refutes() {
        let log = ProofLog::new(
            cnf(1, &[&[1], &[-1]]),
            vec![MaxResStep::Resolve {
                pos: 1,
                neg: 2,
                pivot: Var::from_index(1),
            }],
        );
        let r = replay(&log).unwrap();
        assert!(r.refuted);
        assert_eq!(r.steps, 1);
        assert!(check_viol_invariant(&log, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn empty_log_over_satisfiable_formula() {
        let log = ProofLog::new(cnf(2, &[&[1, 2]]), vec![]);
        let r = replay(&log).unwrap();
        assert!(!r.refuted);
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn invalid_step_reports_index() {
        let log = ProofLog::new(
            cnf(2, &[&[1], &[-1]]),
            vec![
                MaxResStep::Weaken {
                    occ: 1,
                    var: Var::from_index(2),
                },
                MaxResStep::Weaken {
                    occ: 1,
                    var: Var::from_index(2),
                },
            ],
        );
        assert!(matches!(replay(&log), Err(Error::StepFailed { index: 1, .. })));
    }

    #[test]
    fn dropped_weakening_is_detected() {
        let log = ProofLog::new(
            cnf(3, &[&[1, 2], &[-1, 3]]),
            vec![MaxResStep::Resolve {
                pos: 1,
                neg: 2,
                pivot: Var::from_index(1),
            }],
        );
        let mut r = replay(&log).unwrap();
        assert!(check_trace(3, &r.trace, CheckMode::Exhaustive).pass);
        drop_consequent(&mut r.trace, 0, 1).unwrap();
        let v = check_trace(3, &r.trace, CheckMode::Exhaustive);
        assert!(!v.pass);
        assert_eq!(v.step, Some(0));
        // The dropped clause x1 ∨ x2 ∨ ¬x3 is falsified only at 001.
        let w = v.witness.unwrap();
        assert_eq!(w.to_string(), "001");
        let sampled = check_trace(3, &r.trace, CheckOptions::sampled(200, 3));
        assert!(!sampled.pass);
    }
}
