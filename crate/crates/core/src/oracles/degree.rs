use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{ClauseMultiset, Cube, CubeMultiset};
use crate::subcubesums::{viol_table, PseudoFunction};

use super::lp::{conical_junta_feasible, cubes_of_width, verify_farkas, verify_junta_witness, FarkasCertificate, JuntaVerdict, JuntaWitness, PackedCube};

/// Limits for the integral certificate search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 5_000_000,
            max_time: Duration::from_secs(30),
        }
    }
}

/// Outcome of the integral search at one width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralSearch {
    Found(CubeMultiset),
    /// The search space was exhausted without a solution.
    None,
    /// The budget ran out first.
    Budget,
}

/// Least widths of a conical junta and of an integral cube multiset
/// equal to `viol_F − 1`.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub junta_degree: usize,
    pub junta_witness: JuntaWitness,
    /// Infeasibility proof at `junta_degree − 1`, absent when it is 0.
    pub lower_bound: Option<FarkasCertificate>,
    /// Result of the independent check of `lower_bound` and the witness.
    pub verified: bool,
    pub integral_degree: Option<usize>,
    pub integral_certificate: Option<CubeMultiset>,
    /// False when the budget ran out before the integral degree was settled.
    pub integral_complete: bool,
    pub nodes: u64,
}

impl DegreeReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "junta_degree": self.junta_degree,
            "integral_degree": self.integral_degree,
            "integral_complete": self.integral_complete,
            "verified": self.verified,
            "nodes": self.nodes,
            "junta_witness": self.junta_witness.to_json(),
            "lower_bound": self.lower_bound.as_ref().map(FarkasCertificate::to_json),
            "integral_certificate": self.integral_certificate.as_ref().map(|g| {
                g.cubes().iter().map(Cube::to_dimacs).collect::<Vec<_>>()
            }),
        })
    }
}

/// Least `d` such that `target` is a conical junta of width `d`, with the
/// witness and the dual ray at `d − 1`.
pub fn min_junta_degree(target: &PseudoFunction) -> Result<(usize, JuntaWitness, Option<FarkasCertificate>)> {
    let mut below = None;
    for d in 0..=target.num_vars() {
        match conical_junta_feasible(target, d)? {
            JuntaVerdict::Feasible(w) => return Ok((d, w, below)),
            JuntaVerdict::Infeasible(cert) => below = Some(cert),
        }
    }
    unreachable!("point cubes realize every nonnegative integral target")
}

/// Degree oracles for the SubCubeSums target `viol_F − 1`.
pub fn scs_min_degree(f: &ClauseMultiset, budget: SearchBudget) -> Result<DegreeReport> {
    let target = viol_table(f)?.add_constant(-1);
    if target.first_negative().is_some() {
        return Err(Error::Satisfiable);
    }
    let (junta_degree, junta_witness, lower_bound) = min_junta_degree(&target)?;
    let verified = verify_junta_witness(&target, junta_degree, &junta_witness)?
        && lower_bound.as_ref().is_none_or(|c| verify_farkas(&target, c));
    let start = Instant::now();
    let mut nodes = 0;
    let mut report = DegreeReport {
        junta_degree,
        junta_witness,
        lower_bound,
        verified,
        integral_degree: None,
        integral_certificate: None,
        integral_complete: false,
        nodes: 0,
    };
    for d in junta_degree..=target.num_vars() {
        let left = SearchBudget {
            max_nodes: budget.max_nodes.saturating_sub(nodes),
            max_time: budget.max_time.saturating_sub(start.elapsed()),
        };
        let (outcome, used) = integral_search(&target, d, left);
        nodes += used;
        match outcome {
            IntegralSearch::Found(g) => {
                report.integral_degree = Some(d);
                report.integral_certificate = Some(g);
                report.integral_complete = true;
                break;
            }
            IntegralSearch::None => continue,
            IntegralSearch::Budget => break,
        }
    }
    report.nodes = nodes;
    Ok(report)
}

/// Depth-first covering search for a cube multiset of width at most `d`
/// whose hit counts equal `target`. Always covers the first point with
/// positive residual, using only cubes inside the residual support.
/// Returns the outcome and the number of nodes visited.
pub fn integral_search(target: &PseudoFunction, d: usize, budget: SearchBudget) -> (IntegralSearch, u64) {
    let n = target.num_vars();
    let lex = |p: u64| if n == 0 { 0 } else { (p.reverse_bits() >> (64 - n)) as usize };
    // Larger cubes first.
    let cubes: Vec<(PackedCube, Vec<usize>)> = (0..=d.min(n))
        .flat_map(|k| cubes_of_width(n, k))
        .map(|c| (c, c.points(n).map(lex).collect()))
        .filter(|(_, pts): &(PackedCube, Vec<usize>)| pts.iter().all(|&i| target.at_lex(i) > 0))
        .collect();
    let mut by_point: Vec<Vec<usize>> = vec![Vec::new(); 1 << n];
    for (j, (_, pts)) in cubes.iter().enumerate() {
        for &p in pts {
            by_point[p].push(j);
        }
    }
    let mut s = Search {
        cubes: &cubes,
        by_point: &by_point,
        residual: target.values().to_vec(),
        chosen: Vec::new(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
        start: Instant::now(),
    };
    let outcome = match s.run() {
        Some(true) => {
            let found = s.chosen.iter().map(|&j| cubes[j].0.to_cube()).collect();
            IntegralSearch::Found(CubeMultiset::new(n, found).expect("cubes within range"))
        }
        Some(false) => IntegralSearch::None,
        None => IntegralSearch::Budget,
    };
    (outcome, s.nodes)
}

const FAILED_CACHE_LIMIT: usize = 1 << 20;

struct Search<'a> {
    cubes: &'a [(PackedCube, Vec<usize>)],
    by_point: &'a [Vec<usize>],
    residual: Vec<i64>,
    chosen: Vec<usize>,
    failed: HashSet<Vec<i64>>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
}

impl Search<'_> {
    /// `Some(found)` when the subtree was fully decided, `None` on budget.
    fn run(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes || (self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.budget.max_time) {
            return None;
        }
        let Some(p) = self.residual.iter().position(|&r| r > 0) else {
            return Some(true);
        };
        if self.failed.contains(&self.residual) {
            return Some(false);
        }
        for &j in &self.by_point[p] {
            let pts = &self.cubes[j].1;
            if pts.iter().any(|&q| self.residual[q] <= 0) {
                continue;
            }
            for &q in pts {
                self.residual[q] -= 1;
            }
            self.chosen.push(j);
            let r = self.run();
            if r != Some(false) {
                if r.is_none() {
                    self.chosen.pop();
                    for &q in pts {
                        self.residual[q] += 1;
                    }
                }
                return r;
            }
            self.chosen.pop();
            for &q in pts {
                self.residual[q] += 1;
            }
        }
        if self.failed.len() < FAILED_CACHE_LIMIT {
            self.failed.insert(self.residual.clone());
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{php, tseitin, ChargedGraph};
    use crate::formula::Clause;
    use crate::subcubesums::{check_certificate, ScsCertificate};
    use crate::verdict::CheckMode;

    #[test]
    fn php1_degrees() {
        let r = scs_min_degree(&php(1), SearchBudget::default()).unwrap();
        assert_eq!((r.junta_degree, r.integral_degree), (2, Some(2)));
        assert!(r.verified && r.integral_complete);
    }

    #[test]
    fn contradiction_has_degree_zero() {
        let f = ClauseMultiset::new(1, vec![Clause::from_dimacs(&[1]).unwrap(), Clause::from_dimacs(&[-1]).unwrap()]).unwrap();
        let r = scs_min_degree(&f, SearchBudget::default()).unwrap();
        assert_eq!((r.junta_degree, r.integral_degree), (0, Some(0)));
        assert!(r.lower_bound.is_none());
    }

    #[test]
    fn triangle_tseitin_certificate_checks() {
        let f = tseitin(&ChargedGraph::triangle());
        let r = scs_min_degree(&f, SearchBudget::default()).unwrap();
        assert!(r.verified);
        let d = r.integral_degree.unwrap();
        assert!(r.junta_degree <= d);
        let cert = ScsCertificate::new(f, r.integral_certificate.unwrap()).unwrap();
        assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let f = tseitin(&ChargedGraph::complete(4));
        let r = scs_min_degree(
            &f,
            SearchBudget {
                max_nodes: 1,
                max_time: Duration::from_secs(1),
            },
        )
        .unwrap();
        assert!(!r.integral_complete);
        assert_eq!(r.integral_degree, None);
    }

    #[test]
    fn satisfiable_formula_rejected() {
        let f = ClauseMultiset::new(1, vec![Clause::from_dimacs(&[1]).unwrap()]).unwrap();
        assert_eq!(scs_min_degree(&f, SearchBudget::default()).unwrap_err(), Error::Satisfiable);
    }
}
