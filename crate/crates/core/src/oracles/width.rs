use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::formula::ClauseMultiset;

/// Clause as a pair of bitmasks (positive, negative).
type Bits = (u64, u64);

const WIDTH_LIMIT: usize = 64;

/// Least `w` such that resolution restricted to clauses of width at most
/// `w` (axioms included) derives the empty clause.
pub fn min_res_width(f: &ClauseMultiset) -> Result<usize> {
    let n = f.num_vars();
    if n > WIDTH_LIMIT {
        return Err(Error::TooManyVars {
            num_vars: n,
            limit: WIDTH_LIMIT,
        });
    }
    let axioms: Vec<Bits> = f
        .clauses()
        .iter()
        .filter(|c| !c.is_tautology())
        .map(|c| {
            c.lits().iter().fold((0, 0), |(p, q), l| {
                let bit = 1u64 << (l.var().index() - 1);
                if l.is_positive() { (p | bit, q) } else { (p, q | bit) }
            })
        })
        .collect();
    if axioms.iter().any(|&(p, q)| p | q == 0) {
        return Ok(0);
    }
    let max_w = axioms.iter().map(|&(p, q)| (p | q).count_ones() as usize).max().unwrap_or(0);
    for w in 1..=n.max(max_w) {
        if saturate(&axioms, w) {
            return Ok(w);
        }
    }
    Err(Error::Satisfiable)
}

fn width((p, q): Bits) -> usize {
    (p | q).count_ones() as usize
}

/// Width-bounded saturation; true iff the empty clause appears.
fn saturate(axioms: &[Bits], w: usize) -> bool {
    let mut known: HashSet<Bits> = HashSet::new();
    let mut list: Vec<Bits> = Vec::new();
    for &c in axioms {
        if width(c) <= w && known.insert(c) {
            list.push(c);
        }
    }
    let mut next = 0;
    while next < list.len() {
        let c = list[next];
        next += 1;
        for k in 0..next {
            let d = list[k];
            for (a, b) in [(c, d), (d, c)] {
                let clash_pos = a.0 & b.1;
                // Exactly one clashing variable, taken positive in `a`.
                if clash_pos.count_ones() != 1 || (a.1 & b.0) != 0 {
                    continue;
                }
                let r = ((a.0 | b.0) & !clash_pos, (a.1 | b.1) & !clash_pos);
                if r == (0, 0) {
                    return true;
                }
                if width(r) <= w && known.insert(r) {
                    list.push(r);
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{php, tseitin, ChargedGraph};
    use crate::formula::Clause;

    fn cnf(n: usize, cs: &[&[i64]]) -> ClauseMultiset {
        ClauseMultiset::new(n, cs.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(min_res_width(&cnf(1, &[&[1], &[-1]])), Ok(1));
        assert_eq!(min_res_width(&php(1)), Ok(2));
        assert_eq!(min_res_width(&cnf(1, &[&[]])), Ok(0));
        assert_eq!(min_res_width(&cnf(2, &[&[1, 2]])), Err(Error::Satisfiable));
    }

    #[test]
    fn clause_order_does_not_matter() {
        let f = tseitin(&ChargedGraph::triangle());
        let w = min_res_width(&f).unwrap();
        let mut rev = f.clauses().to_vec();
        rev.reverse();
        assert_eq!(min_res_width(&ClauseMultiset::new(f.num_vars(), rev).unwrap()).unwrap(), w);
        assert!(w <= f.num_vars());
    }
}
