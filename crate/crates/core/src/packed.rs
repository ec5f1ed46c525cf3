//! Word-packed evaluation for formulas over at most 64 variables.
//!
//! A clause is falsified by `a` iff `a & mask == value` where `mask` covers
//! its variables and `value` has the bits of its negative literals; a cube
//! contains `a` iff `a & mask == value` with `value` the bits fixed to 1.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::{lex_to_packed, Clause, ClauseMultiset, Cube, CubeMultiset};

pub const PACKED_LIMIT: usize = 64;

/// Default bound on `num_vars` for exhaustive sweeps.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Clone, Debug, Default)]
pub struct PackedTerms {
    terms: Vec<(u64, u64, u64)>,
}

impl PackedTerms {
    pub fn from_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Self {
        let mut t = PackedTerms::default();
        for c in clauses {
            t.push_clause(c, 1);
        }
        t.merge();
        t
    }

    pub fn from_formula(f: &ClauseMultiset) -> Result<Self> {
        limit(f.num_vars())?;
        Ok(Self::from_clauses(f.clauses()))
    }

    pub fn from_cubes(g: &CubeMultiset) -> Result<Self> {
        limit(g.num_vars())?;
        let mut t = PackedTerms::default();
        for c in g.cubes() {
            t.push_cube(c, 1);
        }
        t.merge();
        Ok(t)
    }

    /// Tautologies are never falsified and are skipped.
    pub fn push_clause(&mut self, c: &Clause, mult: u64) {
        if c.is_tautology() {
            return;
        }
        let (mut mask, mut value) = (0u64, 0u64);
        for l in c.lits() {
            let bit = 1u64 << (l.var().index() - 1);
            mask |= bit;
            if !l.is_positive() {
                value |= bit;
            }
        }
        self.terms.push((mask, value, mult));
    }

    pub fn push_cube(&mut self, c: &Cube, mult: u64) {
        let (mut mask, mut value) = (0u64, 0u64);
        for &(v, b) in c.fixed() {
            let bit = 1u64 << (v.index() - 1);
            mask |= bit;
            if b {
                value |= bit;
            }
        }
        self.terms.push((mask, value, mult));
    }

    fn merge(&mut self) {
        self.terms.sort_unstable_by_key(|&(m, v, _)| (m, v));
        let mut out: Vec<(u64, u64, u64)> = Vec::with_capacity(self.terms.len());
        for &(m, v, k) in &self.terms {
            match out.last_mut() {
                Some(last) if last.0 == m && last.1 == v => last.2 += k,
                _ => out.push((m, v, k)),
            }
        }
        self.terms = out;
    }

    /// Weighted number of terms hit by the packed assignment.
    #[inline]
    pub fn count(&self, a: u64) -> u64 {
        self.terms
            .iter()
            .filter(|&&(m, v, _)| a & m == v)
            .map(|&(_, _, k)| k)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn limit(num_vars: usize) -> Result<()> {
    if num_vars > PACKED_LIMIT {
        Err(Error::TooManyVars {
            num_vars,
            limit: PACKED_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Smallest lexicographic index in `0..2^num_vars` whose packed assignment
/// satisfies `bad`, searched in parallel.
pub fn first_lex_failure<F>(num_vars: usize, bad: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    assert!(num_vars < 64);
    (0..1u64 << num_vars)
        .into_par_iter()
        .find_first(|&i| bad(lex_to_packed(i, num_vars)))
}

/// Dense table in lexicographic order.
pub fn lex_table<F>(num_vars: usize, f: F) -> Vec<i64>
where
    F: Fn(u64) -> i64 + Sync,
{
    assert!(num_vars < 64);
    (0..1u64 << num_vars)
        .into_par_iter()
        .map(|i| f(lex_to_packed(i, num_vars)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{viol, Assignment};

    #[test]
    fn packed_count_agrees_with_viol() {
        let f = ClauseMultiset::new(
            3,
            vec![
                Clause::from_dimacs(&[1, -2]).unwrap(),
                Clause::from_dimacs(&[1, -2]).unwrap(),
                Clause::from_dimacs(&[3]).unwrap(),
                Clause::from_dimacs(&[2, -2]).unwrap(),
                Clause::empty(),
            ],
        )
        .unwrap();
        let p = PackedTerms::from_formula(&f).unwrap();
        for i in 0..8 {
            let a = Assignment::from_lex_index(i, 3);
            assert_eq!(p.count(a.packed()), viol(&f, &a).unwrap());
        }
    }

    #[test]
    fn first_failure_is_lexicographic() {
        // x1 = 1 is first reached at lex index 4 for three variables.
        assert_eq!(first_lex_failure(3, |a| a & 1 == 1), Some(4));
        assert_eq!(first_lex_failure(3, |_| false), None);
    }
}
