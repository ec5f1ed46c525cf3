use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{tseitin, ChargedGraph};
use crate::packed::{lex_table, PackedTerms};

pub const CENSUS_EDGE_LIMIT: usize = 24;

/// Sizes of the level sets `X_i = {a : viol(a) = i}` of a Tseitin formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub vertices: usize,
    pub edges: usize,
    pub levels: BTreeMap<u64, u64>,
    pub all_odd: bool,
    /// Whether every level matches `C(n, i) · 2^(m − n + 1)`; `None` when
    /// the closed form does not apply (disconnected graph or even charge).
    pub closed_form: Option<bool>,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn tseitin_level_census(g: &ChargedGraph) -> Result<Census> {
    let m = g.edges.len();
    if m > CENSUS_EDGE_LIMIT {
        return Err(Error::TooManyVars {
            num_vars: m,
            limit: CENSUS_EDGE_LIMIT,
        });
    }
    let terms = PackedTerms::from_formula(&tseitin(g))?;
    let table = lex_table(m, |a| terms.count(a) as i64);
    let mut levels = BTreeMap::new();
    for v in table {
        *levels.entry(v as u64).or_insert(0u64) += 1;
    }
    let all_odd = levels.keys().all(|i| i % 2 == 1);
    let n = g.num_vertices;
    let closed_form = (g.is_connected() && g.charge_parity()).then(|| {
        let scale = 1u64 << (m + 1 - n);
        (0..=n as u64)
            .filter(|i| i % 2 == 1)
            .all(|i| levels.get(&i).copied().unwrap_or(0) == binomial(n as u64, i) * scale)
            && levels.keys().all(|i| i % 2 == 1)
    });
    Ok(Census {
        vertices: n,
        edges: m,
        levels,
        all_odd,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_census() {
        let c = tseitin_level_census(&ChargedGraph::triangle()).unwrap();
        assert_eq!(c.levels, BTreeMap::from([(1, 6), (3, 2)]));
        assert!(c.all_odd);
        assert_eq!(c.closed_form, Some(true));
        assert_eq!(c.levels.values().sum::<u64>(), 8);
    }

    #[test]
    fn complete_four() {
        let c = tseitin_level_census(&ChargedGraph::complete(4)).unwrap();
        assert_eq!(c.closed_form, Some(true));
        assert_eq!(c.levels.values().sum::<u64>(), 64);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }
}
