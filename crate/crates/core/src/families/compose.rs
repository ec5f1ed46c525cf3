use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{Clause, ClauseMultiset, Lit, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gadget {
    Or2,
    Xor2,
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gadget::Or2 => "or",
            Gadget::Xor2 => "xor",
        })
    }
}

impl FromStr for Gadget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "or" | "or2" => Ok(Gadget::Or2),
            "xor" | "xor2" => Ok(Gadget::Xor2),
            _ => Err(Error::Invalid(format!("unknown gadget `{s}`"))),
        }
    }
}

/// Copy `i` (1 or 2) of original variable `v` in a formula over `n`
/// variables: the first copies are `1..=n`, the second `n+1..=2n`.
pub fn copy_var(n: usize, v: Var, i: usize) -> Var {
    debug_assert!(i == 1 || i == 2);
    Var::from_index(((i - 1) * n) as u32 + v.index())
}

/// CNF of `g(x_1, x_2) = value` as a list of clauses.
fn literal_cnf(n: usize, gadget: Gadget, lit: Lit) -> Vec<Clause> {
    let x1 = Lit::new(copy_var(n, lit.var(), 1), true);
    let x2 = Lit::new(copy_var(n, lit.var(), 2), true);
    match (gadget, lit.is_positive()) {
        (Gadget::Or2, true) => vec![Clause::new([x1, x2])],
        (Gadget::Or2, false) => vec![Clause::new([x1.negate()]), Clause::new([x2.negate()])],
        (Gadget::Xor2, true) => vec![Clause::new([x1, x2]), Clause::new([x1.negate(), x2.negate()])],
        (Gadget::Xor2, false) => vec![Clause::new([x1, x2.negate()]), Clause::new([x1.negate(), x2])],
    }
}

/// The block `C ∘ g`: the distribution of the per-literal CNFs. The empty
/// clause maps to the single empty clause.
pub fn compose_clause(n: usize, c: &Clause, gadget: Gadget) -> Vec<Clause> {
    let mut block = vec![Clause::empty()];
    for &lit in c.lits() {
        let parts = literal_cnf(n, gadget, lit);
        block = block.iter().flat_map(|b| parts.iter().map(move |p| b.union(p))).collect();
    }
    block
}

/// Per-clause blocks of `F ∘ g`, in clause order.
pub fn compose_blocks(f: &ClauseMultiset, gadget: Gadget) -> Vec<Vec<Clause>> {
    f.clauses().iter().map(|c| compose_clause(f.num_vars(), c, gadget)).collect()
}

/// `F ∘ g` over `2n` variables.
pub fn compose(f: &ClauseMultiset, gadget: Gadget) -> ClauseMultiset {
    let clauses = compose_blocks(f, gadget).into_iter().flatten().collect();
    ClauseMultiset::new(2 * f.num_vars(), clauses).expect("copies stay in range")
}
