//! Literals, clauses, cubes and total assignments, plus the violation count
//! every checker in this crate is phrased against.
//!
//! Variables are 1-based. An [`Assignment`] stores `x_v` at bit `v - 1`;
//! dense tables and exhaustive sweeps use lexicographic order over
//! `(x_1, ..., x_n)` with `x_1` most significant (see [`Assignment::from_lex_index`]).

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroVariable);
        }
        Ok(Var(index))
    }

    /// Panics on zero; for indices the caller has already validated.
    pub fn from_index(index: u32) -> Self {
        assert!(index > 0, "variables are 1-based");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub(crate) fn bit(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal; `positive` is the `x^1` form, negative the `x^0` form.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit { var, positive }
    }

    pub fn pos(var: u32) -> Self {
        Lit::new(Var::from_index(var), true)
    }

    pub fn neg(var: u32) -> Self {
        Lit::new(Var::from_index(var), false)
    }

    pub fn from_dimacs(value: i64) -> Result<Self> {
        let var = u32::try_from(value.unsigned_abs()).map_err(|_| Error::Invalid(format!("literal {value} too large")))?;
        Ok(Lit::new(Var::new(var)?, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var.0);
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Self {
        Lit::new(self.var, !self.positive)
    }

    pub fn satisfied_by(self, value: bool) -> bool {
        self.positive == value
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals, stored sorted and duplicate-free.
///
/// Tautologies are representable; [`Clause::is_tautology`] flags them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Self {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        Ok(Clause::new(lits.iter().map(|&l| Lit::from_dimacs(l)).collect::<Result<Vec<_>>>()?))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.lits.windows(2).any(|w| w[0].var == w[1].var)
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// The literal over `var` if the clause mentions it (the positive one for tautologies).
    pub fn lit_of(&self, var: Var) -> Option<Lit> {
        if self.contains(Lit::new(var, true)) {
            Some(Lit::new(var, true))
        } else if self.contains(Lit::new(var, false)) {
            Some(Lit::new(var, false))
        } else {
            None
        }
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.lit_of(var).is_some()
    }

    pub fn with(&self, lit: Lit) -> Clause {
        Clause::new(self.lits.iter().copied().chain(std::iter::once(lit)))
    }

    pub fn without(&self, lit: Lit) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }

    pub fn union(&self, other: &Clause) -> Clause {
        Clause::new(self.lits.iter().chain(other.lits.iter()).copied())
    }

    /// Literals of `self` not present in `other`, in canonical order.
    pub fn difference(&self, other: &Clause) -> Vec<Lit> {
        self.lits.iter().copied().filter(|&l| !other.contains(l)).collect()
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var.0).max().unwrap_or(0)
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.lits.iter().map(|l| l.to_dimacs()).collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "□");
        }
        let parts: Vec<String> = self.lits.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl FromIterator<Lit> for Clause {
    fn from_iter<I: IntoIterator<Item = Lit>>(iter: I) -> Self {
        Clause::new(iter)
    }
}

/// A CNF formula as a multiset of clauses. Multiplicity is repetition in `clauses`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseMultiset {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl ClauseMultiset {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            check_range(c.max_var(), num_vars)?;
        }
        Ok(ClauseMultiset { num_vars, clauses })
    }

    pub fn empty(num_vars: usize) -> Self {
        ClauseMultiset {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn push(&mut self, clause: Clause) -> Result<()> {
        check_range(clause.max_var(), self.num_vars)?;
        self.clauses.push(clause);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn contains_empty(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn multiplicities(&self) -> BTreeMap<&Clause, usize> {
        let mut out = BTreeMap::new();
        for c in &self.clauses {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    /// Multiset equality, ignoring clause order.
    pub fn same_multiset(&self, other: &ClauseMultiset) -> bool {
        self.num_vars == other.num_vars && self.multiplicities() == other.multiplicities()
    }

    pub fn viol(&self, a: &Assignment) -> Result<u64> {
        viol(self, a)
    }
}

/// A partial assignment, read as the conjunction of its literals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Cube {
    fixed: Vec<(Var, bool)>,
}

impl Cube {
    pub fn new(fixed: impl IntoIterator<Item = (Var, bool)>) -> Result<Self> {
        let mut fixed: Vec<(Var, bool)> = fixed.into_iter().collect();
        fixed.sort_unstable();
        fixed.dedup();
        if fixed.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("cube fixes a variable to both values".into()));
        }
        Ok(Cube { fixed })
    }

    /// The cube of the conjunction of `lits`.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Result<Self> {
        Cube::new(lits.into_iter().map(|l| (l.var(), l.is_positive())))
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        Cube::from_lits(lits.iter().map(|&l| Lit::from_dimacs(l)).collect::<Result<Vec<_>>>()?)
    }

    pub fn full() -> Self {
        Cube::default()
    }

    pub fn fixed(&self) -> &[(Var, bool)] {
        &self.fixed
    }

    pub fn width(&self) -> usize {
        self.fixed.len()
    }

    pub fn value_of(&self, var: Var) -> Option<bool> {
        self.fixed
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|i| self.fixed[i].1)
    }

    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.fixed.iter().map(|&(v, b)| Lit::new(v, b))
    }

    pub fn max_var(&self) -> u32 {
        self.fixed.last().map(|(v, _)| v.0).unwrap_or(0)
    }

    pub fn contains(&self, a: &Assignment) -> Result<bool> {
        check_range(self.max_var(), a.num_vars())?;
        Ok(self.fixed.iter().all(|&(v, b)| a.get(v) == b))
    }

    /// The clause falsified exactly on this cube.
    pub fn to_clause(&self) -> Clause {
        Clause::new(self.fixed.iter().map(|&(v, b)| Lit::new(v, !b)))
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.lits().map(Lit::to_dimacs).collect()
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .fixed
            .iter()
            .map(|(v, b)| format!("{v}={}", u8::from(*b)))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubeMultiset {
    num_vars: usize,
    cubes: Vec<Cube>,
}

impl CubeMultiset {
    pub fn new(num_vars: usize, cubes: Vec<Cube>) -> Result<Self> {
        for c in &cubes {
            check_range(c.max_var(), num_vars)?;
        }
        Ok(CubeMultiset { num_vars, cubes })
    }

    pub fn empty(num_vars: usize) -> Self {
        CubeMultiset {
            num_vars,
            cubes: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn push(&mut self, cube: Cube) -> Result<()> {
        check_range(cube.max_var(), self.num_vars)?;
        self.cubes.push(cube);
        Ok(())
    }

    pub fn push_n(&mut self, cube: Cube, times: usize) -> Result<()> {
        check_range(cube.max_var(), self.num_vars)?;
        self.cubes.extend(std::iter::repeat_n(cube, times));
        Ok(())
    }

    /// Total multiplicity.
    pub fn size(&self) -> usize {
        self.cubes.len()
    }

    pub fn width(&self) -> usize {
        self.cubes.iter().map(Cube::width).max().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> BTreeMap<&Cube, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cubes {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    pub fn hits(&self, a: &Assignment) -> Result<u64> {
        cube_hits(self, a)
    }
}

/// A total assignment to `x_1..x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    num_vars: usize,
    words: Vec<u64>,
}

impl Assignment {
    pub fn zeros(num_vars: usize) -> Self {
        Assignment {
            num_vars,
            words: vec![0; num_vars.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut a = Assignment::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                a.words[i / 64] |= 1 << (i % 64);
            }
        }
        a
    }

    /// The `index`-th assignment in lexicographic order over `(x_1, ..., x_n)`.
    pub fn from_lex_index(index: u64, num_vars: usize) -> Self {
        assert!(num_vars <= 64, "lexicographic indices cover at most 64 variables");
        Assignment {
            num_vars,
            words: vec![lex_to_packed(index, num_vars); usize::from(num_vars > 0)],
        }
    }

    pub fn from_packed(packed: u64, num_vars: usize) -> Self {
        assert!(num_vars <= 64);
        let mask = if num_vars == 64 { u64::MAX } else { (1u64 << num_vars) - 1 };
        Assignment {
            num_vars,
            words: vec![packed & mask; usize::from(num_vars > 0)],
        }
    }

    pub fn random<R: Rng + ?Sized>(num_vars: usize, rng: &mut R) -> Self {
        let mut a = Assignment::zeros(num_vars);
        for (i, w) in a.words.iter_mut().enumerate() {
            let bits = (num_vars - 64 * i).min(64);
            let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
            *w = rng.random::<u64>() & mask;
        }
        a
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, var: Var) -> bool {
        let b = var.bit();
        assert!(b < self.num_vars, "{var} outside assignment of {} variables", self.num_vars);
        (self.words[b / 64] >> (b % 64)) & 1 == 1
    }

    pub fn set(&mut self, var: Var, value: bool) {
        let b = var.bit();
        assert!(b < self.num_vars);
        if value {
            self.words[b / 64] |= 1 << (b % 64);
        } else {
            self.words[b / 64] &= !(1 << (b % 64));
        }
    }

    /// Packed form (bit `v-1` holds `x_v`); only for at most 64 variables.
    pub fn packed(&self) -> u64 {
        assert!(self.num_vars <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn lex_index(&self) -> u64 {
        packed_to_lex(self.packed(), self.num_vars)
    }

    pub fn bits(&self) -> Vec<bool> {
        (1..=self.num_vars as u32).map(|v| self.get(Var(v))).collect()
    }

    pub fn xor(&self, other: &Assignment) -> Result<Assignment> {
        if self.num_vars != other.num_vars {
            return Err(Error::NumVarsMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(Assignment {
            num_vars: self.num_vars,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// `self` followed by `other` (variables of `other` shifted by `self.num_vars()`).
    pub fn concat(&self, other: &Assignment) -> Assignment {
        let bits: Vec<bool> = self.bits().into_iter().chain(other.bits()).collect();
        Assignment::from_bits(&bits)
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        (1..=self.num_vars as u32)
            .map(|v| {
                let l = i64::from(v);
                if self.get(Var(v)) {
                    l
                } else {
                    -l
                }
            })
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

pub(crate) fn lex_to_packed(index: u64, num_vars: usize) -> u64 {
    if num_vars == 0 {
        0
    } else {
        index.reverse_bits() >> (64 - num_vars)
    }
}

pub(crate) fn packed_to_lex(packed: u64, num_vars: usize) -> u64 {
    lex_to_packed(packed, num_vars)
}

fn check_range(max_var: u32, num_vars: usize) -> Result<()> {
    if max_var as usize > num_vars {
        Err(Error::VarOutOfRange {
            var: max_var,
            num_vars,
        })
    } else {
        Ok(())
    }
}

pub fn eval_clause(c: &Clause, a: &Assignment) -> Result<bool> {
    check_range(c.max_var(), a.num_vars())?;
    Ok(c.lits.iter().any(|l| l.satisfied_by(a.get(l.var))))
}

/// Number of clauses of `f` (with multiplicity) falsified by `a`.
pub fn viol(f: &ClauseMultiset, a: &Assignment) -> Result<u64> {
    let mut n = 0;
    for c in &f.clauses {
        if !eval_clause(c, a)? {
            n += 1;
        }
    }
    Ok(n)
}

pub fn falsifying_cube(c: &Clause) -> Result<Cube> {
    if c.is_tautology() {
        return Err(Error::Tautology);
    }
    Ok(Cube {
        fixed: c.lits.iter().map(|l| (l.var, !l.positive)).collect(),
    })
}

/// Number of cubes of `g` (with multiplicity) containing `a`.
pub fn cube_hits(g: &CubeMultiset, a: &Assignment) -> Result<u64> {
    let mut n = 0;
    for c in &g.cubes {
        if c.contains(a)? {
            n += 1;
        }
    }
    Ok(n)
}

/// Applies the partial assignment `rho`: satisfied clauses vanish and
/// falsified literals are dropped. Variable numbering is unchanged.
pub fn restrict(f: &ClauseMultiset, rho: &Cube) -> ClauseMultiset {
    let clauses = f
        .clauses
        .iter()
        .filter(|c| !c.lits.iter().any(|l| rho.value_of(l.var) == Some(l.positive)))
        .map(|c| Clause {
            lits: c.lits.iter().copied().filter(|l| rho.value_of(l.var).is_none()).collect(),
        })
        .collect();
    ClauseMultiset {
        num_vars: f.num_vars,
        clauses,
    }
}
