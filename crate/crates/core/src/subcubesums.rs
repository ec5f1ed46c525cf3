//! SubCubeSums certificates: a cube multiset `G` refutes `F` when
//! `viol_F ≡ 1 + viol_G`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{compose, Gadget};
use crate::formula::{falsifying_cube, Assignment, ClauseMultiset, Cube, CubeMultiset};
use crate::packed::{first_lex_failure, lex_table, PackedTerms, DEFAULT_EXHAUSTIVE_LIMIT, PACKED_LIMIT};
use crate::verdict::{miss_probability, sampler, CheckMode, CheckOptions, Verdict};

/// Largest variable count for which dense tables are built.
pub const DENSE_LIMIT: usize = DEFAULT_EXHAUSTIVE_LIMIT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScsCertificate {
    pub formula: ClauseMultiset,
    pub cubes: CubeMultiset,
}

impl ScsCertificate {
    pub fn new(formula: ClauseMultiset, cubes: CubeMultiset) -> Result<Self> {
        if formula.num_vars() != cubes.num_vars() {
            return Err(Error::NumVarsMismatch {
                left: formula.num_vars(),
                right: cubes.num_vars(),
            });
        }
        Ok(ScsCertificate { formula, cubes })
    }

    pub fn measures(&self) -> Measures {
        measures(&self.cubes)
    }

    /// Algebraic degree: the larger of the proof width and the formula width.
    pub fn degree(&self) -> usize {
        self.cubes.width().max(self.formula.width())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Measures {
    pub size: usize,
    pub width: usize,
}

pub fn measures(g: &CubeMultiset) -> Measures {
    Measures {
        size: g.size(),
        width: g.width(),
    }
}

/// Integer-valued function on `{0,1}^n`, stored densely in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoFunction {
    num_vars: usize,
    values: Vec<i64>,
}

impl PseudoFunction {
    pub fn new(num_vars: usize, values: Vec<i64>) -> Result<Self> {
        dense_limit(num_vars)?;
        if values.len() != 1usize << num_vars {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected 2^{num_vars}",
                values.len()
            )));
        }
        Ok(PseudoFunction { num_vars, values })
    }

    pub fn constant(num_vars: usize, c: i64) -> Result<Self> {
        dense_limit(num_vars)?;
        Ok(PseudoFunction {
            num_vars,
            values: vec![c; 1 << num_vars],
        })
    }

    /// Tabulates `f` over all assignments.
    pub fn from_fn<F>(num_vars: usize, f: F) -> Result<Self>
    where
        F: Fn(&Assignment) -> i64 + Sync,
    {
        dense_limit(num_vars)?;
        let values = (0..1u64 << num_vars)
            .into_par_iter()
            .map(|i| f(&Assignment::from_lex_index(i, num_vars)))
            .collect();
        Ok(PseudoFunction { num_vars, values })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, a: &Assignment) -> i64 {
        self.values[a.lex_index() as usize]
    }

    pub fn at_lex(&self, index: usize) -> i64 {
        self.values[index]
    }

    pub fn add_constant(&self, c: i64) -> Self {
        PseudoFunction {
            num_vars: self.num_vars,
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }

    pub fn sub(&self, other: &PseudoFunction) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::NumVarsMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(PseudoFunction {
            num_vars: self.num_vars,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// First lexicographic index with a negative value.
    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(|&v| v < 0)
    }

    /// `(h ∘ ⊕)(α1, α2) = h(α1 ⊕ α2)` over `2n` variables.
    pub fn xor_lift(&self) -> Result<Self> {
        let n = self.num_vars;
        PseudoFunction::from_fn(2 * n, |a| {
            let bits = a.bits();
            let x: Vec<bool> = (0..n).map(|i| bits[i] ^ bits[n + i]).collect();
            self.get(&Assignment::from_bits(&x))
        })
    }
}

fn dense_limit(num_vars: usize) -> Result<()> {
    if num_vars > DENSE_LIMIT {
        Err(Error::TooManyVars {
            num_vars,
            limit: DENSE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Exact table of `viol_F`.
pub fn viol_table(f: &ClauseMultiset) -> Result<PseudoFunction> {
    dense_limit(f.num_vars())?;
    let p = PackedTerms::from_formula(f)?;
    Ok(PseudoFunction {
        num_vars: f.num_vars(),
        values: lex_table(f.num_vars(), |a| p.count(a) as i64),
    })
}

/// Exact table of `viol_G` (cube hit counts).
pub fn hits_table(g: &CubeMultiset) -> Result<PseudoFunction> {
    dense_limit(g.num_vars())?;
    let p = PackedTerms::from_cubes(g)?;
    Ok(PseudoFunction {
        num_vars: g.num_vars(),
        values: lex_table(g.num_vars(), |a| p.count(a) as i64),
    })
}

/// Point cubes: each assignment `a` with multiplicity `d(a)`.
pub fn from_pointwise(d: &PseudoFunction) -> Result<CubeMultiset> {
    if let Some(index) = d.first_negative() {
        return Err(Error::NegativeValue {
            index,
            value: d.values[index],
        });
    }
    let mut g = CubeMultiset::empty(d.num_vars);
    for (i, &v) in d.values.iter().enumerate() {
        if v > 0 {
            let a = Assignment::from_lex_index(i as u64, d.num_vars);
            let cube = Cube::new(a.bits().into_iter().enumerate().map(|(k, b)| {
                (crate::formula::Var::from_index(k as u32 + 1), b)
            }))?;
            g.push_n(cube, v as usize)?;
        }
    }
    Ok(g)
}

/// Certificate made of the falsifying cubes of `clauses`.
pub fn cubes_of_clauses(f: &ClauseMultiset) -> Result<CubeMultiset> {
    let cubes = f.clauses().iter().map(falsifying_cube).collect::<Result<Vec<_>>>()?;
    CubeMultiset::new(f.num_vars(), cubes)
}

/// Checks `viol_F(a) = 1 + viol_G(a)` for every checked assignment.
pub fn check_certificate(cert: &ScsCertificate, opts: impl Into<CheckOptions>) -> Result<Verdict> {
    let n = cert.formula.num_vars();
    if n != cert.cubes.num_vars() {
        return Err(Error::NumVarsMismatch {
            left: n,
            right: cert.cubes.num_vars(),
        });
    }
    let opts = opts.into();
    let (mode, auto) = opts.effective(n);
    let verdict = Verdict::new(mode, auto);
    let packed = n <= PACKED_LIMIT;
    let (pf, pg) = if packed {
        (PackedTerms::from_formula(&cert.formula)?, PackedTerms::from_cubes(&cert.cubes)?)
    } else {
        (PackedTerms::default(), PackedTerms::default())
    };
    let detail = |a: &Assignment| -> Result<String> {
        Ok(format!(
            "viol_F = {} but 1 + viol_G = {}",
            cert.formula.viol(a)?,
            1 + cert.cubes.hits(a)?
        ))
    };
    match mode {
        CheckMode::Exhaustive => {
            let mut v = verdict;
            v.checked = 1 << n;
            if let Some(i) = first_lex_failure(n, |a| pf.count(a) != 1 + pg.count(a)) {
                let a = Assignment::from_lex_index(i, n);
                let d = detail(&a)?;
                return Ok(v.fail(a, d));
            }
            Ok(v)
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = sampler(seed);
            let mut v = verdict;
            for k in 0..samples {
                let a = Assignment::random(n, &mut rng);
                let ok = if packed {
                    pf.count(a.packed()) == 1 + pg.count(a.packed())
                } else {
                    cert.formula.viol(&a)? == 1 + cert.cubes.hits(&a)?
                };
                if !ok {
                    v.checked = k + 1;
                    let d = detail(&a)?;
                    return Ok(v.fail(a, d));
                }
            }
            v.checked = samples;
            v.miss_probability = Some(miss_probability(samples, cert.degree()));
            Ok(v)
        }
    }
}

/// Checks `viol_F(a1 ⊕ a2) = viol_{F∘⊕}(a1, a2)` for one pair.
pub fn compose_xor_check(f: &ClauseMultiset, a1: &Assignment, a2: &Assignment) -> Result<Verdict> {
    let g = compose(f, Gadget::Xor2);
    compose_xor_pair(f, &g, a1, a2)
}

fn compose_xor_pair(f: &ClauseMultiset, g: &ClauseMultiset, a1: &Assignment, a2: &Assignment) -> Result<Verdict> {
    let lhs = f.viol(&a1.xor(a2)?)?;
    let joint = a1.concat(a2);
    let rhs = g.viol(&joint)?;
    let mut v = Verdict::new(CheckMode::Exhaustive, false);
    v.checked = 1;
    if lhs != rhs {
        return Ok(v.fail(joint, format!("viol_F(a1 ⊕ a2) = {lhs} but viol_(F∘⊕)(a1, a2) = {rhs}")));
    }
    Ok(v)
}

/// The commutation over all pairs (exhaustive) or sampled pairs. The
/// witness is the concatenation `a1 a2`.
pub fn compose_xor_sweep(f: &ClauseMultiset, opts: impl Into<CheckOptions>) -> Result<Verdict> {
    let n = f.num_vars();
    let g = compose(f, Gadget::Xor2);
    let opts = opts.into();
    let (mode, auto) = opts.effective(2 * n);
    let mut v = Verdict::new(mode, auto);
    let pf = PackedTerms::from_formula(f)?;
    let pg = PackedTerms::from_formula(&g)?;
    let low = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let bad = |joint: u64| pf.count((joint & low) ^ (joint >> n)) != pg.count(joint);
    match mode {
        CheckMode::Exhaustive => {
            v.checked = 1 << (2 * n);
            if let Some(i) = first_lex_failure(2 * n, bad) {
                let a = Assignment::from_lex_index(i, 2 * n);
                return Ok(v.fail(a, "viol_F(a1 ⊕ a2) differs from viol_(F∘⊕)(a1, a2)".into()));
            }
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = sampler(seed);
            for _ in 0..samples {
                let a = Assignment::random(2 * n, &mut rng);
                if 2 * n > PACKED_LIMIT {
                    return Err(Error::TooManyVars {
                        num_vars: 2 * n,
                        limit: PACKED_LIMIT,
                    });
                }
                v.checked += 1;
                if bad(a.packed()) {
                    return Ok(v.fail(a, "viol_F(a1 ⊕ a2) differs from viol_(F∘⊕)(a1, a2)".into()));
                }
            }
            v.miss_probability = Some(miss_probability(samples, 2 * f.width()));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{php, tseitin, ChargedGraph};
    use crate::formula::Clause;
    use proptest::prelude::*;

    fn cnf(n: usize, cs: &[&[i64]]) -> ClauseMultiset {
        ClauseMultiset::new(n, cs.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect()).unwrap()
    }

    fn cubes(n: usize, cs: &[&[i64]]) -> CubeMultiset {
        CubeMultiset::new(n, cs.iter().map(|c| Cube::from_dimacs(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn php1_certificates() {
        let f = php(1);
        let good = ScsCertificate::new(f.clone(), cubes(2, &[&[-1, -2]])).unwrap();
        assert!(check_certificate(&good, CheckMode::Exhaustive).unwrap().pass);
        let bad = ScsCertificate::new(f, CubeMultiset::empty(2)).unwrap();
        let v = check_certificate(&bad, CheckMode::Exhaustive).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness.unwrap().to_string(), "00");
    }

    #[test]
    fn complementary_units_need_no_cubes() {
        let cert = ScsCertificate::new(cnf(1, &[&[1], &[-1]]), CubeMultiset::empty(1)).unwrap();
        assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
        assert!(check_certificate(&cert, CheckOptions::sampled(50, 2)).unwrap().pass);
    }

    #[test]
    fn mismatched_vars() {
        assert!(ScsCertificate::new(cnf(2, &[]), CubeMultiset::empty(3)).is_err());
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measures(&CubeMultiset::empty(2)), Measures { size: 0, width: 0 });
        let g = cubes(2, &[&[-1], &[-1], &[1, 2]]);
        assert_eq!(measures(&g), Measures { size: 3, width: 2 });
    }

    #[test]
    fn viol_table_examples() {
        assert_eq!(viol_table(&php(1)).unwrap().values(), &[2, 1, 1, 1]);
        assert_eq!(viol_table(&cnf(2, &[])).unwrap().values(), &[0, 0, 0, 0]);
        assert_eq!(viol_table(&cnf(1, &[&[1], &[-1]])).unwrap().values(), &[1, 1]);
    }

    #[test]
    fn pointwise_examples() {
        let zero = PseudoFunction::constant(2, 0).unwrap();
        assert_eq!(from_pointwise(&zero).unwrap().size(), 0);
        let d = PseudoFunction::new(2, vec![2, 0, 0, 1]).unwrap();
        let g = from_pointwise(&d).unwrap();
        assert_eq!(g, cubes(2, &[&[-1, -2], &[-1, -2], &[1, 2]]));
        let neg = PseudoFunction::new(1, vec![0, -1]).unwrap();
        assert!(matches!(from_pointwise(&neg), Err(Error::NegativeValue { index: 1, value: -1 })));
    }

    #[test]
    fn completeness_from_viol_table() {
        let f = tseitin(&ChargedGraph::triangle());
        let d = viol_table(&f).unwrap().add_constant(-1);
        let g = from_pointwise(&d).unwrap();
        assert_eq!(measures(&g).width, 3);
        assert!(check_certificate(&ScsCertificate::new(f, g).unwrap(), CheckMode::Exhaustive).unwrap().pass);
        let sat = cnf(2, &[&[1, 2]]);
        assert!(from_pointwise(&viol_table(&sat).unwrap().add_constant(-1)).is_err());
    }

    #[test]
    fn xor_commutation_examples() {
        let f = cnf(1, &[&[1]]);
        let one = Assignment::from_bits(&[true]);
        assert!(compose_xor_check(&f, &one, &one).unwrap().pass);
        assert!(compose_xor_sweep(&php(1), CheckMode::Exhaustive).unwrap().pass);
        assert!(compose_xor_sweep(&tseitin(&ChargedGraph::triangle()), CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn lifted_target_matches_composed_formula() {
        let f = php(1);
        let lifted = viol_table(&f).unwrap().add_constant(-1).xor_lift().unwrap();
        let composed = viol_table(&compose(&f, Gadget::Xor2)).unwrap().add_constant(-1);
        assert_eq!(lifted, composed);
    }

    proptest! {
        #[test]
        fn point_cubes_reproduce_function(vals in proptest::collection::vec(0i64..4, 8)) {
            let d = PseudoFunction::new(3, vals).unwrap();
            let g = from_pointwise(&d).unwrap();
            prop_assert_eq!(hits_table(&g).unwrap(), d.clone());
            if !d.is_zero() {
                prop_assert_eq!(measures(&g).width, 3);
            }
        }
    }
}
