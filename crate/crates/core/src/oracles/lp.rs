//! Exact-rational feasibility of conical juntas: nonnegative combinations
//! of subcube indicators of bounded width.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Cube, Var};
use crate::subcubesums::PseudoFunction;

pub type Rational = BigRational;

/// LP size guard: cube columns grow as `3^n`.
pub const LP_VAR_LIMIT: usize = 12;

/// Subcube over packed assignments: `a` lies in it iff `a & mask == value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct PackedCube {
    pub mask: u64,
    pub value: u64,
}

impl PackedCube {
    /// Packed assignments in the cube.
    pub fn points(self, n: usize) -> impl Iterator<Item = u64> {
        let free = full(n) & !self.mask;
        let mut s = Some(0u64);
        std::iter::from_fn(move || {
            let cur = s?;
            let next = cur.wrapping_sub(free) & free;
            s = (next != 0).then_some(next);
            Some(self.value | cur)
        })
    }

    pub fn to_cube(self) -> Cube {
        let fixed = (0..64)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| (Var::from_index(b + 1), self.value >> b & 1 == 1));
        Cube::new(fixed).expect("distinct variables")
    }
}

fn full(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1u64 << n) - 1 }
}

/// All cubes of width exactly `k` over `n` variables.
pub(crate) fn cubes_of_width(n: usize, k: usize) -> Vec<PackedCube> {
    let mut out = Vec::new();
    for mask in 0..1u64 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut sub = 0u64;
        loop {
            out.push(PackedCube { mask, value: sub });
            sub = sub.wrapping_sub(mask) & mask;
            if sub == 0 {
                break;
            }
        }
    }
    out
}

fn packed_to_lex(packed: u64, n: usize) -> usize {
    if n == 0 { 0 } else { (packed.reverse_bits() >> (64 - n)) as usize }
}

/// Nonnegative coefficients on cubes reproducing the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuntaWitness {
    pub terms: Vec<(Cube, Rational)>,
}

/// Dual ray proving infeasibility at width `degree`: `y` (indexed by
/// lexicographic assignment) sums to at most 0 on every cube of width at
/// most `degree`, while `y · target > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub num_vars: usize,
    pub degree: usize,
    pub y: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JuntaVerdict {
    Feasible(JuntaWitness),
    Infeasible(FarkasCertificate),
}

impl JuntaVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, JuntaVerdict::Feasible(_))
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    num_vars: usize,
    degree: usize,
    y: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl FarkasCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            num_vars: self.num_vars,
            degree: self.degree,
            y: self.y.iter().map(ToString::to_string).collect(),
            note: None,
        })
        .expect("plain data")
    }
}

impl JuntaWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(c, r)| serde_json::json!({ "cube": c.to_dimacs(), "coefficient": r.to_string() }))
                .collect(),
        )
    }
}

/// Decides whether `target` is a nonnegative rational combination of
/// indicators of cubes of width at most `d`.
pub fn conical_junta_feasible(target: &PseudoFunction, d: usize) -> Result<JuntaVerdict> {
    let n = target.num_vars();
    if n > LP_VAR_LIMIT {
        return Err(Error::TooManyVars {
            num_vars: n,
            limit: LP_VAR_LIMIT,
        });
    }
    if let Some(index) = target.first_negative() {
        return Err(Error::NegativeValue {
            index,
            value: target.at_lex(index),
        });
    }
    let columns: Vec<PackedCube> = (0..=d.min(n)).flat_map(|k| cubes_of_width(n, k)).collect();
    solve(target, d, &columns)
}

/// Phase-one simplex over the columns lying inside the target's support.
fn solve(target: &PseudoFunction, d: usize, columns: &[PackedCube]) -> Result<JuntaVerdict> {
    let n = target.num_vars();
    let t = target.values();
    // Rows: points where the target is positive.
    let rows: Vec<usize> = (0..t.len()).filter(|&i| t[i] > 0).collect();
    let mut row_of = vec![usize::MAX; t.len()];
    for (r, &i) in rows.iter().enumerate() {
        row_of[i] = r;
    }
    // A column touching a zero of the target must have coefficient 0.
    let kept: Vec<(PackedCube, Vec<usize>)> = columns
        .iter()
        .filter_map(|&c| {
            let hit: Vec<usize> = c.points(n).map(|p| row_of[packed_to_lex(p, n)]).collect();
            hit.iter().all(|&r| r != usize::MAX).then_some((c, hit))
        })
        .collect();
    let m = rows.len();
    if m == 0 {
        return Ok(JuntaVerdict::Feasible(JuntaWitness { terms: Vec::new() }));
    }
    let cols = kept.len() + m;
    let zero = Rational::zero();
    let one = Rational::one();
    let mut tab = vec![vec![zero.clone(); cols]; m];
    for (j, (_, hit)) in kept.iter().enumerate() {
        for &r in hit {
            tab[r][j] = one.clone();
        }
    }
    for (r, row) in tab.iter_mut().enumerate() {
        row[kept.len() + r] = one.clone();
    }
    let mut rhs: Vec<Rational> = rows.iter().map(|&i| Rational::from_integer(BigInt::from(t[i]))).collect();
    let mut basis: Vec<usize> = (kept.len()..cols).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Rational> = (0..cols)
        .map(|j| if j < kept.len() { -tab.iter().map(|row| &row[j]).sum::<Rational>() } else { zero.clone() })
        .collect();
    let mut objective: Rational = rhs.iter().sum();

    // Bland's rule: lowest entering index, lowest leaving basic index.
    while let Some(e) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if tab[r][e].is_positive() {
                let ratio = &rhs[r] / &tab[r][e];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*l]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row exists.
        let (l, _) = leave.expect("phase one is bounded");
        let pivot = tab[l][e].clone();
        for x in tab[l].iter_mut() {
            *x /= &pivot;
        }
        rhs[l] /= &pivot;
        let prow = tab[l].clone();
        let prhs = rhs[l].clone();
        for r in 0..m {
            if r != l && !tab[r][e].is_zero() {
                let f = tab[r][e].clone();
                for (x, p) in tab[r].iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
                rhs[r] -= &f * &prhs;
            }
        }
        let f = cost[e].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        objective += &f * &prhs;
        basis[l] = e;
    }

    if objective.is_zero() {
        let mut terms: Vec<(Cube, Rational)> = basis
            .iter()
            .zip(&rhs)
            .filter(|(&j, v)| j < kept.len() && v.is_positive())
            .map(|(&j, v)| (kept[j].0.to_cube(), v.clone()))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(JuntaVerdict::Feasible(JuntaWitness { terms }));
    }

    // Duals of the phase-one optimum: y_r = 1 − reduced cost of artificial r.
    let mut y = vec![zero.clone(); t.len()];
    for (r, &i) in rows.iter().enumerate() {
        y[i] = &one - &cost[kept.len() + r];
    }
    // Zeros of the target get a penalty large enough to make every
    // discarded column nonpositive.
    let penalty: Rational = y.iter().filter(|v| v.is_positive()).sum::<Rational>() + &one;
    for (i, &v) in t.iter().enumerate() {
        if v == 0 {
            y[i] = -penalty.clone();
        }
    }
    Ok(JuntaVerdict::Infeasible(FarkasCertificate { num_vars: n, degree: d, y }))
}

/// Independent check of a dual ray: enumerates every cube of width at most
/// `cert.degree` and sums `y` over its points by direct assignment tests.
pub fn verify_farkas(target: &PseudoFunction, cert: &FarkasCertificate) -> bool {
    let n = target.num_vars();
    if cert.num_vars != n || cert.y.len() != 1usize << n {
        return false;
    }
    let dot: Rational = cert
        .y
        .iter()
        .zip(target.values())
        .map(|(y, &t)| y * Rational::from_integer(BigInt::from(t)))
        .sum();
    if !dot.is_positive() {
        return false;
    }
    // Walk cubes as partial assignments in {0, 1, free}^n.
    let mut pattern = vec![2u8; n];
    loop {
        let width = pattern.iter().filter(|&&p| p < 2).count();
        if width <= cert.degree {
            let mut sum = Rational::zero();
            for lex in 0..1usize << n {
                // x1 is the most significant bit of the lexicographic index.
                let inside = (0..n).all(|v| pattern[v] == 2 || (lex >> (n - 1 - v) & 1) as u8 == pattern[v]);
                if inside {
                    sum += &cert.y[lex];
                }
            }
            if sum.is_positive() {
                return false;
            }
        }
        // Next pattern in base 3.
        let mut k = 0;
        while k < n && pattern[k] == 0 {
            pattern[k] = 2;
            k += 1;
        }
        if k == n {
            return true;
        }
        pattern[k] = if pattern[k] == 2 { 1 } else { 0 };
    }
}

/// Checks that a witness reproduces the target exactly with nonnegative
/// coefficients and cubes of width at most `d`.
pub fn verify_junta_witness(target: &PseudoFunction, d: usize, w: &JuntaWitness) -> Result<bool> {
    let n = target.num_vars();
    let mut sum = vec![Rational::zero(); 1 << n];
    for (cube, coef) in &w.terms {
        if coef.is_negative() || cube.width() > d {
            return Ok(false);
        }
        for (lex, s) in sum.iter_mut().enumerate() {
            let a = crate::formula::Assignment::from_lex_index(lex as u64, n);
            if cube.contains(&a)? {
                *s += coef;
            }
        }
    }
    Ok(sum
        .iter()
        .zip(target.values())
        .all(|(s, &t)| *s == Rational::from_integer(BigInt::from(t))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::php;
    use crate::formula::{Clause, ClauseMultiset};
    use crate::subcubesums::viol_table;

    fn slack(f: &ClauseMultiset) -> PseudoFunction {
        viol_table(f).unwrap().add_constant(-1)
    }

    #[test]
    fn cube_points_and_strata() {
        let c = PackedCube { mask: 0b101, value: 0b001 };
        let mut pts: Vec<u64> = c.points(3).collect();
        pts.sort();
        assert_eq!(pts, vec![0b001, 0b011]);
        assert_eq!(cubes_of_width(3, 0).len(), 1);
        assert_eq!(cubes_of_width(3, 1).len(), 6);
        assert_eq!(cubes_of_width(3, 3).len(), 8);
    }

    #[test]
    fn zero_target_is_trivially_feasible() {
        let t = PseudoFunction::constant(3, 0).unwrap();
        match conical_junta_feasible(&t, 0).unwrap() {
            JuntaVerdict::Feasible(w) => assert!(w.terms.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn php1_needs_width_two() {
        let t = slack(&php(1));
        let JuntaVerdict::Infeasible(cert) = conical_junta_feasible(&t, 1).unwrap() else {
            panic!("width one should be infeasible");
        };
        assert!(verify_farkas(&t, &cert));
        let JuntaVerdict::Feasible(w) = conical_junta_feasible(&t, 2).unwrap() else {
            panic!("width two should be feasible");
        };
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.terms[0].0, Cube::from_dimacs(&[-1, -2]).unwrap());
        assert!(verify_junta_witness(&t, 2, &w).unwrap());
    }

    #[test]
    fn tampered_certificate_fails() {
        let t = slack(&php(1));
        let JuntaVerdict::Infeasible(mut cert) = conical_junta_feasible(&t, 1).unwrap() else {
            unreachable!()
        };
        for y in cert.y.iter_mut() {
            *y = Rational::one();
        }
        assert!(!verify_farkas(&t, &cert));
    }

    #[test]
    fn negative_target_rejected() {
        let f = ClauseMultiset::new(1, vec![Clause::from_dimacs(&[1]).unwrap()]).unwrap();
        assert!(matches!(conical_junta_feasible(&slack(&f), 1), Err(Error::NegativeValue { .. })));
    }

    #[test]
    fn width_one_cannot_lift_one_point() {
        let t = PseudoFunction::new(2, vec![2, 1, 1, 1]).unwrap();
        let JuntaVerdict::Infeasible(cert) = conical_junta_feasible(&t, 1).unwrap() else {
            panic!("width one should be infeasible");
        };
        assert!(verify_farkas(&t, &cert));
        let JuntaVerdict::Feasible(w) = conical_junta_feasible(&t, 2).unwrap() else {
            panic!("width two should be feasible");
        };
        assert!(verify_junta_witness(&t, 2, &w).unwrap());
    }
}
