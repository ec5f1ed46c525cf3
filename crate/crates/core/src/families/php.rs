use crate::formula::{Clause, ClauseMultiset, Lit, Var};

/// Variable of `x_{i,j}` (pigeon `i` in `1..=m+1`, hole `j` in `1..=m`), row-major.
pub fn php_var(m: usize, i: usize, j: usize) -> Var {
    debug_assert!((1..=m + 1).contains(&i) && (1..=m).contains(&j));
    Var::from_index(((i - 1) * m + j) as u32)
}

fn x(m: usize, i: usize, j: usize, positive: bool) -> Lit {
    Lit::new(php_var(m, i, j), positive)
}

/// Pigeon clauses `P_i` for every pigeon, then hole clauses
/// `¬x_{i,j} ∨ ¬x_{i',j}` hole by hole.
pub fn php(m: usize) -> ClauseMultiset {
    assert!(m >= 1, "php needs at least one hole");
    let mut clauses = Vec::new();
    for i in 1..=m + 1 {
        clauses.push(Clause::new((1..=m).map(|j| x(m, i, j, true))));
    }
    for j in 1..=m {
        for i in 1..=m + 1 {
            for i2 in i + 1..=m + 1 {
                clauses.push(Clause::new([x(m, i, j, false), x(m, i2, j, false)]));
            }
        }
    }
    ClauseMultiset::new(m * (m + 1), clauses).expect("variables in range")
}

/// The residual clause set: `P_i^δ` for each pigeon, then `H1_j^δ` and
/// `H2_j^δ` for each hole.
pub fn php_delta(m: usize) -> ClauseMultiset {
    assert!(m >= 1, "php needs at least one hole");
    let mut clauses = Vec::new();
    for i in 1..=m + 1 {
        for j in 1..=m {
            for k in j + 1..=m {
                let mid = (j + 1..k).map(|l| x(m, i, l, true));
                clauses.push(Clause::new(
                    [x(m, i, j, false), x(m, i, k, false)].into_iter().chain(mid),
                ));
            }
        }
    }
    for j in 1..=m {
        clauses.push(Clause::new((1..=m + 1).map(|i| x(m, i, j, true))));
        for i in 1..=m + 1 {
            for k in i + 1..=m + 1 {
                for i2 in k + 1..=m + 1 {
                    let mid = (i + 1..k).map(|l| x(m, l, j, true));
                    clauses.push(Clause::new(
                        [x(m, i, j, false), x(m, k, j, false), x(m, i2, j, false)]
                            .into_iter()
                            .chain(mid),
                    ));
                }
            }
        }
    }
    ClauseMultiset::new(m * (m + 1), clauses).expect("variables in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Assignment;

    #[test]
    fn php1_clauses() {
        let f = php(1);
        let want = [vec![1], vec![2], vec![-1, -2]];
        let got: Vec<Vec<i64>> = f.clauses().iter().map(Clause::to_dimacs).collect();
        assert_eq!(got, want);
        assert_eq!(php(2).len(), 9);
        assert_eq!(php(3).len(), 4 + 3 * 6);
    }

    #[test]
    fn php_delta_small_cases() {
        let d1 = php_delta(1);
        assert_eq!(d1.clauses(), &[Clause::from_dimacs(&[1, 2]).unwrap()]);
        assert_eq!(php_delta(2).len(), 7);
    }

    #[test]
    fn diagonal_matching_satisfies_php_delta() {
        for m in 1..=4 {
            let mut a = Assignment::zeros(m * (m + 1));
            for i in 1..=m {
                a.set(php_var(m, i, i), true);
            }
            assert_eq!(php_delta(m).viol(&a).unwrap(), 0, "m = {m}");
        }
    }

    #[test]
    fn php_is_unsatisfiable_up_to_three_holes() {
        for m in 1..=3 {
            let f = php(m);
            let n = f.num_vars();
            assert!((0..1u64 << n).all(|i| f.viol(&Assignment::from_lex_index(i, n)).unwrap() > 0));
        }
    }
}
