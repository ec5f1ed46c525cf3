use crate::families::{php, php_delta};
use crate::subcubesums::{cubes_of_clauses, ScsCertificate};

/// Certificate for `php(m)`: the falsifying cubes of the residual clauses.
pub fn php_scs_proof(m: usize) -> ScsCertificate {
    let cubes = cubes_of_clauses(&php_delta(m)).expect("residual clauses are not tautologies");
    ScsCertificate::new(php(m), cubes).expect("same variables")
}

/// Both sides of the counting identity for a `(m+1) × m` 0/1 matrix:
/// `#zero rows + Σ_j C(c_j, 2)` and
/// `1 + #zero columns + Σ_{r_i ≥ 2} (r_i − 1) + Σ_{c_j ≥ 3} C(c_j − 1, 2)`.
pub fn php_identity_sides(a: &[Vec<bool>]) -> (i64, i64) {
    let rows: Vec<i64> = a.iter().map(|r| r.iter().filter(|&&b| b).count() as i64).collect();
    let m = a.first().map_or(0, Vec::len);
    let cols: Vec<i64> = (0..m).map(|j| a.iter().filter(|r| r[j]).count() as i64).collect();
    let c2 = |x: i64| x * (x - 1) / 2;
    let lhs = rows.iter().filter(|&&r| r == 0).count() as i64 + cols.iter().map(|&c| c2(c)).sum::<i64>();
    let rhs = 1
        + cols.iter().filter(|&&c| c == 0).count() as i64
        + rows.iter().filter(|&&r| r >= 2).map(|r| r - 1).sum::<i64>()
        + cols.iter().filter(|&&c| c >= 3).map(|&c| c2(c - 1)).sum::<i64>();
    (lhs, rhs)
}

/// The matrix of `bits` read row-major as `(m+1) × m`.
pub fn php_matrix(m: usize, bits: u64) -> Vec<Vec<bool>> {
    (0..m + 1)
        .map(|i| (0..m).map(|j| (bits >> (i * m + j)) & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Cube;

    #[test]
    fn php1_certificate_is_single_cube() {
        let cert = php_scs_proof(1);
        assert_eq!(cert.cubes.cubes(), &[Cube::from_dimacs(&[-1, -2]).unwrap()]);
        assert_eq!(php_scs_proof(2).cubes.size(), 7);
    }

    #[test]
    fn identity_examples() {
        let zero = vec![vec![false; 2]; 3];
        assert_eq!(php_identity_sides(&zero), (3, 3));
        let diag = vec![vec![true, false], vec![false, true], vec![false, false]];
        assert_eq!(php_identity_sides(&diag), (1, 1));
    }

    #[test]
    fn identity_all_m2() {
        for bits in 0..64 {
            let (l, r) = php_identity_sides(&php_matrix(2, bits));
            assert_eq!(l, r, "matrix {bits:06b}");
        }
    }
}
