use crate::error::{Error, Result};
use crate::formula::{falsifying_cube, Clause, CubeMultiset};
use crate::maxres::{replay, ProofLog};
use crate::subcubesums::ScsCertificate;

/// Turns a MaxResW refutation into a SubCubeSums certificate: the cubes
/// falsifying the final multiset with one empty clause removed.
pub fn scs_from_maxresw(log: &ProofLog) -> Result<ScsCertificate> {
    let r = replay(log)?;
    let mut rest = r.final_multiset.into_clauses();
    let k = rest
        .iter()
        .position(Clause::is_empty)
        .ok_or_else(|| Error::Invalid("log does not derive the empty clause".into()))?;
    rest.remove(k);
    let cubes = rest.iter().map(falsifying_cube).collect::<Result<Vec<_>>>()?;
    ScsCertificate::new(log.initial.clone(), CubeMultiset::new(log.initial.num_vars(), cubes)?)
}

/// Upper bound on the certificate size from a log with `m` initial
/// clauses over `n` variables and `s` steps: each resolution adds at most
/// `n − 2` clauses net and each weakening exactly one.
pub fn size_bound(m: usize, n: usize, s: usize) -> usize {
    (m + n.saturating_sub(2).max(1) * s).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{ClauseMultiset, Var};
    use crate::maxres::MaxResStep;
    use crate::subcubesums::check_certificate;
    use crate::verdict::CheckMode;
    use crate::witnesses::pebhint_or_maxres_proof;

    #[test]
    fn contradiction_gives_empty_certificate() {
        let f = ClauseMultiset::new(1, vec![Clause::from_dimacs(&[1]).unwrap(), Clause::from_dimacs(&[-1]).unwrap()]).unwrap();
        let log = ProofLog::new(
            f,
            vec![MaxResStep::Resolve {
                pos: 1,
                neg: 2,
                pivot: Var::from_index(1),
            }],
        );
        let cert = scs_from_maxresw(&log).unwrap();
        assert_eq!(cert.cubes.size(), 0);
        assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn non_refutation_is_rejected() {
        let f = ClauseMultiset::new(2, vec![Clause::from_dimacs(&[1, 2]).unwrap()]).unwrap();
        assert!(scs_from_maxresw(&ProofLog::new(f, vec![])).is_err());
    }

    #[test]
    fn pebbling_proof_converts() {
        let log = pebhint_or_maxres_proof(2).unwrap();
        let cert = scs_from_maxresw(&log).unwrap();
        assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
        let (m, n) = (log.initial.len(), log.initial.num_vars());
        assert!(cert.cubes.size() <= size_bound(m, n, log.len()));
    }
}
