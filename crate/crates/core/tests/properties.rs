use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subcube_core::families::{compose, compose_blocks, php, subset_cardinality, tseitin, tseitin_vertex, ChargedGraph, Gadget};
use subcube_core::maxres::{
    check_viol_invariant, dpll_tree, random_step, replay, simulate_treeres_detailed, MaxResStep, OccMultiset, ProofLog,
};
use subcube_core::oracles::{conical_junta_feasible, min_res_width, scs_min_degree, JuntaVerdict, SearchBudget};
use subcube_core::subcubesums::{check_certificate, from_pointwise, measures, viol_table, PseudoFunction, ScsCertificate};
use subcube_core::witnesses::{php_identity_sides, php_matrix, scs_from_maxresw, size_bound};
use subcube_core::{
    eval_clause, falsifying_cube, restrict, viol, Assignment, CheckMode, Clause, ClauseMultiset, Cube, Lit, Var,
};

fn arb_clause(n: u32) -> impl Strategy<Value = Clause> {
    proptest::collection::btree_map(1..=n, any::<bool>(), 0..=3usize.min(n as usize))
        .prop_map(|m| Clause::new(m.into_iter().map(|(v, p)| Lit::new(Var::from_index(v), p))))
}

fn arb_cnf(n: u32, max: usize) -> impl Strategy<Value = ClauseMultiset> {
    proptest::collection::vec(arb_clause(n), 1..max).prop_map(move |cs| ClauseMultiset::new(n as usize, cs).unwrap())
}

/// Adds the full clause of every satisfying assignment, making `f` unsatisfiable.
fn close_unsat(f: &ClauseMultiset) -> ClauseMultiset {
    let n = f.num_vars();
    let mut g = f.clone();
    for i in 0..1u64 << n {
        let a = Assignment::from_lex_index(i, n);
        if viol(f, &a).unwrap() == 0 {
            g.push(Clause::new(a.bits().iter().enumerate().map(|(k, &b)| Lit::new(Var::from_index(k as u32 + 1), !b))))
                .unwrap();
        }
    }
    g
}

fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |i| Assignment::from_lex_index(i, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn viol_counts_multiplicities(f in arb_cnf(5, 10)) {
        for a in all_assignments(5) {
            let by_distinct: u64 = f
                .multiplicities()
                .into_iter()
                .filter(|(c, _)| !eval_clause(c, &a).unwrap())
                .map(|(_, m)| m as u64)
                .sum();
            prop_assert_eq!(viol(&f, &a).unwrap(), by_distinct);
        }
    }

    #[test]
    fn restriction_preserves_viol(f in arb_cnf(5, 10), fixed in proptest::collection::btree_map(1u32..=5, any::<bool>(), 0..4)) {
        let rho = Cube::new(fixed.iter().map(|(&v, &b)| (Var::from_index(v), b))).unwrap();
        let r = restrict(&f, &rho);
        for a in all_assignments(5) {
            if rho.contains(&a).unwrap() {
                prop_assert_eq!(viol(&f, &a).unwrap(), viol(&r, &a).unwrap());
            }
        }
    }

    #[test]
    fn random_steps_preserve_viol(f in arb_cnf(6, 8), seed in any::<u64>(), weaken in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut occ = OccMultiset::new(&f);
        let mut steps = Vec::new();
        for _ in 0..5 {
            let Some(s) = random_step(&occ, &mut rng, weaken) else { break };
            let before = occ.len();
            let t = occ.apply(s).unwrap();
            if let MaxResStep::Resolve { .. } = s {
                let (a, b) = (&t.removed[0], &t.removed[1]);
                let bound = 1 + b.difference(a).len() + a.difference(b).len();
                prop_assert!(t.added.len() <= bound);
                prop_assert!(occ.len() as i64 - before as i64 <= f.num_vars() as i64 - 2);
            }
            steps.push(s);
        }
        let log = ProofLog::new(f, steps);
        prop_assert!(check_viol_invariant(&log, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn tree_simulation_on_random_unsat(f in arb_cnf(4, 8)) {
        let f = close_unsat(&f);
        let t = dpll_tree(&f, 10_000, |_, open| open[0]).unwrap().unwrap();
        let sim = simulate_treeres_detailed(&f, &t).unwrap();
        prop_assert!(sim.log.len() <= 2 * t.size());
        prop_assert!(sim.matches_tree());
        prop_assert!(replay(&sim.log).unwrap().refuted);
        prop_assert!(check_viol_invariant(&sim.log, CheckMode::Exhaustive).unwrap().pass);
        let cert = scs_from_maxresw(&sim.log).unwrap();
        prop_assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
        prop_assert!(cert.cubes.size() <= size_bound(f.len(), f.num_vars(), sim.log.len()));
    }

    #[test]
    fn pointwise_certificate_iff_unsat(f in arb_cnf(4, 10)) {
        let slack = viol_table(&f).unwrap().add_constant(-1);
        let unsat = slack.first_negative().is_none();
        match from_pointwise(&slack) {
            Ok(g) => {
                prop_assert!(unsat);
                if !slack.is_zero() {
                    prop_assert_eq!(measures(&g).width, 4);
                }
                let cert = ScsCertificate::new(f, g).unwrap();
                prop_assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
            }
            Err(_) => prop_assert!(!unsat),
        }
    }

    #[test]
    fn xor_lift_matches_composed_target(f in arb_cnf(3, 6)) {
        let lifted = viol_table(&f).unwrap().add_constant(-1).xor_lift().unwrap();
        let composed = viol_table(&compose(&f, Gadget::Xor2)).unwrap().add_constant(-1);
        prop_assert_eq!(lifted, composed);
    }

    #[test]
    fn xor_blocks_are_disjoint(f in arb_cnf(4, 6)) {
        for block in compose_blocks(&f, Gadget::Xor2) {
            let cubes: Vec<Cube> = block.iter().map(|c| falsifying_cube(c).unwrap()).collect();
            for i in 0..cubes.len() {
                for j in i + 1..cubes.len() {
                    let clash = cubes[i].fixed().iter().any(|&(v, b)| cubes[j].value_of(v) == Some(!b));
                    prop_assert!(clash, "overlapping cubes {:?} {:?}", cubes[i], cubes[j]);
                }
            }
        }
    }

    #[test]
    fn junta_feasibility_is_monotone(vals in proptest::collection::vec(0i64..3, 8)) {
        let t = PseudoFunction::new(3, vals).unwrap();
        let mut feasible = false;
        for d in 0..=3 {
            let now = conical_junta_feasible(&t, d).unwrap().is_feasible();
            prop_assert!(!feasible || now);
            feasible = now;
        }
        prop_assert!(feasible);
    }

    #[test]
    fn junta_degree_below_integral(f in arb_cnf(3, 8)) {
        let f = close_unsat(&f);
        let r = scs_min_degree(&f, SearchBudget::default()).unwrap();
        prop_assert!(r.verified);
        prop_assert!(r.integral_complete);
        prop_assert!(r.junta_degree <= r.integral_degree.unwrap());
    }

    #[test]
    fn res_width_bounded_and_order_free(f in arb_cnf(4, 8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let f = close_unsat(&f);
        let w = min_res_width(&f).unwrap();
        prop_assert!(w <= f.num_vars());
        let mut cs = f.clauses().to_vec();
        cs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(min_res_width(&ClauseMultiset::new(4, cs).unwrap()).unwrap(), w);
    }

    #[test]
    fn php_identity_m3(bits in 0u64..1 << 12) {
        let (l, r) = php_identity_sides(&php_matrix(3, bits));
        prop_assert_eq!(l, r);
    }
}

#[test]
fn tseitin_solution_counts() {
    for n in 3..=6 {
        let odd = ChargedGraph::cycle(n);
        let f = tseitin(&odd);
        let m = odd.edges.len();
        let sat = all_assignments(m).filter(|a| viol(&f, a).unwrap() == 0).count();
        if odd.charge_parity() {
            assert_eq!(sat, 0, "odd cycle {n}");
        } else {
            assert_eq!(sat, 1 << (m - n + 1), "even cycle {n}");
        }
    }
    let k4 = ChargedGraph::complete(4);
    let even = k4.clone().with_charge(vec![false; 4]).unwrap();
    let f = tseitin(&even);
    let sat = all_assignments(6).filter(|a| viol(&f, a).unwrap() == 0).count();
    assert_eq!(sat, 1 << (6 - 4 + 1));
    for u in 0..4 {
        let s = tseitin_vertex(&k4, u);
        for a in all_assignments(6) {
            assert!(s.iter().filter(|c| !eval_clause(c, &a).unwrap()).count() <= 1);
        }
    }
}

#[test]
fn subset_cardinality_totals() {
    use subcube_core::families::{random_regular_bipartite, Side};
    for n in 4..=8 {
        let g = random_regular_bipartite(n, n as u64).unwrap();
        for side in [Side::Left, Side::Right] {
            let total: usize = (0..n).map(|w| g.degree(side, w).div_ceil(2)).sum();
            assert_eq!(total, 2 * n + 1);
        }
        assert_eq!(g.edges.len(), 4 * n + 1);
        assert_eq!(subset_cardinality(&g).unwrap().num_vars(), 4 * n + 1);
    }
}

#[test]
fn php_slack_feasible_with_point_cubes() {
    for m in 1..=2 {
        let f = php(m);
        let t = viol_table(&f).unwrap().add_constant(-1);
        assert!(t.first_negative().is_none());
        let r = conical_junta_feasible(&t, m * (m + 1)).unwrap();
        assert!(matches!(r, JuntaVerdict::Feasible(_)));
    }
}
