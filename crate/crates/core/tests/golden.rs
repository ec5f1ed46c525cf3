//! Values computed once by the brute-force oracles and frozen here.

use std::collections::BTreeMap;

use subcube_core::families::{pebbling, pebhint, php, pyramid, tseitin, ChargedGraph};
use subcube_core::maxres::{replay, simulate_treeres, write_log};
use subcube_core::oracles::{min_res_width, scs_min_degree, tseitin_level_census, SearchBudget};
use subcube_core::witnesses::{pebhint_or_maxres_proof, php_scs_proof, pyramid2_pebbling_tree, scs_from_maxresw};

#[test]
fn resolution_widths() {
    let cases = [
        (tseitin(&ChargedGraph::triangle()), 2),
        (tseitin(&ChargedGraph::complete(4)), 4),
        (tseitin(&ChargedGraph::cycle(5)), 2),
        (php(2), 2),
        (php(3), 3),
        (pebbling(&pyramid(2)).unwrap(), 3),
        (pebhint(&pyramid(2)).unwrap(), 3),
    ];
    for (k, (f, w)) in cases.iter().enumerate() {
        assert_eq!(min_res_width(f).unwrap(), *w, "case {k}");
    }
}

#[test]
fn subcubesums_degrees() {
    let cases = [
        (php(2), (3, 3)),
        (tseitin(&ChargedGraph::triangle()), (3, 3)),
        (tseitin(&ChargedGraph::cycle(5)), (3, 3)),
        (tseitin(&ChargedGraph::complete(4)), (5, 5)),
    ];
    for (k, (f, (junta, integral))) in cases.iter().enumerate() {
        let r = scs_min_degree(f, SearchBudget::default()).unwrap();
        assert_eq!((r.junta_degree, r.integral_degree), (*junta, Some(*integral)), "case {k}");
    }
}

#[test]
fn pyramid_tree_simulation_log() {
    let (f, t) = pyramid2_pebbling_tree();
    assert_eq!(
        t.to_sexpr(),
        "(res 6 (res 5 (res 3 (leaf 3) (res 2 (leaf 2) (leaf -2 -3 5))) (res 4 (res 2 (leaf 2) (res 1 (leaf 1) (leaf -1 -2 4))) (leaf -4 -5 6))) (leaf -6))"
    );
    let log = simulate_treeres(&f, &t).unwrap();
    assert_eq!(
        write_log(&log.steps, None, &[]),
        "w 2 5\nr 8 5 2\nr 3 10 3\nr 1 4 1\nr 9 14 2\nr 17 6 4\nr 12 20 5\nr 22 7 6\n"
    );
}

#[test]
fn pebhint_height_one_log() {
    let log = pebhint_or_maxres_proof(1).unwrap();
    assert_eq!(
        write_log(&log.steps, None, &[]),
        "r 1 3 1\nr 9 5 4\nr 10 4 1\nr 15 6 4\nr 2 21 5\nr 23 14 2\nr 26 7 3\nr 27 8 6\n"
    );
    assert_eq!(replay(&log).unwrap().final_multiset.len(), 13);
    assert_eq!(scs_from_maxresw(&log).unwrap().cubes.size(), 12);
    let sizes: Vec<usize> = (1..=5).map(|h| pebhint_or_maxres_proof(h).unwrap().len()).collect();
    assert_eq!(sizes, [8, 22, 44, 74, 112]);
}

#[test]
fn php_certificate_sizes() {
    let sizes: Vec<usize> = (1..=3).map(|m| php_scs_proof(m).cubes.size()).collect();
    assert_eq!(sizes, [1, 7, 27]);
}

#[test]
fn census_values() {
    let k4 = tseitin_level_census(&ChargedGraph::complete(4)).unwrap();
    assert_eq!(k4.levels, BTreeMap::from([(1, 32), (3, 32)]));
    let c5 = tseitin_level_census(&ChargedGraph::cycle(5)).unwrap();
    assert_eq!(c5.levels, BTreeMap::from([(1, 10), (3, 20), (5, 2)]));
}
