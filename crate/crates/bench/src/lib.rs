//! Shared inputs for the benchmarks.

use subcube_core::families::{compose, pebhint, php, pyramid, tseitin, ChargedGraph, Gadget};
use subcube_core::ClauseMultiset;

pub fn php_formula(m: usize) -> ClauseMultiset {
    php(m)
}

pub fn pebhint_or(h: usize) -> ClauseMultiset {
    compose(&pebhint(&pyramid(h)).expect("pyramid has one sink"), Gadget::Or2)
}

pub fn tseitin_complete(n: usize) -> ClauseMultiset {
    tseitin(&ChargedGraph::complete(n))
}
