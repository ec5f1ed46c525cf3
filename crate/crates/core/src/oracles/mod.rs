//! Brute-force and exact optimization oracles.

mod census;
mod degree;
mod game;
mod lp;
mod pebble;
mod width;

pub use census::{binomial, tseitin_level_census, Census, CENSUS_EDGE_LIMIT};
pub use degree::{integral_search, min_junta_degree, scs_min_degree, DegreeReport, IntegralSearch, SearchBudget};
pub use game::{
    prover_delayer_play, Answer, AssignmentDelayer, Delayer, GameMove, GameTranscript, OrDelayer, OrderProver, PebblingAdversary, Prover, Scoring,
    TreeProver,
};
pub use lp::{conical_junta_feasible, verify_farkas, verify_junta_witness, FarkasCertificate, JuntaVerdict, JuntaWitness, Rational, LP_VAR_LIMIT};
pub use pebble::{bpeb, bpeb_all, bpeb_graph, intermediate_sweep, IntermediateViolation, PEBBLE_VERTEX_LIMIT};
pub use width::min_res_width;
