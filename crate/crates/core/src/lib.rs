//! Proof-complexity workbench for MaxRes, MaxResW and SubCubeSums.

pub mod dimacs;
pub mod error;
pub mod families;
pub mod formula;
pub mod maxres;
pub mod oracles;
pub mod packed;
pub mod subcubesums;
pub mod verdict;
pub mod witnesses;

pub use error::{Error, Result};
pub use formula::{
    cube_hits, eval_clause, falsifying_cube, restrict, viol, Assignment, Clause, ClauseMultiset, Cube, CubeMultiset,
    Lit, Var,
};
pub use verdict::{CheckMode, CheckOptions, Verdict};
