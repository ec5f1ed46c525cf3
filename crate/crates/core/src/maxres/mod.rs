//! MaxRes and MaxResW: the rule, proof logs, replay and checking, and the
//! translation of tree-like resolution into MaxResW.

mod check;
mod log;
mod rule;
mod tree;

pub use check::{check_trace, check_viol_invariant, drop_consequent, random_step, replay, Replay};
pub use log::{parse_log, write_log, LogText, ProofLog};
pub use rule::{
    maxres_step, resolve_consequents, weaken_consequents, weaken_step, Consequent, ConsequentKind, MaxResStep,
    OccMultiset, Transition,
};
pub use tree::{
    dpll_tree, enumerate_dpll_trees, simulate_treeres, simulate_treeres_detailed, NodeKind, TreeBuilder, TreeNode,
    TreeRefutation, TreeSimulation,
};
