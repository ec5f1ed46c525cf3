//! Explicit proofs and certificates for the standard families.

mod pebbling;
mod php;
mod simulation;
mod subsetcard;

pub use pebbling::{pebhint_or_maxres_proof, pebhint_or_proof_len, pyramid2_pebbling_tree};
pub use php::{php_identity_sides, php_matrix, php_scs_proof};
pub use simulation::{scs_from_maxresw, size_bound};
pub use subsetcard::{
    local_identity_failures, local_identity_sides, subsetcard_scs_proof, vertex_tables, vertex_tables_latex, VertexCubeTable, VertexType,
};
