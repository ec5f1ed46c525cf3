//! Formula families and the graphs they are built from.

mod compose;
mod graph;
mod pebbling;
mod php;
mod subset;
mod tseitin;

pub use compose::{compose, compose_blocks, compose_clause, copy_var, Gadget};
pub use graph::{pyramid, pyramid_vertex, random_regular_bipartite, BipartiteDegreeGraph, ChargedGraph, Dag, Side};
pub use pebbling::{pebbling, pebhint, vertex_var};
pub use php::{php, php_delta, php_var};
pub use subset::{edge_var, subset_cardinality, subsets, vertex_constraint};
pub use tseitin::{tseitin, tseitin_vertex};
