//! Uniform hypergraphs with parallel edges, permutation and Cayley
//! hypergraphs, their exact adjacency forms, and solution sets of
//! translation-invariant linear systems.

mod cayley;
mod form;
mod graph;
mod sol;

pub use cayley::{
    cayley_form_on_indicators, cayley_graph, cayley_hypergraph, check_order_condition,
    permutation_hypergraph,
};
pub use form::MultilinearForm;
pub use graph::Hypergraph;
pub use sol::{ap_matrix, coset_representatives, sol_generator, EquationSystem};
