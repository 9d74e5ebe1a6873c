//! Graphs, clique enumeration, decompositions and small-graph canonical forms.

mod canon;
mod cliques;
mod generate;
mod graph;
mod structure;

pub use canon::{
    automorphisms, canonical_form, canonical_form_with_limit, find_isomorphism, CanonicalForm,
    DEFAULT_MAX_N,
};
pub use cliques::{enumerate_k_cliques, CliqueSet};
pub use generate::{generate, Family};
pub use graph::{parse_edge_list, parse_weights, Graph};
pub use structure::{
    coherence_graph, decompose, every_vertex_in_clique, similar, CoherenceGraph,
    GraphDecomposition, Similarity,
};
