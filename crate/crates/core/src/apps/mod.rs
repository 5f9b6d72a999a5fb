//! Applications built on the engine.

pub mod bounded;
pub mod cliquehit;
pub mod hypergraph;
pub mod strongcolour;

pub use bounded::{bounded_degree_it, it_containing_vertex};
pub use cliquehit::{
    clique_hitting_set, clique_hitting_set_within, maximum_cliques, maximum_cliques_within, CliqueHittingSet,
};
pub use hypergraph::{auxiliary_graph, hypergraph_match, hypergraph_match_detailed, HyperEdge, Hypergraph, MatchOutcome, MatchRun};
pub use strongcolour::{strong_colour, verify_strong_colouring, StrongColouring};
