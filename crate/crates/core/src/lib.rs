//! Exact chromatic and Tutte polynomials, subgraph sequences and the 4-path
//! "hat" construction for small graphs, with tools to search for graphs that
//! share these invariants with their complements.

pub mod canon;
pub mod chromatic;
pub mod construct;
pub mod error;
pub mod exec;
pub mod graph;
pub mod graph6;
pub mod poly;
pub mod search;
pub mod subseq;
pub mod subsets;
pub mod tutte;

pub use canon::{canonical_form, canonical_form_graph, is_isomorphic};
pub use chromatic::{chromatic_poly, chromatic_poly_oracle, count_colorings, ChromaticEngine};
pub use construct::{complement_commutes, hat, hat_chromatic_identity, iterate_hat};
pub use error::{Error, ErrorKind};
pub use exec::Exec;
pub use graph::{connected_components, DegreeSequence, Graph, MultiGraph};
pub use graph6::{decode, encode};
pub use poly::{BiPoly, UniPoly};
pub use search::{classify, generate_all, search, Budget, Predicate, WitnessReport};
pub use subseq::{subgraph_sequence, SubgraphDescription, SubgraphSequence};
pub use tutte::{tutte_poly, tutte_subset_expansion, TutteEngine};
