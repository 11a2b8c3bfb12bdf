//! Star-complement machinery for deciding strongly regular graph existence.
//!
//! The toolkit covers the full certificate pipeline: parameter feasibility
//! ([`feasibility`]), the structural b-vector counting lemma, eigenvalue
//! interlacing against a partitioned adjacency matrix ([`interlacing`]),
//! exact-rational comparability graphs built from star complements
//! ([`starcomp`]), canonical labeling and extended orbits ([`isomorph`]),
//! a symmetry-peeling maximum-clique decision procedure ([`clique`]), and
//! the isomorph-free extension search tying it all together ([`search`]).
//!
//! Graphs are immutable adjacency bitrow structures ([`graph::Graph`]) with
//! a bit-exact graph6 codec ([`graph6`]). Everything that gates a verdict
//! (eigenvalue membership, resolvent inner products, b-vector solutions)
//! runs in exact integer or rational arithmetic; floating point appears only
//! in interlacing comparisons, behind a conservative tolerance.

pub mod clique;
pub mod feasibility;
pub mod graph;
pub mod graph6;
pub mod interlacing;
pub mod isomorph;
pub mod search;
pub mod spectra;
pub mod starcomp;

pub use graph::{Graph, VertexSet};
pub use graph6::{parse_graph6, write_graph6};
pub use feasibility::{SrgParams, SpectrumDescriptor};

// The exact-arithmetic types in the public API come from these crates.
pub use num_bigint;
pub use num_rational;
