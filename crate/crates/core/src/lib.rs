//! Exact forcing numbers of perfect matchings.
//!
//! The crate computes forcing sets and forcing numbers `f(G, M)`, the
//! minimum and maximum forcing numbers `f(G)` and `F(G)`, and forcing
//! spectra of small graphs. Around the solver sit recognizers for the graph
//! families whose forcing numbers are extremal (complete multipartite graphs,
//! `K_{n,n}` with edges added inside one side), matching-extendability
//! predicates, generators for the extremal families, the 2-switch transition
//! graph on perfect matchings, and a harness that checks the structural
//! theorems about these families over whole corpora of small graphs.

pub mod connectivity;
pub mod cycles;
pub mod error;
pub mod extend;
pub mod forcing;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matching;
pub mod report;
pub mod structure;
pub mod switch;
pub mod verify;

pub use connectivity::vertex_connectivity;
pub use cycles::{apply_cycle, find_alternating_cycle, AlternatingCycle};
pub use error::{Error, Result};
pub use forcing::{
    cycle_packing_number, forcing_number, forcing_profile, is_forcing_set, ForcingCertificate,
    ForcingCheck, SpectrumReport,
};
pub use graph::{Edge, Graph, MAX_ORDER};
pub use io::{load_graph, write_graph, Format};
pub use matching::{enumerate_perfect_matchings, has_perfect_matching, PerfectMatching};

/// Caps on the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of perfect matchings enumerated per graph.
    pub matching_cap: usize,
    /// Maximum number of alternating cycles enumerated for a packing bound.
    pub cycle_cap: usize,
}

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            matching_cap: matching::DEFAULT_MATCHING_CAP,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }
}
