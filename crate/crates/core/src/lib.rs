//! Additive tree spanners of connected graphs from tree decompositions of
//! small breadth.
//!
//! Given a connected graph `G` and a tree decomposition `(T, (X_t))` of
//! breadth `ρ`, [`spanner::build_spanner`] returns a spanning tree `H` with
//! `d_H(u, v) ≤ d_G(u, v) + 8ρ(2·d(T) + 1)` for all vertex pairs, where
//! `d(T)` is the depth of the nested branch-vertex sequence of `T`
//! (see [`tree_metrics`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line tool live in the `tbspan` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod generators;
pub mod graph;
pub mod spanner;
pub mod subtree;
pub mod tree_metrics;
pub mod treedec;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Bfs, DistanceMatrix, Graph};
pub use spanner::{BuildOptions, BuildTrace, CheckLevel, LevelSnapshot};
pub use subtree::SubtreeOfGraph;
pub use tree_metrics::NestedTreeSequence;
pub use treedec::{TreeDecomposition, Violation};
pub use verify::{Ratio, StretchReport, VerifyMode};
