//! Exact combinatorics of separation systems at desk scale.
//!
//! The crate computes and cross-verifies width parameters of graphs, set
//! systems and matroids (tree-width, path-width, branch-width, carving-width,
//! rank-width, matroid tree-width) through one shared engine: a separation
//! system `S_k` is carved out of a universe by a submodular order function,
//! a family `F` of forbidden separation sets is fixed, and then *exactly one*
//! of two dual certificates exists — a consistent `F`-avoiding orientation
//! of `S_k` (a tangle) or a tree over `F` (a hierarchical decomposition).
//! Both sides are searched exactly; the exactly-one outcome is asserted,
//! never assumed.
//!
//! Everything is exponential by design and intended for small instances:
//! ground sets of at most ~16 elements, graphs of at most ~8 vertices.

pub mod sep;
pub mod family;
pub mod stree;
pub mod duality;
pub mod graph;
pub mod decomp;
pub mod widths;
pub mod setsep;
pub mod matroid;
pub mod cluster;
pub mod io;

/// Crate-wide error type. The CLI maps these onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    Input(String),
    /// A precondition of an operation was violated by the caller.
    #[error("domain violation: {0}")]
    Domain(String),
    /// A configurable search cap was hit before the search concluded.
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    /// Both or neither dual certificate was found where exactly one must
    /// exist. This always indicates a bug, never a property of the input.
    #[error("duality violation: {0}")]
    Duality(String),
}

pub type Result<T> = std::result::Result<T, Error>;
