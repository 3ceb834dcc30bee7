#![forbid(unsafe_code)]

//! Pebble-game algorithms for (k,l)-sparse hypergraphs.
//!
//! A hypergraph is (k,l)-sparse when no vertex subset spans more than
//! k*n' - l edges, and tight when it is sparse with exactly k*n - l edges.
//! This crate provides:
//!
//! - the basic pebble game solving the decision, extraction, and
//!   optimization problems ([`pebble`]);
//! - component detection and the pebble game with components
//!   ([`components`]);
//! - lower-dimensional representations and criticality ([`representation`]);
//! - decompositions into maps and trees ([`decomposition`]);
//! - generators for the canonical graph families ([`generators`]);
//! - exponential brute-force oracles certifying all of the above on small
//!   instances ([`oracle`]);
//! - a line-oriented text format ([`format`]) and a CLI ([`cli`]).

pub mod cli;
pub mod components;
pub mod decomposition;
pub mod format;
pub mod generators;
pub mod hypergraph;
pub mod oracle;
pub mod params;
pub mod pebble;
pub mod representation;

pub use hypergraph::{GraphError, Hyperedge, Hypergraph, Orientation};
pub use params::{ParamError, SparsityParams};
pub use pebble::{decide, extract, optimize, GameState, GameVerdict, VerdictKind};
