//! Separator-driven product-structure decompositions of graphs.
//!
//! The crate computes star-partitions, bounded-tree-depth partitions,
//! treewidth-driven partitions and expansion-based partitions, together
//! with machine-checkable certificates (quotient hosts, rooted forests,
//! tree decompositions, shallow clique models). Everything is
//! deterministic: same input, same output, no hidden seeds.
//!
//! The crate is `no_std` (it needs `alloc` only); all file formats and
//! the command line live in the companion crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod decomposition;
pub mod expansion;
pub mod graph;
pub mod instances;
pub mod math;
pub mod partition;
pub mod separators;
pub mod weighted;

mod error;

pub use error::Error;

/// Largest instance the exact treewidth oracle accepts by default.
pub const DEFAULT_EXACT_TW_LIMIT: usize = 20;
/// Largest instance the exact tree-depth oracle accepts by default.
pub const DEFAULT_EXACT_TD_LIMIT: usize = 15;
/// Largest instance the exhaustive shallow-model search accepts by default.
pub const DEFAULT_SHALLOW_MODEL_LIMIT: usize = 12;
