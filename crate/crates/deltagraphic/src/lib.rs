//! Binary matroids, delta-matroids and grafts, with recognition of
//! delta-graphic matroids.
//!
//! Element sets throughout are `u64` bitsets over the dense index space of a
//! structure's label list ([`bits`]), so ground sets hold at most 64 elements.

pub mod bits;
pub mod caps;
pub mod catalog;
pub mod delta;
mod error;
pub mod gf2;
pub mod graft;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod matroid;
pub mod mhb;
pub mod recognize;
pub mod search;
pub mod tree;

pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use graft::Graft;
pub use graph::MultiGraph;
pub use matroid::Matroid;
pub use tree::LabelledTree;
