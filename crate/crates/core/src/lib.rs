//! Structure theory toolkit for squares of regular graphs.
//!
//! The crate decomposes a `d`-regular graph into regions and superregions,
//! builds the ordered-pair certificate charged to each superregion, detects
//! the snake and peanut exceptions, and checks the lower bound
//! `e(G^2) - e(G) > 2n(1 - 2/(d+1) - 3/(d-3))` together with its supporting
//! lemmas on concrete inputs.

pub mod decomposition;
pub mod families;
pub mod format;
pub mod graph;
pub mod pairbook;
pub mod verify;

pub use graph::{Graph, Vertex};
