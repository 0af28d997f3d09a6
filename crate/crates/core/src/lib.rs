//! Bipartite edge partitions of graphs under forbidden induced subgraphs.
//!
//! A partition of a host graph's edges into bipartite *templates* is
//! 𝓗-avoiding when no template contains a pattern of 𝓗 as an induced
//! subgraph (templates are taken without isolated vertices). The crate
//! builds such partitions of `K_n` for every studied class, verifies
//! arbitrary partitions, computes the minimum number of templates exactly
//! on small hosts, and reproduces the random C4-free covering experiment
//! and the cherry-orchard hardness gadget.

pub mod bounds;
pub mod class;
pub mod construct;
pub mod cover;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod pattern;
pub mod solver;
pub mod verify;

pub use class::ClassSpec;
pub use error::{Error, Result};
pub use graph::{complete_graph, Edge, Graph, Vertex};
pub use pattern::Pattern;
pub use verify::{verify_partition, Partition, Template, VerifyReport};
