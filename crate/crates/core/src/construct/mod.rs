//! Explicit partitions of `K_n`, one builder per studied class.
//!
//! Every builder returns a [`Partition`] of `K_n`. Where a scheme only
//! exists for special `n` (squares, powers of 3, even `n`), the builder
//! runs it on the next admissible size and restricts to the first `n`
//! vertices, dropping templates that become empty.

mod basic;
mod cherries;
mod cycles;
mod ferrers;
mod stars;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use basic::{build_cbip_orchards, build_gp_stars, build_matchings, build_single_edges, round_robin};
pub use cherries::{build_cherries, build_cherry_orchards};
pub use cycles::{build_c4_decomposition, build_c4_orchards, build_hamiltonian, build_p4_paths, walecki_cycles};
pub use ferrers::{build_ferrers, GridVertex};
pub(crate) use ferrers::ceil_sqrt;
pub use stars::{build_double_stars, build_star_orchards};

use crate::class::ClassSpec;
use crate::error::{invalid, unsupported, Error, Result};
use crate::graph::{complete_graph, Edge};
use crate::pattern::Pattern;
use crate::verify::{Partition, Template};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConstructionId {
    Matchings,
    SingleEdges,
    GpStars,
    CbipOrchards,
    Ferrers,
    Hamiltonian,
    DoubleStars,
    StarOrchards,
    CherryOrchards,
    C4Decomp,
    P4Paths,
    C4Orchards,
    Cherries,
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

impl ConstructionId {
    /// The builder serving a registered class, if the class has one.
    pub fn for_class(spec: &ClassSpec) -> Option<ConstructionId> {
        use Pattern::*;
        let f = spec.forbidden();
        let id = match f {
            [] => ConstructionId::CbipOrchards,
            [P3] => ConstructionId::Matchings,
            [K2K1] => ConstructionId::GpStars,
            [K2K1, P3] => ConstructionId::SingleEdges,
            [P4] => ConstructionId::CbipOrchards,
            [TwoK2] => ConstructionId::Ferrers,
            [S4] => ConstructionId::Hamiltonian,
            [TwoK2, C4] => ConstructionId::DoubleStars,
            [TwoK2, C4, P4] => ConstructionId::GpStars,
            [C4, P4, S4] => ConstructionId::CherryOrchards,
            [C4, P4] => ConstructionId::StarOrchards,
            [TwoK2, P4] => ConstructionId::GpStars,
            [TwoK2, S4] => ConstructionId::C4Decomp,
            [TwoK2, P4, S4] => ConstructionId::C4Decomp,
            [C4, S4] => ConstructionId::Hamiltonian,
            [P4, S4] => ConstructionId::C4Orchards,
            [TwoK2, C4, S4] => ConstructionId::P4Paths,
            [TwoK2, C4, P4, S4] => ConstructionId::Cherries,
            _ => return None,
        };
        Some(id)
    }

    pub fn build(self, n: usize) -> Result<Partition> {
        match self {
            ConstructionId::Matchings => build_matchings(n),
            ConstructionId::SingleEdges => build_single_edges(n),
            ConstructionId::GpStars => build_gp_stars(n),
            ConstructionId::CbipOrchards => build_cbip_orchards(n),
            ConstructionId::Ferrers => build_ferrers(n),
            ConstructionId::Hamiltonian => build_hamiltonian(n),
            ConstructionId::DoubleStars => build_double_stars(n),
            ConstructionId::StarOrchards => build_star_orchards(n),
            ConstructionId::CherryOrchards => build_cherry_orchards(n),
            ConstructionId::C4Decomp => build_c4_decomposition(n),
            ConstructionId::P4Paths => build_p4_paths(n),
            ConstructionId::C4Orchards => build_c4_orchards(n),
            ConstructionId::Cherries => build_cherries(&complete_graph(n)?),
        }
    }
}

/// Builds a partition of `K_n` for a registered class.
///
/// Side conditions beyond the builder's own preconditions: `{C4,S4}`
/// needs `n > 4`; `{C4,P4}` needs `n >= 4`.
pub fn construct(spec: &ClassSpec, n: usize) -> Result<Partition> {
    let id = ConstructionId::for_class(spec).ok_or_else(|| {
        Error::UnsupportedClass(format!("no construction for class {spec}"))
    })?;
    if *spec == ClassSpec::new([Pattern::C4, Pattern::S4]) && n <= 4 {
        return Err(unsupported("class C4-S4 requires n > 4"));
    }
    id.build(n)
}

pub(crate) fn require_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(invalid(format!("{what} requires n >= {min}, got {n}")));
    }
    Ok(())
}

/// Partition of `K_n` from raw edge classes; empty classes are dropped.
pub(crate) fn kn_partition(n: usize, classes: Vec<Vec<Edge>>) -> Result<Partition> {
    let templates = classes
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(Template::new)
        .collect();
    Ok(Partition::new(complete_graph(n)?, templates))
}

pub(crate) fn edge(a: usize, b: usize) -> Edge {
    Edge::new_unchecked(a, b)
}
