//! Small forbidden patterns and induced-subgraph detection.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Largest custom pattern accepted. Detection enumerates all labelings.
pub const MAX_PATTERN_VERTICES: usize = 8;

/// A forbidden induced subgraph.
///
/// Variant order matches the ASCII order of the names, which is the
/// canonical order for class names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    /// Two disjoint edges.
    TwoK2,
    C4,
    /// An edge plus an isolated vertex.
    K2K1,
    P3,
    P4,
    /// Star on 4 vertices, `K_{1,3}`.
    S4,
    Custom(CustomPattern),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CustomPattern {
    n: usize,
    edges: Vec<Edge>,
}

impl Pattern {
    pub const NAMED: [Pattern; 6] = [
        Pattern::TwoK2,
        Pattern::C4,
        Pattern::K2K1,
        Pattern::P3,
        Pattern::P4,
        Pattern::S4,
    ];

    pub fn custom(g: &Graph) -> Result<Self> {
        if g.n() == 0 || g.n() > MAX_PATTERN_VERTICES {
            return Err(invalid(format!(
                "custom pattern must have 1..={MAX_PATTERN_VERTICES} vertices"
            )));
        }
        Ok(Pattern::Custom(CustomPattern {
            n: g.n(),
            edges: g.edges().to_vec(),
        }))
    }

    pub fn graph(&self) -> Graph {
        let (n, pairs): (usize, &[(usize, usize)]) = match self {
            Pattern::P3 => (3, &[(0, 1), (1, 2)]),
            Pattern::K2K1 => (3, &[(0, 1)]),
            Pattern::P4 => (4, &[(0, 1), (1, 2), (2, 3)]),
            Pattern::C4 => (4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            Pattern::S4 => (4, &[(0, 1), (0, 2), (0, 3)]),
            Pattern::TwoK2 => (4, &[(0, 1), (2, 3)]),
            Pattern::Custom(c) => {
                return Graph::from_edge_list(c.n, &c.edges).expect("validated on construction")
            }
        };
        Graph::from_edges(n, pairs.iter().copied()).expect("static pattern")
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Pattern::P3 | Pattern::K2K1 => 3,
            Pattern::Custom(c) => c.n,
            _ => 4,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Pattern::TwoK2 => "2K2".into(),
            Pattern::C4 => "C4".into(),
            Pattern::K2K1 => "K2+K1".into(),
            Pattern::P3 => "P3".into(),
            Pattern::P4 => "P4".into(),
            Pattern::S4 => "S4".into(),
            Pattern::Custom(c) => {
                let edges: Vec<String> = c.edges.iter().map(|e| format!("{}{}", e.u(), e.v())).collect();
                format!("custom[{}:{}]", c.n, edges.join(","))
            }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "2K2" => Ok(Pattern::TwoK2),
            "C4" => Ok(Pattern::C4),
            "K2+K1" | "K1+K2" => Ok(Pattern::K2K1),
            "P3" => Ok(Pattern::P3),
            "P4" => Ok(Pattern::P4),
            "S4" => Ok(Pattern::S4),
            _ => Err(Error::Parse(format!("unknown pattern name {s:?}"))),
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Precomputed labelings of a pattern, used by the subset searches.
pub(crate) struct PatternMasks {
    k: usize,
    connected: bool,
    /// Adjacency masks of the full pattern under every vertex labeling.
    full: HashSet<u64>,
    /// `prefix[j]`: masks of every `j`-vertex induced subgraph under every
    /// injective labeling.
    prefix: Vec<HashSet<u64>>,
}

impl PatternMasks {
    pub(crate) fn new(h: &Graph) -> Self {
        let k = h.n();
        let mut prefix = vec![HashSet::new(); k + 1];
        let mut chosen = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fill_prefix(h, &mut chosen, &mut used, &mut prefix);
        let full = prefix[k].clone();
        let connected = k <= 1 || (h.edges_connected() && h.non_isolated().len() == k);
        PatternMasks {
            k,
            connected,
            full,
            prefix,
        }
    }

    pub(crate) fn matches(&self, mask: u64) -> bool {
        self.full.contains(&mask)
    }
}

fn fill_prefix(h: &Graph, chosen: &mut Vec<Vertex>, used: &mut [bool], prefix: &mut [HashSet<u64>]) {
    prefix[chosen.len()].insert(h.subset_mask(chosen));
    if chosen.len() == h.n() {
        return;
    }
    for v in 0..h.n() {
        if !used[v] {
            used[v] = true;
            chosen.push(v);
            fill_prefix(h, chosen, used, prefix);
            chosen.pop();
            used[v] = false;
        }
    }
}

/// A vertex set `S` of `g` whose induced subgraph is isomorphic to the
/// pattern, or `None`.
///
/// Every vertex subset of the pattern's size is a candidate. Connected
/// patterns only need connected subsets, which are enumerated directly;
/// other patterns run an ordered subset search that drops a prefix as
/// soon as it is not an induced subgraph of the pattern.
pub fn contains_induced(g: &Graph, h: &Pattern) -> Option<Vec<Vertex>> {
    contains_induced_graph(g, &h.graph())
}

/// [`contains_induced`] for an arbitrary pattern graph.
pub fn contains_induced_graph(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    let masks = PatternMasks::new(h);
    find_with_masks(g, &masks)
}

pub(crate) fn find_with_masks(g: &Graph, masks: &PatternMasks) -> Option<Vec<Vertex>> {
    let k = masks.k;
    if k > g.n() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    if masks.connected {
        find_connected(g, masks)
    } else {
        let mut chosen = Vec::with_capacity(k);
        find_ordered(g, masks, 0, &mut chosen).then_some(chosen)
    }
}

fn find_ordered(g: &Graph, masks: &PatternMasks, start: Vertex, chosen: &mut Vec<Vertex>) -> bool {
    if chosen.len() == masks.k {
        return true;
    }
    let remaining = masks.k - chosen.len();
    for v in start..=g.n() - remaining {
        chosen.push(v);
        if masks.prefix[chosen.len()].contains(&g.subset_mask(chosen))
            && find_ordered(g, masks, v + 1, chosen)
        {
            return true;
        }
        chosen.pop();
    }
    false
}

/// ESU enumeration of connected vertex subsets of size `k`.
fn find_connected(g: &Graph, masks: &PatternMasks) -> Option<Vec<Vertex>> {
    let mut sub = Vec::with_capacity(masks.k);
    let mut sorted = Vec::with_capacity(masks.k);
    for v in 0..g.n() {
        sub.clear();
        sub.push(v);
        let ext: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        if esu_extend(g, masks, &mut sub, ext, v, &mut sorted) {
            sorted.clear();
            sorted.extend_from_slice(&sub);
            sorted.sort_unstable();
            return Some(sorted);
        }
    }
    None
}

fn esu_extend(
    g: &Graph,
    masks: &PatternMasks,
    sub: &mut Vec<Vertex>,
    mut ext: Vec<Vertex>,
    root: Vertex,
    scratch: &mut Vec<Vertex>,
) -> bool {
    if sub.len() == masks.k {
        scratch.clear();
        scratch.extend_from_slice(sub);
        scratch.sort_unstable();
        return masks.matches(g.subset_mask(scratch));
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            if u > root && !sub.contains(&u) && !sub.iter().any(|&s| g.has_edge(s, u)) {
                next.push(u);
            }
        }
        sub.push(w);
        if esu_extend(g, masks, sub, next, root, scratch) {
            return true;
        }
        sub.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn names_round_trip() {
        for p in Pattern::NAMED {
            assert_eq!(p.name().parse::<Pattern>().unwrap(), p);
            assert_eq!(p.graph().n(), p.vertex_count());
        }
        assert!("K5".parse::<Pattern>().is_err());
    }

    #[test]
    fn named_sort_order_is_ascii() {
        let mut names: Vec<String> = Pattern::NAMED.iter().map(Pattern::name).collect();
        let before = names.clone();
        names.sort();
        assert_eq!(names, before);
    }

    #[test]
    fn p4_has_no_induced_2k2() {
        assert!(contains_induced(&path_graph(4).unwrap(), &Pattern::TwoK2).is_none());
    }

    #[test]
    fn two_k2_finds_itself() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(contains_induced(&g, &Pattern::TwoK2), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn c6_has_induced_2k2() {
        let c6 = cycle_graph(6).unwrap();
        let s = contains_induced(&c6, &Pattern::TwoK2).unwrap();
        let (sub, _) = c6.induced_subgraph(&s).unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.max_degree(), 1);
    }

    #[test]
    fn pattern_larger_than_host() {
        assert!(contains_induced(&complete_graph(3).unwrap(), &Pattern::C4).is_none());
    }

    #[test]
    fn star_and_cycle_detection() {
        let k13 = crate::graph::complete_bipartite(1, 3);
        assert!(contains_induced(&k13, &Pattern::S4).is_some());
        assert!(contains_induced(&k13, &Pattern::P4).is_none());
        assert!(contains_induced(&cycle_graph(4).unwrap(), &Pattern::C4).is_some());
        assert!(contains_induced(&complete_graph(4).unwrap(), &Pattern::C4).is_none());
        let k2k1 = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(contains_induced(&k2k1, &Pattern::K2K1), Some(vec![0, 1, 2]));
        assert!(contains_induced(&complete_graph(3).unwrap(), &Pattern::K2K1).is_none());
    }
}
