//! Undirected simple graphs on dense vertex labels `0..n`.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

pub type Vertex = usize;

/// An unordered vertex pair, stored with `u < v` so that the derived
/// ordering is the lexicographic edge order used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Normalizes the endpoint order. Self-loops are rejected.
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(invalid(format!("self-loop at vertex {a}"))),
        }
    }

    pub(crate) fn new_unchecked(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        Edge::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// Side of a bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A proper 2-coloring of the non-isolated vertices of a graph.
///
/// Sides are canonical: in every connected component the lowest-index
/// vertex is on side `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteWitness {
    side: Vec<Option<Side>>,
}

impl BipartiteWitness {
    /// `None` for isolated vertices.
    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        self.side.get(v).copied().flatten()
    }

    pub fn vertices_on(&self, side: Side) -> Vec<Vertex> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == Some(side))
            .collect()
    }
}

/// Undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate pairs.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in pairs {
            let e = Edge::new(a, b)?;
            if e.v >= n {
                return Err(invalid(format!("edge {e} out of range for n = {n}")));
            }
            if g.rows[e.u].contains(e.v) {
                return Err(invalid(format!("duplicate edge {e}")));
            }
            g.rows[e.u].insert(e.v);
            g.rows[e.v].insert(e.u);
            g.edges.push(e);
        }
        g.finish();
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] but takes already-normalized edges.
    pub fn from_edge_list(n: usize, edges: &[Edge]) -> Result<Self> {
        Graph::from_edges(n, edges.iter().map(|e| e.endpoints()))
    }

    fn finish(&mut self) {
        self.edges.sort_unstable();
        for list in &mut self.adj {
            list.clear();
        }
        for e in &self.edges {
            self.adj[e.u].push(e.v);
            self.adj[e.v].push(e.u);
        }
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.rows[a].contains(b)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub(crate) fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices with at least one incident edge, ascending.
    pub fn non_isolated(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Subgraph induced on `s`, relabeled to `0..s.len()` in the order
    /// given. The second component maps new labels back to old ones.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            if v >= self.n {
                return Err(invalid(format!("vertex {v} out of range for n = {}", self.n)));
            }
            if pos[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
            pos[v] = i;
        }
        let mut pairs = Vec::new();
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    pairs.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(s.len(), pairs)?;
        Ok((g, s.to_vec()))
    }

    /// Graph on the same vertex set with only the given edges kept.
    pub fn edge_subgraph(&self, keep: &[Edge]) -> Result<Graph> {
        for e in keep {
            if !self.contains_edge(e) {
                return Err(invalid(format!("edge {e} not in graph")));
            }
        }
        Graph::from_edge_list(self.n, keep)
    }

    /// Component label per vertex; components numbered by lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// True when all edges lie in one connected component (isolated
    /// vertices are ignored). The edgeless graph counts as connected.
    pub fn edges_connected(&self) -> bool {
        let Some(first) = self.edges.first() else {
            return true;
        };
        let comp = self.components();
        let c = comp[first.u];
        self.edges.iter().all(|e| comp[e.u] == c)
    }

    /// BFS 2-coloring; `Err` carries an odd cycle as a vertex sequence.
    fn two_color(&self) -> std::result::Result<BipartiteWitness, Vec<Vertex>> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s].is_some() || self.adj[s].is_empty() {
                continue;
            }
            side[s] = Some(Side::A);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(sv.flip());
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => {
                            return Err(odd_cycle_from(v, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(BipartiteWitness { side })
    }

    /// Canonical 2-coloring of the non-isolated vertices, or `None` when
    /// the graph has an odd cycle.
    pub fn is_bipartite(&self) -> Option<BipartiteWitness> {
        self.two_color().ok()
    }

    /// Vertex sequence of some odd cycle, if one exists.
    pub fn odd_cycle(&self) -> Option<Vec<Vertex>> {
        self.two_color().err()
    }

    /// Adjacency bitmask of the subgraph induced on the ordered subset `s`.
    /// Position pairs `(i, j)`, `i < j`, are numbered lexicographically.
    pub(crate) fn subset_mask(&self, s: &[Vertex]) -> u64 {
        let mut mask = 0u64;
        let mut bit = 0;
        for i in 0..s.len() {
            let row = &self.rows[s[i]];
            for &w in &s[i + 1..] {
                if row.contains(w) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }
}

fn odd_cycle_from(a: Vertex, b: Vertex, parent: &[usize], depth: &[usize]) -> Vec<Vertex> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, pairs)
}

/// Cycle `0-1-...-(n-1)-0`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path `0-1-...-(n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let pairs = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, pairs).expect("valid by construction")
}

/// Ordering `a_1..a_k` of one color class with nested neighborhoods
/// `N(a_1) ⊆ N(a_2) ⊆ ...`, or `None` if the graph is not bipartite or no
/// such ordering exists.
///
/// The class is side `A` of the canonical bipartition. Isolated vertices
/// are not part of either class.
pub fn is_ferrers(g: &Graph) -> Option<Vec<Vertex>> {
    let witness = g.is_bipartite()?;
    let mut order = witness.vertices_on(Side::A);
    order.sort_by_key(|&v| (g.degree(v), v));
    let nested = order.windows(2).all(|w| g.row(w[0]).is_subset(g.row(w[1])));
    nested.then_some(order)
}

/// Isomorphism test by backtracking over degree-compatible images.
/// Meant for small graphs.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    // Map high-degree vertices first; ties by index.
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    fn extend(g: &Graph, h: &Graph, order: &[Vertex], image: &mut [usize], used: &mut [bool], i: usize) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for w in 0..h.n() {
            if used[w] || h.degree(w) != g.degree(v) {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&x| g.has_edge(v, x) == h.has_edge(w, image[x]));
            if consistent {
                image[v] = w;
                used[w] = true;
                if extend(g, h, order, image, used, i + 1) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }

    let mut image = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    extend(g, h, &order, &mut image, &mut used, 0)
}

/// Maximum-cardinality matching (Edmonds' blossom algorithm).
pub fn max_matching(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    // Greedy warm start.
    for e in g.edges() {
        if mate[e.u] == usize::MAX && mate[e.v] == usize::MAX {
            mate[e.u] = e.v;
            mate[e.v] = e.u;
        }
    }
    let mut blossom = Blossom::new(n);
    for root in 0..n {
        if mate[root] == usize::MAX && g.degree(root) > 0 {
            if let Some(end) = blossom.find_path(g, &mate, root) {
                let mut v = end;
                while v != usize::MAX {
                    let pv = blossom.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    let mut out: Vec<Edge> = (0..n)
        .filter(|&v| mate[v] != usize::MAX && v < mate[v])
        .map(|v| Edge::new_unchecked(v, mate[v]))
        .collect();
    out.sort_unstable();
    out
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![usize::MAX; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = usize::MAX);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != usize::MAX && self.parent[mate[to]] != usize::MAX) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == usize::MAX {
                    self.parent[to] = v;
                    if mate[to] == usize::MAX {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}
