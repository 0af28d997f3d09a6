//! Helpers shared by the integration suites: graph enumerators, random
//! generators and brute-force oracles that do not use the library's own
//! algorithms.
#![allow(dead_code)]

use edgepart::graph::are_isomorphic;
use edgepart::{Edge, Graph, Partition, Template};
use rand::seq::SliceRandom;
use rand::Rng;

/// Vertex pairs of `K_n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// The labeled graph on `n` vertices whose edges are the set bits of
/// `mask` over [`pairs`].
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let all = pairs(n);
    Graph::from_edges(n, all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let count = pairs(n).len();
    (0..1u64 << count).map(move |m| graph_from_mask(n, m))
}

/// Graphs on at most `max_n` vertices with `1..=max_e` edges and no
/// isolated vertices, one per isomorphism class.
pub fn nonisomorphic_hosts(max_n: usize, max_e: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for n in 2..=max_n {
        let mut found: Vec<Graph> = Vec::new();
        for g in all_graphs(n) {
            let e = g.edge_count();
            if e == 0 || e > max_e || (0..n).any(|v| g.degree(v) == 0) {
                continue;
            }
            if !found.iter().any(|r| r.edge_count() == e && are_isomorphic(r, &g)) {
                found.push(g);
            }
        }
        reps.extend(found);
    }
    reps
}

/// Two-colorability by trying every side assignment.
pub fn bipartite_oracle(g: &Graph) -> bool {
    let n = g.n();
    (0..1u64 << n).any(|sides| g.edges().iter().all(|e| (sides >> e.u() & 1) != (sides >> e.v() & 1)))
}

/// Whether `h` is an induced subgraph of `g`, by trying every injective
/// placement of `h`'s vertices.
pub fn induced_oracle(g: &Graph, h: &Graph) -> bool {
    fn place(g: &Graph, h: &Graph, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = image.len();
        if i == h.n() {
            return true;
        }
        for x in 0..g.n() {
            if used[x] {
                continue;
            }
            if (0..i).all(|j| h.has_edge(i, j) == g.has_edge(x, image[j])) {
                used[x] = true;
                image.push(x);
                if place(g, h, image, used) {
                    return true;
                }
                image.pop();
                used[x] = false;
            }
        }
        false
    }
    h.n() <= g.n() && place(g, h, &mut Vec::new(), &mut vec![false; g.n()])
}

/// A 4-cycle as a (not necessarily induced) subgraph.
pub fn c4_subgraph_oracle(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (a + 1..n).any(|c| {
            let common = (0..n).filter(|&x| g.has_edge(a, x) && g.has_edge(c, x)).count();
            common >= 2
        })
    })
}

/// Maximum matching size over all edge subsets.
pub fn matching_oracle(g: &Graph) -> usize {
    let e = g.edge_count();
    let edges = g.edges();
    (0..1u64 << e)
        .filter(|&s| {
            let mut seen = 0u64;
            (0..e).filter(|i| s >> i & 1 == 1).all(|i| {
                let bits = 1u64 << edges[i].u() | 1u64 << edges[i].v();
                let ok = seen & bits == 0;
                seen |= bits;
                ok
            })
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// A random Ferrers graph with `left` + `right` vertices: left vertex `i`
/// sees a prefix of a shuffled right side, prefix lengths nondecreasing
/// in a shuffled left order.
pub fn random_ferrers<R: Rng>(rng: &mut R, left: usize, right: usize) -> Graph {
    let mut degrees: Vec<usize> = (0..left).map(|_| rng.gen_range(0..=right)).collect();
    degrees.sort_unstable();
    let mut left_ids: Vec<usize> = (0..left).collect();
    let mut right_ids: Vec<usize> = (left..left + right).collect();
    left_ids.shuffle(rng);
    right_ids.shuffle(rng);
    let mut edges = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        for &r in &right_ids[..d] {
            edges.push((left_ids[i].min(r), left_ids[i].max(r)));
        }
    }
    Graph::from_edges(left + right, edges).unwrap()
}

/// A random bipartite partition of `K_n` into at most `templates`
/// templates: vertices get distinct random side vectors and each edge goes
/// to a random coordinate where its endpoints differ. Empty templates are
/// dropped.
pub fn random_vector_partition<R: Rng>(rng: &mut R, n: usize, templates: usize) -> Partition {
    assert!(templates < 64 && n <= 1 << templates);
    let mut codes: Vec<u64> = Vec::with_capacity(n);
    while codes.len() < n {
        let c = rng.gen_range(0..1u64 << templates);
        if !codes.contains(&c) {
            codes.push(c);
        }
    }
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); templates];
    for (u, v) in pairs(n) {
        let diff = codes[u] ^ codes[v];
        let choices: Vec<usize> = (0..templates).filter(|i| diff >> i & 1 == 1).collect();
        let i = *choices.choose(rng).unwrap();
        classes[i].push(Edge::new(u, v).unwrap());
    }
    let host = edgepart::complete_graph(n).unwrap();
    Partition::new(host, classes.into_iter().filter(|c| !c.is_empty()).map(Template::new).collect())
}
