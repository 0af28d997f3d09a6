use std::collections::{HashMap, VecDeque};

use super::{edge, kn_partition, require_at_least};
use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::verify::{Partition, Template};

/// Orchard edge lists on the vertices `base..base + size`, `size` a power
/// of 3.
fn cherry_orchard_classes(base: Vertex, size: usize) -> Vec<Vec<Edge>> {
    match size {
        0 | 1 => return Vec::new(),
        3 => {
            return vec![
                vec![edge(base, base + 1), edge(base + 1, base + 2)],
                vec![edge(base, base + 2)],
            ]
        }
        _ => {}
    }
    let m = size / 3;
    let [a, b, c] = [base, base + m, base + 2 * m];
    // Matching r between thirds x and y pairs x+i with y+(i+r) mod m.
    let matching = |x: Vertex, y: Vertex, r: usize| -> Vec<Edge> {
        (0..m).map(|i| edge(x + i, y + (i + r) % m)).collect()
    };

    let (inner_a, (inner_b, inner_c)) = if size >= 81 {
        rayon::join(
            || cherry_orchard_classes(a, m),
            || rayon::join(|| cherry_orchard_classes(b, m), || cherry_orchard_classes(c, m)),
        )
    } else {
        (
            cherry_orchard_classes(a, m),
            (cherry_orchard_classes(b, m), cherry_orchard_classes(c, m)),
        )
    };
    let mut classes: Vec<Vec<Edge>> = inner_a
        .into_iter()
        .zip(inner_b)
        .zip(inner_c)
        .map(|((mut x, y), z)| {
            x.extend(y);
            x.extend(z);
            x
        })
        .collect();

    for s in 0..m / 2 {
        let (r0, r1) = (2 * s, 2 * s + 1);
        let mut centered_a = matching(a, b, r0);
        centered_a.extend(matching(a, c, r0));
        let mut centered_b = matching(b, c, r0);
        centered_b.extend(matching(a, b, r1));
        let mut centered_c = matching(a, c, r1);
        centered_c.extend(matching(b, c, r1));
        classes.extend([centered_a, centered_b, centered_c]);
    }
    if m % 2 == 1 {
        classes.push(matching(a, b, m - 1));
        classes.push(matching(a, c, m - 1));
        classes.push(matching(b, c, m - 1));
    }
    classes
}

/// Partition of `K_n` into unions of disjoint cherries and edges.
///
/// Recursive on thirds of the next power of 3: the three copies of the
/// inner scheme share templates, and the cross edges are split into
/// matchings `M(r)` per pair of thirds, combined two at a time into
/// orchards centered on one third.
pub fn build_cherry_orchards(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "cherry-orchard partition")?;
    let mut size = 1;
    while size < n {
        size *= 3;
    }
    let full = kn_partition(size, cherry_orchard_classes(0, size))?;
    if size == n {
        Ok(full)
    } else {
        full.restrict_to_prefix(n)
    }
}

/// Partition of a connected graph into `ceil(e/2)` templates, each a
/// single cherry except one single edge when `e` is odd.
///
/// Edges are paired at the lower endpoint along a BFS tree, processing
/// vertices deepest first; a vertex left with an odd edge pairs it with
/// its parent edge.
pub fn build_cherries(g: &Graph) -> Result<Partition> {
    if g.edge_count() == 0 {
        return Err(invalid("cherry partition of a graph without edges"));
    }
    if !g.edges_connected() {
        return Err(Error::UnsupportedInput(
            "cherry partition requires the edges to be connected".into(),
        ));
    }
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let mut templates = Vec::with_capacity(edges.len().div_ceil(2));
    if edges.len() % 2 == 1 {
        let pos = (0..edges.len())
            .find(|&i| {
                let mut rest = edges.clone();
                rest.remove(i);
                Graph::from_edge_list(g.n(), &rest)
                    .map(|h| h.edges_connected())
                    .unwrap_or(false)
            })
            .ok_or_else(|| Error::InternalInconsistency("no removable edge".into()))?;
        templates.push(Template::new(vec![edges.remove(pos)]));
    }
    if !edges.is_empty() {
        let rest = Graph::from_edge_list(g.n(), &edges)?;
        templates.extend(pair_edges(&rest)?.into_iter().map(|(x, y)| Template::new(vec![x, y])));
    }
    Ok(Partition::new(g.clone(), templates))
}

/// Pairs the edges of a connected graph with an even number of edges
/// into cherries.
fn pair_edges(g: &Graph) -> Result<Vec<(Edge, Edge)>> {
    let index: HashMap<Edge, usize> = g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let root = g.edges()[0].u();
    let mut parent: Vec<Option<Vertex>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }

    let mut used = vec![false; g.edge_count()];
    let mut pairs = Vec::with_capacity(g.edge_count() / 2);
    for &v in order.iter().rev() {
        let up = parent[v].map(|p| index[&edge(v, p)]);
        let mut free: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| index[&edge(v, w)])
            .filter(|&i| !used[i] && Some(i) != up)
            .collect();
        if free.len() % 2 == 1 {
            let up = up.ok_or_else(|| {
                Error::InternalInconsistency("odd edge left at the root".into())
            })?;
            free.push(up);
        }
        for chunk in free.chunks(2) {
            used[chunk[0]] = true;
            used[chunk[1]] = true;
            pairs.push((g.edges()[chunk[0]], g.edges()[chunk[1]]));
        }
    }
    Ok(pairs)
}
