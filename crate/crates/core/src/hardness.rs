//! The cubic edge-coloring reduction to cherry-orchard partitions.
//!
//! Every edge `AB` of a cubic graph is replaced by a copy of the bird
//! gadget attached at `A` and `B`. In any partition of the gadget into
//! three cherry orchards its two legs share a color, and each shared
//! color is achievable, so proper 3-edge-colorings of the cubic graph
//! and 3-template cherry-orchard partitions of `G*` correspond.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::ClassSpec;
use crate::error::{invalid, Error, Result};
use crate::graph::{are_isomorphic, Edge, Graph, Vertex};
use crate::pattern::Pattern;
use crate::solver::{exists_partition, Feasibility, SearchBudget};
use crate::verify::{verify_partition, Partition, Template};

pub const ATTACHMENT_A: &str = "A";
pub const ATTACHMENT_B: &str = "B";
const INTERNAL_COUNT: usize = 9;
const EDGE_COUNT: usize = 14;
const COLORS: usize = 3;

/// Gadget as loaded from JSON: internal labels and edges over internal
/// labels plus the attachment slots `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub internal: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl Gadget {
    /// The shipped bird gadget.
    pub fn bird() -> Gadget {
        Gadget::from_json(include_str!("../data/bird.json")).expect("shipped gadget parses")
    }

    pub fn from_json(text: &str) -> Result<Gadget> {
        Ok(serde_json::from_str(text)?)
    }

    /// Vertex index of a label: internal labels in order, then `A`, `B`.
    fn index_of(&self, label: &str) -> Option<usize> {
        match label {
            ATTACHMENT_A => Some(self.internal.len()),
            ATTACHMENT_B => Some(self.internal.len() + 1),
            _ => self.internal.iter().position(|l| l == label),
        }
    }

    fn indexed_edges(&self) -> Option<Vec<(usize, usize)>> {
        self.edges
            .iter()
            .map(|(a, b)| Some((self.index_of(a)?, self.index_of(b)?)))
            .collect()
    }

    fn degree(&self, label: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == label || b == label).count()
    }

    fn has_edge(&self, x: &str, y: &str) -> bool {
        self.edges
            .iter()
            .any(|(a, b)| (a == x && b == y) || (a == y && b == x))
    }

    fn edge_position(&self, x: &str, y: &str) -> Option<usize> {
        self.edges
            .iter()
            .position(|(a, b)| (a == x && b == y) || (a == y && b == x))
    }
}

/// Violated shape constraints; empty when the gadget conforms.
pub fn validate_gadget_shape(g: &Gadget) -> Vec<String> {
    let mut out = Vec::new();
    if g.internal.len() != INTERNAL_COUNT {
        out.push(format!("internal vertex count: {} (expected {INTERNAL_COUNT})", g.internal.len()));
    }
    let mut labels = g.internal.clone();
    labels.sort();
    labels.dedup();
    if labels.len() != g.internal.len() {
        out.push("duplicate internal label".into());
    }
    if g.internal.iter().any(|l| l == ATTACHMENT_A || l == ATTACHMENT_B) {
        out.push("attachment label used as internal vertex".into());
    }
    for name in ["S", "P", "Q"] {
        if !g.internal.iter().any(|l| l == name) {
            out.push(format!("missing internal vertex {name}"));
        }
    }
    for (a, b) in &g.edges {
        for l in [a, b] {
            if g.index_of(l).is_none() {
                out.push(format!("unknown label {l}"));
            }
        }
        if a == b {
            out.push(format!("loop at {a}"));
        }
    }
    let mut seen: Vec<(&str, &str)> = g
        .edges
        .iter()
        .map(|(a, b)| if a <= b { (a.as_str(), b.as_str()) } else { (b.as_str(), a.as_str()) })
        .collect();
    seen.sort();
    let before = seen.len();
    seen.dedup();
    if seen.len() != before {
        out.push("duplicate edge".into());
    }
    if g.edges.len() != EDGE_COUNT {
        out.push(format!("edge count: {} (expected {EDGE_COUNT})", g.edges.len()));
    }
    if g.degree("S") != 4 {
        out.push(format!("S degree: {} (expected 4)", g.degree("S")));
    }
    for other in [ATTACHMENT_A, ATTACHMENT_B, "P", "Q"] {
        if !g.has_edge("S", other) {
            out.push(format!("S neighbors: missing {other}"));
        }
    }
    if g.degree("P") != 6 {
        out.push(format!("P degree: {} (expected 6)", g.degree("P")));
    }
    if g.degree("Q") != 5 {
        out.push(format!("Q degree: {} (expected 5)", g.degree("Q")));
    }
    if !g.has_edge("P", "Q") {
        out.push("P-Q edge missing".into());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetColorReport {
    /// Whether both legs can share color `c + 1`.
    pub mono_extendable: [bool; COLORS],
    /// No valid coloring gives the legs different colors.
    pub bi_non_extendable: bool,
    /// First valid coloring (colors `1..=3` per gadget edge, in file
    /// order) with both legs colored `c + 1`.
    pub witness_colorings: [Option<Vec<u8>>; COLORS],
    /// Valid colorings per leg-color pair `(x, y)`.
    pub valid_counts: [[u64; COLORS]; COLORS],
}

impl GadgetColorReport {
    /// Usable for the reduction: every shared color works and no split
    /// coloring exists.
    pub fn certifies(&self) -> bool {
        self.mono_extendable.iter().all(|&b| b) && self.bi_non_extendable
    }
}

/// Every color class, on the gadget's edges alone, is a disjoint union of
/// single edges and cherries.
fn classes_are_cherry_orchards(edges: &[(usize, usize)], colors: &[u8], vertices: usize) -> bool {
    let mut degree = vec![[0u8; COLORS]; vertices];
    for (&(a, b), &c) in edges.iter().zip(colors) {
        let c = c as usize - 1;
        degree[a][c] += 1;
        degree[b][c] += 1;
        if degree[a][c] > 2 || degree[b][c] > 2 {
            return false;
        }
    }
    edges
        .iter()
        .zip(colors)
        .all(|(&(a, b), &c)| !(degree[a][c as usize - 1] == 2 && degree[b][c as usize - 1] == 2))
}

/// Checks one full gadget coloring (colors `1..=3`, file edge order).
pub fn gadget_coloring_is_valid(g: &Gadget, colors: &[u8]) -> Result<bool> {
    let edges = g
        .indexed_edges()
        .ok_or_else(|| invalid("gadget has unknown labels"))?;
    if colors.len() != edges.len() || colors.iter().any(|&c| !(1..=3).contains(&c)) {
        return Err(invalid("coloring must give each gadget edge a color in 1..=3"));
    }
    Ok(classes_are_cherry_orchards(&edges, colors, g.internal.len() + 2))
}

/// Exhaustive enumeration over the 9 leg-color pairs and the `3^12`
/// colorings of the remaining edges.
pub fn gadget_color_property(g: &Gadget) -> Result<GadgetColorReport> {
    let violations = validate_gadget_shape(g);
    if !violations.is_empty() {
        return Err(invalid(format!("gadget shape: {}", violations.join("; "))));
    }
    let edges = g.indexed_edges().expect("validated labels");
    let leg_x = g.edge_position("S", ATTACHMENT_A).expect("validated leg");
    let leg_y = g.edge_position("S", ATTACHMENT_B).expect("validated leg");
    let rest: Vec<usize> = (0..edges.len()).filter(|&i| i != leg_x && i != leg_y).collect();
    let vertices = g.internal.len() + 2;
    let total = (COLORS as u32).pow(rest.len() as u32);

    let pairs: Vec<(u8, u8)> = (1..=3u8).flat_map(|x| (1..=3u8).map(move |y| (x, y))).collect();
    let found: Vec<(Option<Vec<u8>>, u64)> = pairs
        .par_iter()
        .map(|&(cx, cy)| {
            let mut colors = vec![0u8; edges.len()];
            colors[leg_x] = cx;
            colors[leg_y] = cy;
            let mut first = None;
            let mut count = 0;
            for mut code in 0..total {
                for &i in &rest {
                    colors[i] = (code % 3) as u8 + 1;
                    code /= 3;
                }
                if classes_are_cherry_orchards(&edges, &colors, vertices) {
                    count += 1;
                    if first.is_none() {
                        first = Some(colors.clone());
                    }
                }
            }
            (first, count)
        })
        .collect();

    let mut report = GadgetColorReport {
        mono_extendable: [false; COLORS],
        bi_non_extendable: true,
        witness_colorings: [None, None, None],
        valid_counts: [[0; COLORS]; COLORS],
    };
    for (&(cx, cy), (witness, count)) in pairs.iter().zip(found) {
        report.valid_counts[cx as usize - 1][cy as usize - 1] = count;
        if cx == cy {
            report.mono_extendable[cx as usize - 1] = witness.is_some();
            report.witness_colorings[cx as usize - 1] = witness;
        } else if witness.is_some() {
            report.bi_non_extendable = false;
        }
    }
    Ok(report)
}

/// One gadget copy inside `G*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    /// The replaced edge of the cubic graph.
    pub edge: Edge,
    /// Vertex of `G*` per internal label, in gadget order.
    pub internal: Vec<Vertex>,
    /// Gadget edges mapped into `G*`, in gadget file order.
    pub edges: Vec<Edge>,
    pub leg_x: Edge,
    pub leg_y: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GStar {
    pub cubic: Graph,
    pub graph: Graph,
    pub instances: Vec<GadgetInstance>,
}

fn is_cubic(g: &Graph) -> bool {
    g.n() > 0 && (0..g.n()).all(|v| g.degree(v) == 3)
}

/// Replaces every edge `AB` (`A < B`) of a cubic graph by a gadget copy.
/// Internal vertex `j` of the copy for edge `e` is `v(g) + 9e + j`.
pub fn build_gstar(g: &Graph, gadget: &Gadget) -> Result<GStar> {
    if !is_cubic(g) {
        return Err(invalid("reduction input must be 3-regular"));
    }
    let violations = validate_gadget_shape(gadget);
    if !violations.is_empty() {
        return Err(invalid(format!("gadget shape: {}", violations.join("; "))));
    }
    let local = gadget.indexed_edges().expect("validated labels");
    let k = gadget.internal.len();
    let leg_x = gadget.edge_position("S", ATTACHMENT_A).expect("validated leg");
    let leg_y = gadget.edge_position("S", ATTACHMENT_B).expect("validated leg");
    let total = g.n() + k * g.edge_count();

    let mut all = Vec::with_capacity(EDGE_COUNT * g.edge_count());
    let mut instances = Vec::with_capacity(g.edge_count());
    for (e, orig) in g.edges().iter().enumerate() {
        let internal: Vec<Vertex> = (0..k).map(|j| g.n() + k * e + j).collect();
        let place = |x: usize| match x {
            _ if x < k => internal[x],
            _ if x == k => orig.u(),
            _ => orig.v(),
        };
        let edges: Vec<Edge> = local
            .iter()
            .map(|&(a, b)| Edge::new(place(a), place(b)))
            .collect::<Result<_>>()?;
        all.extend(edges.iter().copied());
        instances.push(GadgetInstance {
            edge: *orig,
            leg_x: edges[leg_x],
            leg_y: edges[leg_y],
            internal,
            edges,
        });
    }
    Ok(GStar {
        cubic: g.clone(),
        graph: Graph::from_edge_list(total, &all)?,
        instances,
    })
}

fn is_proper_coloring(g: &Graph, coloring: &[u8]) -> bool {
    if coloring.len() != g.edge_count() || coloring.iter().any(|&c| !(1..=3).contains(&c)) {
        return false;
    }
    let mut seen = vec![[false; COLORS]; g.n()];
    for (e, &c) in g.edges().iter().zip(coloring) {
        let c = c as usize - 1;
        for x in [e.u(), e.v()] {
            if seen[x][c] {
                return false;
            }
            seen[x][c] = true;
        }
    }
    true
}

/// Spec for cherry orchards.
pub fn cherry_orchard_spec() -> ClassSpec {
    ClassSpec::new([Pattern::C4, Pattern::P4, Pattern::S4])
}

/// Lifts a proper 3-edge-coloring (colors `1..=3`, cubic edges in
/// lexicographic order) to a 3-template partition of `G*`; template `i`
/// holds color `i + 1`.
pub fn extend_coloring(gstar: &GStar, coloring: &[u8], report: &GadgetColorReport) -> Result<Partition> {
    if !is_proper_coloring(&gstar.cubic, coloring) {
        return Err(invalid("input is not a proper 3-edge-coloring"));
    }
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); COLORS];
    for (inst, &c) in gstar.instances.iter().zip(coloring) {
        let witness = report.witness_colorings[c as usize - 1]
            .as_ref()
            .ok_or_else(|| invalid(format!("gadget has no coloring with both legs colored {c}")))?;
        for (&e, &wc) in inst.edges.iter().zip(witness) {
            classes[wc as usize - 1].push(e);
        }
    }
    Ok(Partition::new(
        gstar.graph.clone(),
        classes.into_iter().map(Template::new).collect(),
    ))
}

/// Reads the cubic coloring back from a partition of `G*` into at most
/// three cherry orchards: each original edge takes its gadget's leg
/// color (template index + 1).
pub fn extract_coloring(gstar: &GStar, partition: &Partition) -> Result<Vec<u8>> {
    if partition.len() > COLORS {
        return Err(invalid(format!("expected at most 3 templates, got {}", partition.len())));
    }
    if partition.host() != &gstar.graph {
        return Err(invalid("partition host is not G*"));
    }
    let report = verify_partition(partition, &cherry_orchard_spec());
    if !report.valid {
        return Err(invalid(format!(
            "partition is not a cherry-orchard partition: {:?}",
            report.violations.first()
        )));
    }
    let owner: HashMap<Edge, usize> = partition
        .templates()
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.edges().iter().map(move |&e| (e, i)))
        .collect();
    let mut coloring = Vec::with_capacity(gstar.instances.len());
    for inst in &gstar.instances {
        let (x, y) = (owner[&inst.leg_x], owner[&inst.leg_y]);
        if x != y {
            return Err(Error::InternalInconsistency(format!(
                "gadget on {} has legs in templates {x} and {y}",
                inst.edge
            )));
        }
        coloring.push(x as u8 + 1);
    }
    if !is_proper_coloring(&gstar.cubic, &coloring) {
        return Err(Error::InternalInconsistency("extracted coloring is not proper".into()));
    }
    Ok(coloring)
}

/// A proper 3-edge-coloring from the exact solver (matchings are the
/// `{P3}` templates), or `None` when the graph is class two.
pub fn three_edge_coloring(g: &Graph) -> Result<Option<Vec<u8>>> {
    let spec = ClassSpec::new([Pattern::P3]);
    match exists_partition(g, &spec, COLORS, SearchBudget::unlimited())? {
        Feasibility::Found(p) => {
            let owner: HashMap<Edge, usize> = p
                .templates()
                .iter()
                .enumerate()
                .flat_map(|(i, t)| t.edges().iter().map(move |&e| (e, i)))
                .collect();
            Ok(Some(g.edges().iter().map(|e| owner[e] as u8 + 1).collect()))
        }
        Feasibility::Infeasible => Ok(None),
        Feasibility::BudgetExhausted => Err(Error::InternalInconsistency("unlimited budget exhausted".into())),
    }
}

/// All cubic graphs on `n` vertices up to isomorphism, connected or not.
pub fn cubic_graphs(n: usize) -> Vec<Graph> {
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut reps: Vec<Graph> = Vec::new();
    let mut adj = vec![Vec::with_capacity(3); n];
    let mut emit = |adj: &[Vec<usize>]| {
        let pairs = (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)));
        let g = Graph::from_edges(n, pairs).expect("simple graph");
        if !reps.iter().any(|r| are_isomorphic(r, &g)) {
            reps.push(g);
        }
    };
    fill_cubic(&mut adj, 0, &mut emit);
    reps
}

/// Completes the lowest unfinished vertex `v` with new neighbours above it,
/// chosen as an increasing set, so each labeled graph appears once.
fn fill_cubic(adj: &mut Vec<Vec<usize>>, v: usize, emit: &mut dyn FnMut(&[Vec<usize>])) {
    let n = adj.len();
    let Some(v) = (v..n).find(|&x| adj[x].len() < 3) else {
        emit(adj);
        return;
    };
    let need = 3 - adj[v].len();
    let candidates: Vec<usize> = (v + 1..n).filter(|&w| adj[w].len() < 3 && !adj[v].contains(&w)).collect();
    fn choose(
        adj: &mut Vec<Vec<usize>>,
        v: usize,
        candidates: &[usize],
        need: usize,
        emit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if need == 0 {
            fill_cubic(adj, v + 1, emit);
            return;
        }
        for (i, &w) in candidates.iter().enumerate() {
            if candidates.len() - i < need {
                break;
            }
            adj[v].push(w);
            adj[w].push(v);
            choose(adj, v, &candidates[i + 1..], need - 1, emit);
            adj[v].pop();
            adj[w].pop();
        }
    }
    choose(adj, v, &candidates, need, emit);
}
