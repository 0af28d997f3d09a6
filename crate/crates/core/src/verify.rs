//! Partitions, templates and the partition verifier.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::class::ClassSpec;
use crate::error::{invalid, Result};
use crate::graph::{is_ferrers, max_matching, Edge, Graph, Side, Vertex};
use crate::pattern::{find_with_masks, Pattern, PatternMasks};

/// One edge class of a partition, in host coordinates. Its vertex set is
/// the set of edge endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Template {
    edges: Vec<Edge>,
}

impl Template {
    /// Sorts the edges. Repeated edges are kept so that the verifier can
    /// report them.
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        Template { edges }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vertex, Vertex)>>(pairs: I) -> Result<Self> {
        let edges = pairs
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Template::new(edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints, ascending.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The template as a graph on its own endpoints, relabeled to
    /// `0..k`; the second component maps local labels to host labels.
    /// Repeated edges are collapsed.
    pub fn implied_graph(&self) -> (Graph, Vec<Vertex>) {
        let verts = self.vertices();
        let local = |x: Vertex| verts.binary_search(&x).expect("endpoint");
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (local(e.u()), local(e.v()))).collect();
        pairs.dedup();
        let g = Graph::from_edges(verts.len(), pairs).expect("distinct endpoints");
        (g, verts)
    }

    /// The template as a graph on `0..n` (host labels kept).
    pub fn host_graph(&self, n: usize) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.dedup();
        Graph::from_edge_list(n, &edges)
    }
}

/// Templates claimed to partition the edges of `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    host: Graph,
    templates: Vec<Template>,
}

impl Partition {
    pub fn new(host: Graph, templates: Vec<Template>) -> Self {
        Partition { host, templates }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn into_templates(self) -> Vec<Template> {
        self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    /// Restriction to the vertex subset `keep` (relabeled to
    /// `0..keep.len()` in the given order). Templates left without edges
    /// are dropped.
    pub fn restrict(&self, keep: &[Vertex]) -> Result<Partition> {
        let (host, _) = self.host.induced_subgraph(keep)?;
        let mut pos = vec![usize::MAX; self.host.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let templates = self
            .templates
            .iter()
            .map(|t| {
                let edges = t
                    .edges
                    .iter()
                    .filter(|e| pos[e.u()] != usize::MAX && pos[e.v()] != usize::MAX)
                    .map(|e| Edge::new_unchecked(pos[e.u()], pos[e.v()]))
                    .collect();
                Template::new(edges)
            })
            .filter(|t| !t.is_empty())
            .collect();
        Ok(Partition { host, templates })
    }

    /// Restriction to the first `n` vertices.
    pub fn restrict_to_prefix(&self, n: usize) -> Result<Partition> {
        let keep: Vec<Vertex> = (0..n).collect();
        self.restrict(&keep)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    ForeignEdge,
    Overlap,
    UncoveredEdge,
    EmptyTemplate,
    NotBipartite,
    InducedPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `None` for uncovered host edges.
    pub template: Option<usize>,
    pub kind: ViolationKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<Pattern>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub vertices: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Checks that `p` is a `spec`-avoiding bipartite partition of its host.
///
/// All problems are collected, grouped by kind in the order foreign
/// edges, overlaps, uncovered edges, empty templates, odd cycles, induced
/// patterns. Pattern checks run on each template's own vertex set and are
/// skipped for templates that are not bipartite.
pub fn verify_partition(p: &Partition, spec: &ClassSpec) -> VerifyReport {
    let host = &p.host;
    let mut violations = Vec::new();
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    let mut overlaps = Vec::new();

    for (i, t) in p.templates.iter().enumerate() {
        for &e in &t.edges {
            if !host.contains_edge(&e) {
                violations.push(Violation {
                    template: Some(i),
                    kind: ViolationKind::ForeignEdge,
                    pattern: None,
                    vertices: Vec::new(),
                    edges: vec![e],
                });
                continue;
            }
            if let Some(&first) = owner.get(&e) {
                overlaps.push(Violation {
                    template: Some(i),
                    kind: ViolationKind::Overlap,
                    pattern: None,
                    vertices: vec![first],
                    edges: vec![e],
                });
            } else {
                owner.insert(e, i);
            }
        }
    }
    violations.extend(overlaps);

    for &e in host.edges() {
        if !owner.contains_key(&e) {
            violations.push(Violation {
                template: None,
                kind: ViolationKind::UncoveredEdge,
                pattern: None,
                vertices: Vec::new(),
                edges: vec![e],
            });
        }
    }

    for (i, t) in p.templates.iter().enumerate() {
        if t.is_empty() {
            violations.push(Violation {
                template: Some(i),
                kind: ViolationKind::EmptyTemplate,
                pattern: None,
                vertices: Vec::new(),
                edges: Vec::new(),
            });
        }
    }

    let masks: Vec<(Pattern, PatternMasks)> = spec
        .forbidden()
        .iter()
        .map(|pat| (pat.clone(), PatternMasks::new(&pat.graph())))
        .collect();
    let mut pattern_hits = Vec::new();
    for (i, t) in p.templates.iter().enumerate() {
        if t.is_empty() {
            continue;
        }
        let (g, labels) = t.implied_graph();
        if let Some(cycle) = g.odd_cycle() {
            violations.push(Violation {
                template: Some(i),
                kind: ViolationKind::NotBipartite,
                pattern: None,
                vertices: cycle.iter().map(|&x| labels[x]).collect(),
                edges: Vec::new(),
            });
            continue;
        }
        for (pat, m) in &masks {
            if let Some(s) = find_with_masks(&g, m) {
                pattern_hits.push(Violation {
                    template: Some(i),
                    kind: ViolationKind::InducedPattern,
                    pattern: Some(pat.clone()),
                    vertices: s.iter().map(|&x| labels[x]).collect(),
                    edges: Vec::new(),
                });
            }
        }
    }
    violations.extend(pattern_hits);

    VerifyReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Structural label of a template, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TemplateShape {
    SingleEdge,
    Cherry,
    Matching,
    Star,
    CherryOrchard,
    StarOrchard,
    DoubleStar,
    Path,
    Cycle,
    CompleteBipartite,
    C4Orchard,
    CompleteBipartiteOrchard,
    Ferrers,
    Bipartite,
    NonBipartite,
}

/// Classifies a template by direct structural tests. Labels are tried in
/// the declaration order of [`TemplateShape`]; bipartiteness is decided
/// first so that odd cycles are reported as `NonBipartite`.
pub fn classify_template(t: &Template) -> Result<TemplateShape> {
    if t.is_empty() {
        return Err(invalid("cannot classify an empty template"));
    }
    let (g, _) = t.implied_graph();
    let Some(sides) = g.is_bipartite() else {
        return Ok(TemplateShape::NonBipartite);
    };
    let e = g.edge_count();
    let v = g.n();
    let comps = components_of(&g);
    let connected = comps.len() == 1;
    let max_deg = g.max_degree();

    if e == 1 {
        return Ok(TemplateShape::SingleEdge);
    }
    if connected && e == 2 {
        return Ok(TemplateShape::Cherry);
    }
    if max_deg == 1 {
        return Ok(TemplateShape::Matching);
    }
    if connected && max_deg == e {
        return Ok(TemplateShape::Star);
    }
    if comps.iter().all(|c| c.edges <= 2) {
        return Ok(TemplateShape::CherryOrchard);
    }
    if comps.iter().all(|c| c.edges + 1 == c.vertices.len() && c.max_degree == c.edges) {
        return Ok(TemplateShape::StarOrchard);
    }
    if connected && e + 1 == v {
        // A tree of diameter <= 3: every edge touches a vertex that is
        // adjacent to all non-leaves.
        let inner: Vec<Vertex> = (0..v).filter(|&x| g.degree(x) > 1).collect();
        if inner.len() <= 2 && inner.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return Ok(TemplateShape::DoubleStar);
        }
        if max_deg <= 2 {
            return Ok(TemplateShape::Path);
        }
    }
    if connected && (0..v).all(|x| g.degree(x) == 2) {
        return Ok(TemplateShape::Cycle);
    }
    let complete_bip = |c: &Component| {
        let a = c.vertices.iter().filter(|&&x| sides.side_of(x) == Some(Side::A)).count();
        a * (c.vertices.len() - a) == c.edges
    };
    if connected && complete_bip(&comps[0]) {
        return Ok(TemplateShape::CompleteBipartite);
    }
    if comps
        .iter()
        .all(|c| c.vertices.len() == 4 && c.edges == 4 && c.max_degree == 2)
    {
        return Ok(TemplateShape::C4Orchard);
    }
    if comps.iter().all(complete_bip) {
        return Ok(TemplateShape::CompleteBipartiteOrchard);
    }
    if is_ferrers(&g).is_some() {
        return Ok(TemplateShape::Ferrers);
    }
    Ok(TemplateShape::Bipartite)
}

struct Component {
    vertices: Vec<Vertex>,
    edges: usize,
    max_degree: usize,
}

fn components_of(g: &Graph) -> Vec<Component> {
    let label = g.components();
    let mut by_label: HashMap<usize, Component> = HashMap::new();
    for x in 0..g.n() {
        let c = by_label.entry(label[x]).or_insert(Component {
            vertices: Vec::new(),
            edges: 0,
            max_degree: 0,
        });
        c.vertices.push(x);
        c.max_degree = c.max_degree.max(g.degree(x));
    }
    for e in g.edges() {
        by_label.get_mut(&label[e.u()]).unwrap().edges += 1;
    }
    let mut out: Vec<Component> = by_label.into_values().collect();
    out.sort_by_key(|c| c.vertices[0]);
    out
}

/// Per-vertex side vectors across all templates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVectors {
    /// `vectors[v][i]` is 0 when `v` is on side A of template `i` (or not
    /// in it), 1 when on side B.
    pub vectors: Vec<Vec<u8>>,
    /// All vectors pairwise distinct.
    pub distinct: bool,
    /// Lowest pair of vertices sharing a vector, when not distinct.
    pub collision: Option<(Vertex, Vertex)>,
}

/// Class-vectors of all host vertices, using the canonical bipartition of
/// every template.
pub fn class_vectors(p: &Partition) -> Result<ClassVectors> {
    let n = p.host.n();
    let mut vectors = vec![vec![0u8; p.templates.len()]; n];
    for (i, t) in p.templates.iter().enumerate() {
        let g = t.host_graph(n)?;
        let w = g
            .is_bipartite()
            .ok_or_else(|| invalid(format!("template {i} is not bipartite")))?;
        for (v, vec) in vectors.iter_mut().enumerate() {
            if w.side_of(v) == Some(Side::B) {
                vec[i] = 1;
            }
        }
    }
    let mut seen: HashMap<&[u8], Vertex> = HashMap::new();
    let mut collision = None;
    for (v, vec) in vectors.iter().enumerate() {
        if let Some(&u) = seen.get(vec.as_slice()) {
            collision = Some((u, v));
            break;
        }
        seen.insert(vec, v);
    }
    Ok(ClassVectors {
        distinct: collision.is_none(),
        collision,
        vectors,
    })
}

/// Number of templates whose maximum matching has at least `m` edges.
pub fn count_large_templates(p: &Partition, m: usize) -> usize {
    p.templates
        .iter()
        .filter(|t| !t.is_empty())
        .filter(|t| max_matching(&t.implied_graph().0).len() >= m)
        .count()
}
