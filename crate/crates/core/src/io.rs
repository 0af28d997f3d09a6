//! Text formats: edge lists, partition JSON and DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::verify::{Partition, Template};

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Parses the edge-list format: `#` comment lines, a header `n m`, then
/// `m` lines `u v` with `0 <= u < v < n`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let nums = parse_numbers(hline, header)?;
    let [n, m] = nums[..] else {
        return Err(parse_err(hline, "header must be `n m`"));
    };
    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (lineno, line) in lines {
        let nums = parse_numbers(lineno, line)?;
        let [u, v] = nums[..] else {
            return Err(parse_err(lineno, "edge line must be `u v`"));
        };
        if u >= v || v >= n {
            return Err(parse_err(lineno, format!("edge {u} {v} violates 0 <= u < v < {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", pairs.len())));
    }
    Graph::from_edges(n, pairs)
}

fn parse_numbers(lineno: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("not a vertex number: {t}"))))
        .collect()
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

#[derive(Serialize, Deserialize)]
struct HostJson {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct TemplateJson {
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    host: HostJson,
    forbidden: ClassSpec,
    templates: Vec<TemplateJson>,
}

/// Partition JSON; edges are emitted sorted.
pub fn partition_to_json(p: &Partition, spec: &ClassSpec) -> String {
    serde_json::to_string_pretty(&partition_value(p, spec)).expect("serializable") + "\n"
}

/// The partition JSON object, for embedding in larger documents.
pub fn partition_value(p: &Partition, spec: &ClassSpec) -> serde_json::Value {
    let doc = PartitionJson {
        host: HostJson {
            n: p.host().n(),
            edges: p.host().edges().to_vec(),
        },
        forbidden: spec.clone(),
        templates: p
            .templates()
            .iter()
            .map(|t| TemplateJson {
                edges: t.edges().to_vec(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Reads partition JSON. Unsorted edges are accepted.
pub fn partition_from_json(text: &str) -> Result<(Partition, ClassSpec)> {
    let doc: PartitionJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let host = Graph::from_edge_list(doc.host.n, &doc.host.edges)?;
    let templates = doc.templates.into_iter().map(|t| Template::new(t.edges)).collect();
    Ok((Partition::new(host, templates), doc.forbidden))
}

/// Edge list of the host with one `# template i` comment before each
/// template's edges.
pub fn partition_to_edge_list(p: &Partition) -> String {
    let mut out = format!("{} {}\n", p.host().n(), p.host().edge_count());
    for (i, t) in p.templates().iter().enumerate() {
        let _ = writeln!(out, "# template {i}");
        for e in t.edges() {
            let _ = writeln!(out, "{} {}", e.u(), e.v());
        }
    }
    out
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#000000", "#aec7e8",
];

/// DOT drawing with edges colored by template index.
pub fn partition_to_dot(p: &Partition) -> String {
    let mut out = String::from("graph partition {\n  node [shape=circle];\n");
    for v in 0..p.host().n() {
        let _ = writeln!(out, "  {v};");
    }
    for (i, t) in p.templates().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for e in t.edges() {
            let _ = writeln!(out, "  {} -- {} [color=\"{color}\", label=\"{i}\"];", e.u(), e.v());
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_ferrers;
    use crate::graph::complete_graph;

    #[test]
    fn edge_list_round_trip() {
        let g = complete_graph(5).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let commented = format!("# K5\n\n{text}");
        assert_eq!(parse_edge_list(&commented).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        for bad in ["", "3", "3 1\n1 0\n", "3 2\n0 1\n0 1\n", "3 1\n0 3\n", "3 2\n0 1\n", "3 1\n0 x\n"] {
            assert!(matches!(parse_edge_list(bad), Err(Error::Parse(_)) | Err(Error::InvalidArgument(_))), "{bad:?}");
        }
    }

    #[test]
    fn partition_json_round_trip() {
        let p = build_ferrers(9).unwrap();
        let spec: ClassSpec = "2K2".parse().unwrap();
        let text = partition_to_json(&p, &spec);
        let (q, s) = partition_from_json(&text).unwrap();
        assert_eq!(q, p);
        assert_eq!(s, spec);
        assert_eq!(partition_to_json(&q, &s), text);
    }

    #[test]
    fn partition_json_accepts_unsorted() {
        let text = r#"{"host":{"n":3,"edges":[[1,2],[0,1],[2,0]]},"forbidden":["P3"],
            "templates":[{"edges":[[2,1]]},{"edges":[[1,0],[0,2]]}]}"#;
        let (p, s) = partition_from_json(text).unwrap();
        assert_eq!(p.host().edge_count(), 3);
        assert_eq!(p.templates()[1].edges(), &[Edge::new(0, 1).unwrap(), Edge::new(0, 2).unwrap()]);
        assert_eq!(s.name(), "P3");
    }

    #[test]
    fn dot_lists_every_edge() {
        let p = build_ferrers(4).unwrap();
        let dot = partition_to_dot(&p);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.starts_with("graph partition {"));
    }
}
