mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_graphs, bipartite_oracle, graph_from_mask, pairs, random_vector_partition};
use edgepart::construct::{build_cherries, build_cherry_orchards, build_ferrers, construct};
use edgepart::graph::is_ferrers;
use edgepart::verify::{class_vectors, classify_template, TemplateShape};
use edgepart::{complete_graph, verify_partition, ClassSpec, Edge, Graph, Partition, Template};

/// Disjoint, covering, only host edges, every template bipartite. Small
/// hosts check bipartiteness by brute force.
fn plain_partition_oracle(p: &Partition) -> bool {
    let host: HashSet<Edge> = p.host().edges().iter().copied().collect();
    let mut seen = HashSet::new();
    for t in p.templates() {
        if t.is_empty() {
            return false;
        }
        for e in t.edges() {
            if !host.contains(e) || !seen.insert(*e) {
                return false;
            }
        }
        let g = t.host_graph(p.host().n()).unwrap();
        let bipartite = if g.n() <= 12 { bipartite_oracle(&g) } else { g.is_bipartite().is_some() };
        if !bipartite {
            return false;
        }
    }
    seen.len() == host.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn unrestricted_verifier_matches_oracle(mask in 0u64..1 << 15, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = graph_from_mask(6, mask);
        let slots = rng.gen_range(1..=4);
        let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); slots];
        for e in host.edges() {
            match rng.gen_range(0..20) {
                0 => {}
                1 => {
                    classes[0].push(*e);
                    classes[slots - 1].push(*e);
                }
                _ => classes[rng.gen_range(0..slots)].push(*e),
            }
        }
        if rng.gen_bool(0.1) {
            let (u, v) = pairs(6)[rng.gen_range(0..15)];
            classes[0].push(Edge::new(u, v).unwrap());
        }
        let templates: Vec<Template> = classes
            .into_iter()
            .map(|mut c| { c.sort(); c.dedup(); Template::new(c) })
            .collect();
        let p = Partition::new(host, templates);
        let report = verify_partition(&p, &ClassSpec::unrestricted());
        prop_assert_eq!(report.valid, plain_partition_oracle(&p), "{:?}", report);
    }

    #[test]
    fn class_vectors_separate_template_edges(k in 2usize..=5, extra in 0usize..=2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=1 << k);
        let p = random_vector_partition(&mut rng, n, k + extra);
        prop_assert!(verify_partition(&p, &ClassSpec::unrestricted()).valid);
        let cv = class_vectors(&p).unwrap();
        prop_assert!(cv.distinct);
        for (i, t) in p.templates().iter().enumerate() {
            for e in t.edges() {
                prop_assert_ne!(cv.vectors[e.u()][i], cv.vectors[e.v()][i]);
            }
        }
    }

    #[test]
    fn restriction_keeps_validity(class in 0usize..19, n in 3usize..=30, seed in any::<u64>()) {
        let spec = ClassSpec::registry()[class].clone();
        let Ok(p) = construct(&spec, n) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut keep: Vec<usize> = (0..n).collect();
        keep.shuffle(&mut rng);
        keep.truncate(rng.gen_range(2..n));
        keep.sort_unstable();
        let r = p.restrict(&keep).unwrap();
        prop_assert!(verify_partition(&r, &spec).valid, "{} n={} keep={:?}", spec, n, keep);
        prop_assert!(r.len() <= p.len());
    }

    #[test]
    fn cherries_on_random_connected_graphs(n in 7usize..=8, mask in any::<u64>()) {
        let count = pairs(n).len();
        let g = graph_from_mask(n, mask & ((1u64 << count) - 1));
        prop_assume!(g.edge_count() > 0 && g.edges_connected());
        check_cherries(&g);
    }
}

fn check_cherries(g: &Graph) {
    let p = build_cherries(g).unwrap();
    let spec: ClassSpec = "2K2-C4-P4-S4".parse().unwrap();
    assert!(verify_partition(&p, &spec).valid, "{:?}", g.edges());
    assert_eq!(p.len(), g.edge_count().div_ceil(2), "{:?}", g.edges());
    for t in p.templates() {
        let shape = classify_template(t).unwrap();
        assert!(matches!(shape, TemplateShape::Cherry | TemplateShape::SingleEdge));
    }
    if g.edge_count() % 2 == 0 {
        assert!(p.templates().iter().all(|t| t.len() == 2));
    }
}

#[test]
fn cherries_on_small_connected_graphs() {
    for n in 2..=6 {
        for g in all_graphs(n) {
            if g.edge_count() > 0 && g.edges_connected() {
                check_cherries(&g);
            }
        }
    }
}

#[test]
fn restriction_drops_one_vertex_at_a_time() {
    for spec in ClassSpec::registry() {
        for n in [5usize, 8, 9, 12] {
            let Ok(p) = construct(&spec, n) else { continue };
            for drop in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&v| v != drop).collect();
                let r = p.restrict(&keep).unwrap();
                assert!(verify_partition(&r, &spec).valid, "{spec} n={n} drop={drop}");
            }
        }
    }
}

#[test]
fn ferrers_templates_are_nested() {
    for n in 2..=64 {
        let p = build_ferrers(n).unwrap();
        let total: usize = p.templates().iter().map(Template::len).sum();
        assert_eq!(total, n * (n - 1) / 2);
        for t in p.templates() {
            let (g, _) = t.implied_graph();
            let order = is_ferrers(&g).unwrap_or_else(|| panic!("n={n}: template is not Ferrers"));
            for w in order.windows(2) {
                assert!(g.neighbors(w[0]).iter().all(|x| g.neighbors(w[1]).contains(x)));
            }
        }
    }
}

#[test]
fn cherry_orchard_counts_and_shapes() {
    let spec: ClassSpec = "C4-P4-S4".parse().unwrap();
    for n in [9usize, 27, 81, 243] {
        let p = build_cherry_orchards(n).unwrap();
        let bound = (3.0 * n as f64 / 4.0 + 2.0 * (n as f64).ln() / 3f64.ln()).ceil() as usize;
        assert!(p.len() <= bound, "n={n}: {} > {bound}", p.len());
        assert!(verify_partition(&p, &spec).valid, "n={n}");
        for t in p.templates() {
            let shape = classify_template(t).unwrap();
            assert!(
                matches!(
                    shape,
                    TemplateShape::SingleEdge | TemplateShape::Cherry | TemplateShape::Matching | TemplateShape::CherryOrchard
                ),
                "n={n}: {shape:?}"
            );
        }
    }
}

#[test]
fn constructions_cover_exactly_once() {
    for spec in ClassSpec::registry() {
        for n in 2..=40 {
            let Ok(p) = construct(&spec, n) else { continue };
            let host = complete_graph(n).unwrap();
            assert_eq!(p.host(), &host);
            assert!(plain_partition_oracle(&p), "{spec} n={n}");
        }
    }
}
