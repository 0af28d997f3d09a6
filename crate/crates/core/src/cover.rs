//! Random covers of `K_n` by copies of a projective-plane incidence graph.
//!
//! Each throw places the host's vertices injectively onto the `2N`
//! vertices of the point-line graph of `PG(2, q)`; a host edge is covered
//! when its endpoints land on an incident point-line pair. The image of a
//! throw is an induced subgraph of the incidence graph, so it is
//! bipartite and C4-free, and so is every part kept after the surplus
//! is removed.

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, unsupported, Error, Result};
use crate::graph::{complete_graph, Edge, Graph};
use crate::verify::{Partition, Template};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    q: usize,
    /// Normalized homogeneous coordinates; the first non-zero entry is 1.
    points: Vec<[usize; 3]>,
    /// Point indices on each line, ascending.
    lines: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn q(&self) -> usize {
        self.q
    }

    /// `q^2 + q + 1`.
    pub fn order_count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[[usize; 3]] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            out.push([1, a, b]);
        }
    }
    for b in 0..q {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

/// `PG(2, q)` over the integers mod a prime `q`.
pub fn projective_plane(q: usize) -> Result<ProjectivePlane> {
    if !is_prime(q) {
        return Err(unsupported(format!("plane order must be prime, got {q}")));
    }
    let points = normalized_triples(q);
    let lines = points
        .iter()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(ProjectivePlane { q, points, lines })
}

/// Point-line graph: points are `0..N`, lines `N..2N`.
pub fn incidence_graph(p: &ProjectivePlane) -> Graph {
    let n = p.points.len();
    let pairs = p
        .lines
        .iter()
        .enumerate()
        .flat_map(|(l, pts)| pts.iter().map(move |&x| (x, n + l)));
    Graph::from_edges(2 * n, pairs).expect("incidences are distinct")
}

/// One cover attempt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRun {
    pub n: usize,
    pub q: usize,
    pub k_max: usize,
    pub seed: u64,
    /// PRNG stream used for this run.
    pub stream: u64,
    pub covered: bool,
    pub throws_used: usize,
    /// Throws covering each host edge, edges in lexicographic order.
    pub per_edge_cover_counts: Vec<u32>,
    /// Earliest throw covering each host edge.
    #[serde(skip)]
    first_throw: Vec<Option<usize>>,
}

impl CoverRun {
    pub fn first_throw(&self) -> &[Option<usize>] {
        &self.first_throw
    }
}

struct Thrower {
    slots: usize,
    incident: Vec<Vec<bool>>,
    plane_edges: Vec<(usize, usize)>,
}

impl Thrower {
    fn new(n: usize, q: usize) -> Result<Self> {
        let plane = projective_plane(q)?;
        let g = incidence_graph(&plane);
        if n < 2 || g.n() < n {
            return Err(invalid(format!(
                "host K_{n} needs 2 <= n <= {} for q = {q}",
                g.n()
            )));
        }
        let mut incident = vec![vec![false; g.n()]; g.n()];
        for e in g.edges() {
            incident[e.u()][e.v()] = true;
            incident[e.v()][e.u()] = true;
        }
        Ok(Thrower {
            slots: g.n(),
            incident,
            plane_edges: g.edges().iter().map(|e| e.endpoints()).collect(),
        })
    }

    /// Host edges covered by one uniformly random injection, as pair
    /// indices in lexicographic order.
    fn throw(&self, n: usize, rng: &mut ChaCha8Rng, out: &mut Vec<usize>) {
        out.clear();
        let image = sample(rng, self.slots, n).into_vec();
        let mut preimage = vec![usize::MAX; self.slots];
        for (host, &slot) in image.iter().enumerate() {
            preimage[slot] = host;
        }
        for &(x, y) in &self.plane_edges {
            let (a, b) = (preimage[x], preimage[y]);
            if a != usize::MAX && b != usize::MAX {
                out.push(pair_index(n, a.min(b), a.max(b)));
            }
        }
    }
}

/// Position of `(a, b)`, `a < b`, among the pairs of `0..n` in
/// lexicographic order.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Throws the incidence graph of `PG(2, q)` onto `K_n` until every edge
/// is covered or `k_max` throws are used.
pub fn random_c4_cover(n: usize, q: usize, k_max: usize, seed: u64) -> Result<CoverRun> {
    random_c4_cover_stream(n, q, k_max, seed, 0)
}

/// [`random_c4_cover`] on an explicit PRNG stream; independent runs with
/// a shared seed use their run index as the stream.
pub fn random_c4_cover_stream(n: usize, q: usize, k_max: usize, seed: u64, stream: u64) -> Result<CoverRun> {
    let thrower = Thrower::new(n, q)?;
    Ok(run_cover(&thrower, n, q, k_max, seed, stream))
}

fn run_cover(thrower: &Thrower, n: usize, q: usize, k_max: usize, seed: u64, stream: u64) -> CoverRun {
    let pairs = n * (n - 1) / 2;
    let mut rng = rng_for(seed, stream);
    let mut counts = vec![0u32; pairs];
    let mut first = vec![None; pairs];
    let mut missing = pairs;
    let mut hit = Vec::new();
    let mut throws = 0;
    while throws < k_max && missing > 0 {
        thrower.throw(n, &mut rng, &mut hit);
        for &i in &hit {
            counts[i] += 1;
            if first[i].is_none() {
                first[i] = Some(throws);
                missing -= 1;
            }
        }
        throws += 1;
    }
    CoverRun {
        n,
        q,
        k_max,
        seed,
        stream,
        covered: missing == 0,
        throws_used: throws,
        per_edge_cover_counts: counts,
        first_throw: first,
    }
}

/// `runs` independent covers, run `i` on stream `i`, computed in parallel.
pub fn cover_runs(n: usize, q: usize, k_max: usize, seed: u64, runs: usize) -> Result<Vec<CoverRun>> {
    let thrower = Thrower::new(n, q)?;
    Ok((0..runs as u64)
        .into_par_iter()
        .map(|stream| run_cover(&thrower, n, q, k_max, seed, stream))
        .collect())
}

/// Keeps every edge in the earliest throw covering it and drops throws
/// left empty.
pub fn cover_to_partition(run: &CoverRun) -> Result<Partition> {
    if !run.covered {
        return Err(Error::InvalidState(format!(
            "run did not cover K_{} within {} throws",
            run.n, run.k_max
        )));
    }
    let host = complete_graph(run.n)?;
    let mut parts: Vec<Vec<Edge>> = vec![Vec::new(); run.throws_used];
    for (e, first) in host.edges().iter().zip(&run.first_throw) {
        let t = first.ok_or_else(|| Error::InternalInconsistency(format!("edge {e} marked uncovered")))?;
        parts[t].push(*e);
    }
    let templates = parts
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(Template::new)
        .collect();
    Ok(Partition::new(host, templates))
}

/// Fraction of `trials` random throws covering the host edge `(0, 1)`.
pub fn estimate_cover_probability(n: usize, q: usize, trials: u64, seed: u64) -> Result<Ratio<u64>> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let thrower = Thrower::new(n, q)?;
    let mut rng = rng_for(seed, 0);
    let mut hits = 0u64;
    for _ in 0..trials {
        let image = sample(&mut rng, thrower.slots, n);
        if thrower.incident[image.index(0)][image.index(1)] {
            hits += 1;
        }
    }
    Ok(Ratio::new(hits, trials))
}

/// Exact per-edge cover probability of one throw: incidences over pairs
/// of plane vertices.
pub fn exact_cover_probability(q: usize) -> Result<Ratio<u64>> {
    let plane = projective_plane(q)?;
    let n = plane.order_count() as u64;
    let slots = 2 * n;
    Ok(Ratio::new(n * (q as u64 + 1), slots * (slots - 1) / 2))
}

/// Host edges covered by a single throw on stream 0.
pub fn throw_once(n: usize, q: usize, seed: u64) -> Result<Vec<Edge>> {
    let thrower = Thrower::new(n, q)?;
    let mut rng = rng_for(seed, 0);
    let mut hit = Vec::new();
    thrower.throw(n, &mut rng, &mut hit);
    let host = complete_graph(n)?;
    let mut edges: Vec<Edge> = hit.into_iter().map(|i| host.edges()[i]).collect();
    edges.sort();
    Ok(edges)
}
