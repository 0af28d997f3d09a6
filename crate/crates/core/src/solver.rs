//! Exact minimum number of templates on small hosts.
//!
//! Edges are assigned in lexicographic order to classes `0..k`; edge `t`
//! may only open the class right after the highest one used so far.
//! A class is dropped as soon as it gets an odd cycle. Induced patterns
//! are checked on complete assignments, and optionally earlier by the
//! repairability prune: a vertex set `S` inside a class whose induced
//! subgraph is bad can only be fixed by adding edges of `S` that are
//! still unassigned, so when no choice of those gives a good subgraph,
//! the branch is dead.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{edge_count_lower, log_lower};
use crate::class::ClassSpec;
use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::pattern::{contains_induced, Pattern};
use crate::verify::{verify_partition, Partition, Template};

/// Largest host accepted by the search (vertex sets are `u64` masks).
pub const MAX_SOLVER_VERTICES: usize = 64;
/// Largest host accepted by [`brute_force_oracle`].
pub const MAX_ORACLE_EDGES: usize = 10;
/// Pattern sizes handled by lookup tables; bigger patterns are checked on
/// complete assignments only.
const MAX_TABLE_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            time_limit: Some(limit),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub pruned_bipartite: u64,
    pub pruned_pattern: u64,
    /// Wall time; not serialized so that outputs stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_explored += other.nodes_explored;
        self.pruned_bipartite += other.pruned_bipartite;
        self.pruned_pattern += other.pruned_pattern;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Found(Partition),
    Infeasible,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub chi: usize,
    pub witness: Partition,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub enum ChiOutcome {
    Solved(SolveResult),
    /// Every `k` below `proven_lower` was ruled out before the budget ran
    /// out.
    BudgetExhausted { proven_lower: usize, stats: SearchStats },
}

impl ChiOutcome {
    pub fn solved(self) -> Option<SolveResult> {
        match self {
            ChiOutcome::Solved(r) => Some(r),
            ChiOutcome::BudgetExhausted { .. } => None,
        }
    }
}

/// Search configuration. The defaults are an unlimited budget, no
/// repairability prune and a serial search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Solver {
    pub budget: SearchBudget,
    pub repair_prune: bool,
    pub parallel: bool,
}

/// Whether `g` has a `spec`-avoiding bipartite partition into at most `k`
/// templates.
pub fn exists_partition(g: &Graph, spec: &ClassSpec, k: usize, budget: SearchBudget) -> Result<Feasibility> {
    let solver = Solver {
        budget,
        ..Solver::default()
    };
    Ok(solver.exists_partition(g, spec, k)?.0)
}

/// The minimum number of templates, with a witness.
pub fn chi_prime(g: &Graph, spec: &ClassSpec, budget: SearchBudget) -> Result<ChiOutcome> {
    Solver {
        budget,
        ..Solver::default()
    }
    .chi_prime(g, spec)
}

/// Starting point of the iterative deepening: `ceil(log2 omega)` and the
/// edge-counting bound when the class has a size table.
pub fn lower_bound(g: &Graph, spec: &ClassSpec) -> usize {
    let omega = clique_number(g);
    let mut lower = log_lower(omega.max(1)).max(1);
    if let Ok(counted) = edge_count_lower(g, spec) {
        lower = lower.max(counted);
    }
    lower
}

impl Solver {
    pub fn exists_partition(&self, g: &Graph, spec: &ClassSpec, k: usize) -> Result<(Feasibility, SearchStats)> {
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        check_host(g)?;
        let start = Instant::now();
        let tables = Tables::new(spec);
        let clock = Clock::new(self.budget, start);
        let (outcome, mut stats) = self.run(g, &tables, k, &clock);
        stats.elapsed = start.elapsed();
        let outcome = match outcome {
            Feasibility::Found(p) => Feasibility::Found(self.checked(p, spec)?),
            other => other,
        };
        Ok((outcome, stats))
    }

    pub fn chi_prime(&self, g: &Graph, spec: &ClassSpec) -> Result<ChiOutcome> {
        if g.edge_count() == 0 {
            return Err(invalid("host graph has no edges"));
        }
        check_host(g)?;
        let start = Instant::now();
        let tables = Tables::new(spec);
        let clock = Clock::new(self.budget, start);
        let mut stats = SearchStats::default();
        for k in lower_bound(g, spec)..=g.edge_count() {
            let (outcome, round) = self.run(g, &tables, k, &clock);
            stats.absorb(&round);
            stats.elapsed = start.elapsed();
            match outcome {
                Feasibility::Found(p) => {
                    return Ok(ChiOutcome::Solved(SolveResult {
                        chi: p.len(),
                        witness: self.checked(p, spec)?,
                        stats,
                    }))
                }
                Feasibility::Infeasible => {}
                Feasibility::BudgetExhausted => {
                    return Ok(ChiOutcome::BudgetExhausted {
                        proven_lower: k,
                        stats,
                    })
                }
            }
        }
        Err(Error::UnsupportedInput(format!(
            "no {spec}-avoiding bipartite partition exists for this host"
        )))
    }

    fn checked(&self, p: Partition, spec: &ClassSpec) -> Result<Partition> {
        let report = verify_partition(&p, spec);
        if !report.valid {
            return Err(Error::InternalInconsistency(format!(
                "solver witness rejected by the verifier: {:?}",
                report.violations.first()
            )));
        }
        Ok(p)
    }

    fn run(&self, g: &Graph, tables: &Tables, k: usize, clock: &Clock) -> (Feasibility, SearchStats) {
        let mut root = Search::new(g, tables, k, self.repair_prune, clock);
        if !self.parallel || g.edge_count() < 4 {
            let outcome = root.solve_from(0);
            return (outcome, root.stats);
        }

        // Split on the assignments of a short edge prefix and keep the
        // first branch, in search order, that does not come back empty.
        let mut prefixes = Vec::new();
        let depth = prefix_depth(g.edge_count(), k);
        root.collect_prefixes(0, depth, &mut prefixes);
        let total = Mutex::new(root.stats);
        let answer = prefixes
            .par_iter()
            .find_map_first(|prefix| {
                let mut s = Search::new(g, tables, k, self.repair_prune, clock);
                let outcome = if s.replay(prefix) {
                    s.solve_from(prefix.len())
                } else {
                    Feasibility::Infeasible
                };
                total.lock().expect("stats lock").absorb(&s.stats);
                match outcome {
                    Feasibility::Infeasible => None,
                    other => Some(other),
                }
            })
            .unwrap_or(Feasibility::Infeasible);
        let stats = total.into_inner().expect("stats lock");
        (answer, stats)
    }
}

fn prefix_depth(edges: usize, k: usize) -> usize {
    let target = 8 * rayon::current_num_threads().max(1);
    let mut depth = 0;
    let mut branches = 1usize;
    while depth < edges - 1 && branches < target {
        branches = branches.saturating_mul(k.min(depth + 1));
        depth += 1;
    }
    depth
}

fn check_host(g: &Graph) -> Result<()> {
    if g.n() > MAX_SOLVER_VERTICES {
        return Err(Error::UnsupportedInput(format!(
            "solver handles at most {MAX_SOLVER_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Clique number by branching on bitmask candidate sets.
fn clique_number(g: &Graph) -> usize {
    if g.n() > MAX_SOLVER_VERTICES {
        return if g.edge_count() > 0 { 2 } else { 1 };
    }
    let rows = bit_rows(g);
    fn grow(rows: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            grow(rows, size + 1, cand & rows[v], best);
        }
    }
    let mut best = 0;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    grow(&rows, 0, all, &mut best);
    best
}

fn bit_rows(g: &Graph) -> Vec<u64> {
    let mut rows = vec![0u64; g.n()];
    for e in g.edges() {
        rows[e.u()] |= 1 << e.v();
        rows[e.v()] |= 1 << e.u();
    }
    rows
}

/// Shared node counter and deadline.
struct Clock {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Option<Instant>,
    expired: AtomicBool,
}

impl Clock {
    fn new(budget: SearchBudget, start: Instant) -> Self {
        Clock {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.time_limit.map(|d| start + d),
            expired: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = used > self.max_nodes
            || (used % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d));
        if over {
            self.expired.store(true, Ordering::Relaxed);
        }
        !over
    }
}

/// Per-size lookup tables over the adjacency masks of ordered vertex
/// subsets (pair positions numbered lexicographically).
struct Tables {
    /// `good[s][mask]`: bipartite and free of every forbidden pattern.
    good: Vec<Vec<bool>>,
    /// `repairable[s][mask * pairs + free]`: some subset of `free` added
    /// to `mask` is good.
    repairable: Vec<Vec<bool>>,
    /// Sizes with a forbidden pattern of that many vertices.
    sizes: Vec<usize>,
    /// Patterns too large for the tables.
    large: Vec<Pattern>,
    /// `pos[s][i][j]`: bit of pair `(i, j)` in a size-`s` mask.
    pos: Vec<Vec<Vec<u32>>>,
}

impl Tables {
    fn new(spec: &ClassSpec) -> Self {
        let mut sizes: Vec<usize> = spec
            .forbidden()
            .iter()
            .map(Pattern::vertex_count)
            .filter(|&s| s <= MAX_TABLE_SIZE)
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        let large = spec
            .forbidden()
            .iter()
            .filter(|p| p.vertex_count() > MAX_TABLE_SIZE)
            .cloned()
            .collect();
        let mut good = Vec::new();
        let mut repairable = Vec::new();
        let mut pos = Vec::new();
        for s in 0..=MAX_TABLE_SIZE {
            let pairs = s * s.saturating_sub(1) / 2;
            let mut p = vec![vec![0u32; s]; s];
            let mut bit = 0;
            for i in 0..s {
                for j in i + 1..s {
                    p[i][j] = bit;
                    p[j][i] = bit;
                    bit += 1;
                }
            }
            pos.push(p);
            let count = 1usize << pairs;
            let g: Vec<bool> = (0..count)
                .map(|mask| {
                    let sub = mask_graph(s, mask as u64);
                    sub.is_bipartite().is_some()
                        && spec
                            .forbidden()
                            .iter()
                            .filter(|p| p.vertex_count() <= s)
                            .all(|p| contains_induced(&sub, p).is_none())
                })
                .collect();
            let mut r = vec![false; count * count];
            for mask in 0..count {
                for free in 0..count {
                    if mask & free != 0 {
                        continue;
                    }
                    let mut x = free;
                    loop {
                        if g[mask | x] {
                            r[mask * count + free] = true;
                            break;
                        }
                        if x == 0 {
                            break;
                        }
                        x = (x - 1) & free;
                    }
                }
            }
            good.push(g);
            repairable.push(r);
        }
        Tables {
            good,
            repairable,
            sizes,
            large,
            pos,
        }
    }
}

fn mask_graph(s: usize, mask: u64) -> Graph {
    let mut pairs = Vec::new();
    let mut bit = 0;
    for i in 0..s {
        for j in i + 1..s {
            if mask >> bit & 1 == 1 {
                pairs.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(s, pairs).expect("valid mask graph")
}

struct Search<'a> {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Edge index per vertex pair, `usize::MAX` for non-edges.
    index: Vec<usize>,
    host_rows: Vec<u64>,
    k: usize,
    tables: &'a Tables,
    repair_prune: bool,
    clock: &'a Clock,
    assign: Vec<usize>,
    /// `adj[c * n + v]`: neighbours of `v` in class `c`.
    adj: Vec<u64>,
    vset: Vec<u64>,
    opened: usize,
    stats: SearchStats,
    scratch: Vec<Vertex>,
}

enum Step {
    Ok,
    OddCycle,
    Pattern,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, tables: &'a Tables, k: usize, repair_prune: bool, clock: &'a Clock) -> Self {
        let n = g.n();
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
        let mut index = vec![usize::MAX; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            index[u * n + v] = i;
            index[v * n + u] = i;
        }
        Search {
            n,
            index,
            host_rows: bit_rows(g),
            assign: vec![usize::MAX; edges.len()],
            edges,
            k,
            tables,
            repair_prune,
            clock,
            adj: vec![0; k * n],
            vset: vec![0; k],
            opened: 0,
            stats: SearchStats::default(),
            scratch: Vec::with_capacity(MAX_TABLE_SIZE),
        }
    }

    fn solve_from(&mut self, t: usize) -> Feasibility {
        if t == self.edges.len() {
            return if self.leaf_ok() {
                Feasibility::Found(self.witness())
            } else {
                self.stats.pruned_pattern += 1;
                Feasibility::Infeasible
            };
        }
        let limit = self.k.min(self.opened + 1);
        for c in 0..limit {
            if !self.clock.tick() {
                return Feasibility::BudgetExhausted;
            }
            self.stats.nodes_explored += 1;
            let opened = self.opened;
            match self.push(t, c) {
                Step::Ok => {}
                Step::OddCycle => {
                    self.stats.pruned_bipartite += 1;
                    continue;
                }
                Step::Pattern => {
                    self.stats.pruned_pattern += 1;
                    self.pop(t, c, opened);
                    continue;
                }
            }
            match self.solve_from(t + 1) {
                Feasibility::Infeasible => self.pop(t, c, opened),
                other => return other,
            }
        }
        Feasibility::Infeasible
    }

    /// Every surviving assignment of the first `depth` edges, in search
    /// order.
    fn collect_prefixes(&mut self, t: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
        if t == depth {
            out.push(self.assign[..t].to_vec());
            return;
        }
        let limit = self.k.min(self.opened + 1);
        for c in 0..limit {
            self.stats.nodes_explored += 1;
            let opened = self.opened;
            match self.push(t, c) {
                Step::Ok => {
                    self.collect_prefixes(t + 1, depth, out);
                    self.pop(t, c, opened);
                }
                Step::OddCycle => self.stats.pruned_bipartite += 1,
                Step::Pattern => {
                    self.stats.pruned_pattern += 1;
                    self.pop(t, c, opened);
                }
            }
        }
    }

    fn replay(&mut self, prefix: &[usize]) -> bool {
        prefix
            .iter()
            .enumerate()
            .all(|(t, &c)| matches!(self.push(t, c), Step::Ok))
    }

    /// Assigns edge `t` to class `c`. On `OddCycle` nothing was changed;
    /// on `Pattern` the edge is placed and must be popped.
    fn push(&mut self, t: usize, c: usize) -> Step {
        let (u, v) = self.edges[t];
        if self.same_parity(c, u, v) {
            return Step::OddCycle;
        }
        let base = c * self.n;
        self.adj[base + u] |= 1 << v;
        self.adj[base + v] |= 1 << u;
        self.vset[c] |= (1 << u) | (1 << v);
        self.assign[t] = c;
        if c == self.opened {
            self.opened += 1;
        }
        if self.repair_prune && !self.repairable_after(t, c) {
            return Step::Pattern;
        }
        Step::Ok
    }

    fn pop(&mut self, t: usize, c: usize, opened: usize) {
        let (u, v) = self.edges[t];
        let base = c * self.n;
        self.adj[base + u] &= !(1 << v);
        self.adj[base + v] &= !(1 << u);
        if self.adj[base + u] == 0 {
            self.vset[c] &= !(1 << u);
        }
        if self.adj[base + v] == 0 {
            self.vset[c] &= !(1 << v);
        }
        self.assign[t] = usize::MAX;
        self.opened = opened;
    }

    /// True when `u` and `v` are joined in class `c` by an even walk, so
    /// that the edge `uv` would close an odd cycle.
    fn same_parity(&self, c: usize, u: Vertex, v: Vertex) -> bool {
        let base = c * self.n;
        let target = 1u64 << v;
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        let mut even = true;
        while frontier != 0 {
            if frontier & target != 0 {
                return even;
            }
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[base + w];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            even = !even;
        }
        false
    }

    fn class_mask(&self, c: usize, s: &[Vertex]) -> usize {
        let base = c * self.n;
        let pos = &self.tables.pos[s.len()];
        let mut mask = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if self.adj[base + s[i]] >> s[j] & 1 == 1 {
                    mask |= 1 << pos[i][j];
                }
            }
        }
        mask
    }

    /// Host pairs of `s` whose edge comes after `t`.
    fn free_mask(&self, t: usize, s: &[Vertex]) -> usize {
        let pos = &self.tables.pos[s.len()];
        let mut mask = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if self.host_rows[s[i]] >> s[j] & 1 == 1 && self.index[s[i] * self.n + s[j]] > t {
                    mask |= 1 << pos[i][j];
                }
            }
        }
        mask
    }

    /// Repairability after edge `t = uv` went to class `c`: subsets of
    /// `c` meeting `u` or `v` changed, and subsets of other classes
    /// containing both lost `uv` as a possible fix.
    fn repairable_after(&mut self, t: usize, c: usize) -> bool {
        let (u, v) = self.edges[t];
        let ends = (1u64 << u) | (1u64 << v);
        for cls in 0..self.opened {
            let (required, any) = if cls == c {
                (0, ends)
            } else if self.vset[cls] & ends == ends {
                (ends, 0)
            } else {
                continue;
            };
            for &s in &self.tables.sizes {
                if !self.subsets_repairable(cls, t, s, required, any) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks all `s`-subsets of class `cls` containing every vertex of
    /// `required` and at least one vertex of `any` (when non-zero).
    fn subsets_repairable(&mut self, cls: usize, t: usize, s: usize, required: u64, any: u64) -> bool {
        let pool = self.vset[cls];
        if (pool.count_ones() as usize) < s {
            return true;
        }
        let pairs = s * (s - 1) / 2;
        let width = 1usize << pairs;
        let mut chosen = std::mem::take(&mut self.scratch);
        chosen.clear();
        let ok = self.walk_subsets(pool, s, &mut chosen, 0, &mut |me: &Self, set: &[Vertex]| {
            let bits: u64 = set.iter().fold(0, |acc, &x| acc | 1 << x);
            if bits & required != required || (any != 0 && bits & any == 0) {
                return true;
            }
            let mask = me.class_mask(cls, set);
            if me.tables.good[s][mask] {
                return true;
            }
            let free = me.free_mask(t, set);
            me.tables.repairable[s][mask * width + free]
        });
        self.scratch = chosen;
        ok
    }

    fn walk_subsets(
        &self,
        pool: u64,
        s: usize,
        chosen: &mut Vec<Vertex>,
        from: usize,
        check: &mut dyn FnMut(&Self, &[Vertex]) -> bool,
    ) -> bool {
        if chosen.len() == s {
            return check(self, chosen);
        }
        let mut rest = pool & u64::MAX.checked_shl(from as u32).unwrap_or(0);
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (rest.count_ones() as usize) + 1 < s - chosen.len() {
                break;
            }
            chosen.push(x);
            let ok = self.walk_subsets(pool, s, chosen, x + 1, check);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn leaf_ok(&mut self) -> bool {
        for c in 0..self.opened {
            for &s in &self.tables.sizes {
                let mut chosen = Vec::with_capacity(s);
                let ok = self.walk_subsets(self.vset[c], s, &mut chosen, 0, &mut |me: &Self, set: &[Vertex]| {
                    me.tables.good[s][me.class_mask(c, set)]
                });
                if !ok {
                    return false;
                }
            }
            if !self.tables.large.is_empty() {
                let t = self.class_template(c);
                let (g, _) = t.implied_graph();
                if self.tables.large.iter().any(|p| contains_induced(&g, p).is_some()) {
                    return false;
                }
            }
        }
        true
    }

    fn class_template(&self, c: usize) -> Template {
        Template::new(
            self.edges
                .iter()
                .zip(&self.assign)
                .filter(|(_, &a)| a == c)
                .map(|(&(u, v), _)| Edge::new_unchecked(u, v))
                .collect(),
        )
    }

    fn witness(&self) -> Partition {
        let host = Graph::from_edges(self.n, self.edges.iter().copied()).expect("host edges");
        Partition::new(host, (0..self.opened).map(|c| self.class_template(c)).collect())
    }
}

/// Minimum number of templates by plain enumeration of all set
/// partitions of the edges (restricted growth strings), with template
/// validity taken from the verifier's primitives.
pub fn brute_force_oracle(g: &Graph, spec: &ClassSpec) -> Result<usize> {
    let e = g.edge_count();
    if e == 0 {
        return Err(invalid("host graph has no edges"));
    }
    if e > MAX_ORACLE_EDGES {
        return Err(Error::UnsupportedInput(format!(
            "oracle handles at most {MAX_ORACLE_EDGES} edges, got {e}"
        )));
    }
    let valid: Vec<bool> = (0..1usize << e)
        .map(|subset| {
            if subset == 0 {
                return true;
            }
            let t = Template::new(
                (0..e)
                    .filter(|i| subset >> i & 1 == 1)
                    .map(|i| g.edges()[i])
                    .collect(),
            );
            let (h, _) = t.implied_graph();
            h.is_bipartite().is_some() && spec.forbidden().iter().all(|p| contains_induced(&h, p).is_none())
        })
        .collect();

    fn enumerate(t: usize, e: usize, classes: &mut Vec<usize>, valid: &[bool], best: &mut usize) {
        if t == e {
            if classes.iter().all(|&m| valid[m]) {
                *best = (*best).min(classes.len());
            }
            return;
        }
        for c in 0..classes.len() {
            classes[c] |= 1 << t;
            enumerate(t + 1, e, classes, valid, best);
            classes[c] &= !(1 << t);
        }
        classes.push(1 << t);
        enumerate(t + 1, e, classes, valid, best);
        classes.pop();
    }

    let mut best = usize::MAX;
    enumerate(0, e, &mut Vec::with_capacity(e), &valid, &mut best);
    if best == usize::MAX {
        return Err(Error::UnsupportedInput(format!(
            "no {spec}-avoiding bipartite partition exists for this host"
        )));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    fn spec(s: &str) -> ClassSpec {
        s.parse().unwrap()
    }

    fn chi(g: &Graph, s: &str) -> usize {
        chi_prime(g, &spec(s), SearchBudget::unlimited())
            .unwrap()
            .solved()
            .unwrap()
            .chi
    }

    #[test]
    fn feasibility_examples() {
        let k3 = complete_graph(3).unwrap();
        let none = ClassSpec::unrestricted();
        assert_eq!(exists_partition(&k3, &none, 1, SearchBudget::unlimited()).unwrap(), Feasibility::Infeasible);
        assert!(matches!(
            exists_partition(&k3, &none, 2, SearchBudget::unlimited()).unwrap(),
            Feasibility::Found(_)
        ));
        let k6 = complete_graph(6).unwrap();
        assert!(matches!(
            exists_partition(&k6, &spec("2K2-C4"), 3, SearchBudget::unlimited()).unwrap(),
            Feasibility::Found(_)
        ));
        assert!(exists_partition(&k3, &none, 0, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&complete_graph(4).unwrap(), "2K2"), 2);
        assert_eq!(chi(&complete_graph(5).unwrap(), "K2+K1"), 4);
        assert_eq!(chi(&complete_graph(4).unwrap(), "P3"), 3);
        assert!(chi_prime(&Graph::empty(3), &spec("P3"), SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn oracle_examples() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(brute_force_oracle(&k4, &ClassSpec::unrestricted()).unwrap(), 2);
        assert_eq!(brute_force_oracle(&k4, &spec("K2+K1-P3")).unwrap(), 6);
        assert_eq!(brute_force_oracle(&path_graph(3).unwrap(), &spec("P3")).unwrap(), 2);
        assert!(matches!(
            brute_force_oracle(&complete_graph(5).unwrap().edge_subgraph(&[]).unwrap(), &spec("P3")),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            brute_force_oracle(&complete_graph(6).unwrap(), &spec("P3")),
            Err(Error::UnsupportedInput(_))
        ));
    }

    #[test]
    fn budget_is_reported() {
        let k6 = complete_graph(6).unwrap();
        let out = chi_prime(&k6, &spec("2K2-C4-P4-S4"), SearchBudget::nodes(3)).unwrap();
        assert!(matches!(out, ChiOutcome::BudgetExhausted { proven_lower: 8, .. }));
    }

    #[test]
    fn repair_prune_and_parallel_agree() {
        for n in 3..=5 {
            let g = complete_graph(n).unwrap();
            for s in ClassSpec::registry() {
                let plain = Solver::default().chi_prime(&g, &s).unwrap().solved().unwrap();
                let pruned = Solver {
                    repair_prune: true,
                    ..Solver::default()
                }
                .chi_prime(&g, &s)
                .unwrap()
                .solved()
                .unwrap();
                let parallel = Solver {
                    parallel: true,
                    ..Solver::default()
                }
                .chi_prime(&g, &s)
                .unwrap()
                .solved()
                .unwrap();
                assert_eq!(plain.chi, pruned.chi, "{s} n={n}");
                assert_eq!(plain.witness, pruned.witness, "{s} n={n}");
                assert_eq!(plain.witness, parallel.witness, "{s} n={n}");
            }
        }
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete_graph(5).unwrap()), 5);
        assert_eq!(clique_number(&path_graph(4).unwrap()), 2);
        assert_eq!(clique_number(&Graph::empty(3)), 1);
    }
}
