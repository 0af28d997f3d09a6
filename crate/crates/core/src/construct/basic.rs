use super::{edge, kn_partition, require_at_least};
use crate::error::Result;
use crate::graph::Edge;
use crate::verify::Partition;

/// Circle-method 1-factorization. For even `m` returns `m - 1` perfect
/// matchings of `K_m`; for odd `m`, `m` near-perfect matchings (the
/// dummy vertex of `K_{m+1}` is dropped).
pub fn round_robin(m: usize) -> Vec<Vec<(usize, usize)>> {
    if m < 2 {
        return Vec::new();
    }
    let even = if m % 2 == 0 { m } else { m + 1 };
    let fixed = even - 1;
    let modulus = even - 1;
    (0..modulus)
        .map(|r| {
            let mut round = Vec::with_capacity(even / 2);
            round.push((r, fixed));
            for i in 1..even / 2 {
                let a = (r + i) % modulus;
                let b = (r + modulus - i) % modulus;
                round.push((a, b));
            }
            round.retain(|&(a, b)| a < m && b < m);
            round
        })
        .collect()
}

/// Proper edge coloring of `K_n`: `n - 1` matchings for even `n`, `n`
/// for odd `n`.
pub fn build_matchings(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "matching partition")?;
    let classes = round_robin(n)
        .into_iter()
        .map(|round| round.into_iter().map(|(a, b)| edge(a, b)).collect())
        .collect();
    kn_partition(n, classes)
}

/// One template per edge.
pub fn build_single_edges(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "single-edge partition")?;
    let classes = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| vec![edge(u, v)]))
        .collect();
    kn_partition(n, classes)
}

/// `n - 1` stars: template `i` joins `i` to every `j > i`.
pub fn build_gp_stars(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "star partition")?;
    let classes = (0..n - 1)
        .map(|i| (i + 1..n).map(|j| edge(i, j)).collect())
        .collect();
    kn_partition(n, classes)
}

/// `ceil(log2 n)` unions of complete bipartite graphs: `u` and `v` share
/// template `k` when bit `k` is the most significant bit where they
/// differ.
pub fn build_cbip_orchards(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "complete-bipartite orchard partition")?;
    let levels = crate::bounds::log_lower(n);
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); levels];
    for u in 0..n {
        for v in u + 1..n {
            let k = (usize::BITS - 1 - (u ^ v).leading_zeros()) as usize;
            classes[k].push(edge(u, v));
        }
    }
    kn_partition(n, classes)
}
