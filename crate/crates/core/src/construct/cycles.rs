use super::{edge, kn_partition, require_at_least, round_robin};
use crate::error::{unsupported, Result};
use crate::graph::{Edge, Vertex};
use crate::verify::Partition;

/// Walecki decomposition of `K_n`, `n` odd, into `(n - 1) / 2`
/// Hamiltonian cycles, each given as a closed vertex sequence (the first
/// vertex is not repeated).
///
/// Vertex `n - 1` is the hub; the zigzag `0, 1, -1, 2, -2, ..` over
/// `Z_{n-1}` is rotated once per cycle.
pub fn walecki_cycles(n: usize) -> Result<Vec<Vec<Vertex>>> {
    if n < 3 || n % 2 == 0 {
        return Err(unsupported(format!("Walecki decomposition needs odd n >= 3, got {n}")));
    }
    let m = n - 1;
    let hub = n - 1;
    let zigzag: Vec<usize> = (0..m)
        .map(|i| {
            if i % 2 == 1 {
                (i + 1) / 2
            } else {
                (m - i / 2) % m
            }
        })
        .collect();
    Ok((0..m / 2)
        .map(|r| {
            std::iter::once(hub)
                .chain(zigzag.iter().map(|&z| (z + r) % m))
                .collect()
        })
        .collect())
}

fn cycle_edges(cycle: &[Vertex]) -> Vec<Edge> {
    (0..cycle.len())
        .map(|i| edge(cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect()
}

/// Partition of `K_n` into bipartite templates of maximum degree 2.
///
/// Even `n`: the Walecki cycles of `K_{n+1}` lose their hub and become
/// `n / 2` Hamiltonian paths. Odd `n`: odd Hamiltonian cycles are not
/// bipartite, so the even construction for `n + 1` is restricted, giving
/// `(n + 1) / 2` templates made of paths.
pub fn build_hamiltonian(n: usize) -> Result<Partition> {
    require_at_least(n, 3, "Hamiltonian partition")?;
    if n % 2 == 1 {
        return build_hamiltonian(n + 1)?.restrict_to_prefix(n);
    }
    let classes = walecki_cycles(n + 1)?
        .iter()
        .map(|c| {
            cycle_edges(c)
                .into_iter()
                .filter(|e| e.v() < n)
                .collect()
        })
        .collect();
    kn_partition(n, classes)
}

/// `n(n-1)/6` copies of `P4`, cut from the Walecki cycles of `K_n`.
/// Requires `n ≡ 3 (mod 6)` and `n >= 9`.
pub fn build_p4_paths(n: usize) -> Result<Partition> {
    if n % 6 != 3 || n < 9 {
        return Err(unsupported(format!("P4 path partition requires n ≡ 3 mod 6 and n >= 9, got {n}")));
    }
    let mut classes = Vec::with_capacity(n * (n - 1) / 6);
    for cycle in walecki_cycles(n)? {
        for j in 0..n / 3 {
            let path: Vec<Edge> = (0..3)
                .map(|s| edge(cycle[3 * j + s], cycle[(3 * j + s + 1) % n]))
                .collect();
            classes.push(path);
        }
    }
    kn_partition(n, classes)
}

/// `n(n-1)/8` single 4-cycles, `n ≡ 1 (mod 8)`.
///
/// Rotational construction over `Z_n`: the base cycles
/// `(0, 4i-3, -1, -4i)`, `i = 1..(n-1)/8`, use the differences
/// `4i-3, 4i-2, 4i-1, 4i` once each, so their `n` translates cover every
/// edge exactly once.
pub fn build_c4_decomposition(n: usize) -> Result<Partition> {
    if n % 8 != 1 || n < 9 {
        return Err(unsupported(format!("C4 decomposition requires n ≡ 1 mod 8, got {n}")));
    }
    let t = (n - 1) / 8;
    let mut classes = Vec::with_capacity(n * t);
    for r in 0..n {
        for i in 1..=t {
            let base = [0, 4 * i - 3, n - 1, n - 4 * i];
            let c: Vec<Vertex> = base.iter().map(|&b| (b + r) % n).collect();
            classes.push(cycle_edges(&c));
        }
    }
    kn_partition(n, classes)
}

/// One perfect matching plus `n/2 - 1` vertex-disjoint unions of `n/4`
/// 4-cycles, `n ≡ 0 (mod 4)`.
///
/// The vertices are grouped in pairs `{2x, 2x+1}`; the pair edges form
/// the matching, and every round of a 1-factorization of `K_{n/2}` on
/// the pairs blows up to a `C4`-factor.
pub fn build_c4_orchards(n: usize) -> Result<Partition> {
    if n % 4 != 0 || n == 0 {
        return Err(unsupported(format!("C4 orchard partition requires n ≡ 0 mod 4, got {n}")));
    }
    let mut classes = vec![(0..n / 2).map(|x| edge(2 * x, 2 * x + 1)).collect::<Vec<_>>()];
    for round in round_robin(n / 2) {
        let mut factor = Vec::with_capacity(n);
        for (x, y) in round {
            factor.extend(cycle_edges(&[2 * x, 2 * y, 2 * x + 1, 2 * y + 1]));
        }
        classes.push(factor);
    }
    kn_partition(n, classes)
}
