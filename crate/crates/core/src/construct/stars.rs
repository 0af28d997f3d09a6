use super::{edge, kn_partition, require_at_least};
use crate::error::Result;
use crate::graph::Edge;
use crate::verify::Partition;

/// Raw classes of the double-star scheme for even `n`. Class `i` has the
/// centers `2i, 2i+1`; for `i < j` class `i` receives the parallel edges
/// `{2i,2j}, {2i+1,2j+1}` and class `j` the crossing ones. The center
/// edge is returned separately per class.
fn double_star_classes(n: usize) -> (Vec<Edge>, Vec<Vec<Edge>>) {
    let half = n / 2;
    let centers: Vec<Edge> = (0..half).map(|i| edge(2 * i, 2 * i + 1)).collect();
    let mut leaves: Vec<Vec<Edge>> = vec![Vec::with_capacity(n - 2); half];
    for i in 0..half {
        for j in i + 1..half {
            leaves[i].push(edge(2 * i, 2 * j));
            leaves[i].push(edge(2 * i + 1, 2 * j + 1));
            leaves[j].push(edge(2 * i, 2 * j + 1));
            leaves[j].push(edge(2 * i + 1, 2 * j));
        }
    }
    (centers, leaves)
}

/// `ceil(n/2)` double stars covering `K_n`.
pub fn build_double_stars(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "double-star partition")?;
    if n % 2 == 1 {
        return build_double_stars(n + 1)?.restrict_to_prefix(n);
    }
    let (centers, leaves) = double_star_classes(n);
    let classes = centers
        .into_iter()
        .zip(leaves)
        .map(|(c, mut l)| {
            l.push(c);
            l
        })
        .collect();
    kn_partition(n, classes)
}

/// `ceil(n/2) + 1` star forests covering `K_n`, `n >= 4`.
///
/// Even `n`: the double stars lose their center edges, which are
/// collected into one final matching. Odd `n`: the even scheme on the
/// first `n - 1` vertices plus the star at the last vertex.
pub fn build_star_orchards(n: usize) -> Result<Partition> {
    require_at_least(n, 4, "star-orchard partition")?;
    if n % 2 == 1 {
        let inner = build_star_orchards(n - 1)?;
        let mut classes: Vec<Vec<Edge>> = inner
            .into_templates()
            .into_iter()
            .map(|t| t.edges().to_vec())
            .collect();
        classes.push((0..n - 1).map(|v| edge(v, n - 1)).collect());
        return kn_partition(n, classes);
    }
    let (centers, mut classes) = double_star_classes(n);
    classes.push(centers);
    kn_partition(n, classes)
}
