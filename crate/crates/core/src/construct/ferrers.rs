use super::{edge, kn_partition, require_at_least};
use crate::error::Result;
use crate::graph::{Edge, Vertex};
use crate::verify::Partition;

/// A vertex of `K_{s^2}` viewed as a point of the `s x s` grid, with
/// 1-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridVertex {
    pub x: usize,
    pub y: usize,
}

impl GridVertex {
    pub fn from_index(index: Vertex, side: usize) -> Self {
        GridVertex {
            x: index / side + 1,
            y: index % side + 1,
        }
    }

    pub fn index(self, side: usize) -> Vertex {
        (self.x - 1) * side + (self.y - 1)
    }
}

/// Where a grid edge goes: descents (`x < x'`, `y >= y'`) by the first
/// coordinate of the left endpoint, ascents (`x < x'` and `y < y'`, or
/// `x = x'`) by the second coordinate of the lower endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slope {
    Descent { left_x: usize },
    Ascent { lower_y: usize },
}

fn slope(a: GridVertex, b: GridVertex) -> Slope {
    let (p, q) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
    if p.x < q.x && p.y >= q.y {
        Slope::Descent { left_x: p.x }
    } else {
        Slope::Ascent { lower_y: p.y.min(q.y) }
    }
}

/// Partition of `K_n` into at most `2 ceil(sqrt n) - 2` Ferrers graphs.
///
/// For `n = s^2` the templates are `G_1..G_{s-1}` (descents grouped by
/// the left endpoint's column) followed by `G'_1..G'_{s-1}` (ascents
/// grouped by the lower endpoint's row). Other `n` restrict the
/// construction for `ceil(sqrt n)^2`.
pub fn build_ferrers(n: usize) -> Result<Partition> {
    require_at_least(n, 2, "Ferrers partition")?;
    let side = ceil_sqrt(n);
    let square = side * side;
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); 2 * (side - 1)];
    for u in 0..square {
        for v in u + 1..square {
            let k = match slope(GridVertex::from_index(u, side), GridVertex::from_index(v, side)) {
                Slope::Descent { left_x } => left_x - 1,
                Slope::Ascent { lower_y } => side - 1 + lower_y - 1,
            };
            classes[k].push(edge(u, v));
        }
    }
    let full = kn_partition(square, classes)?;
    if square == n {
        Ok(full)
    } else {
        full.restrict_to_prefix(n)
    }
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}
