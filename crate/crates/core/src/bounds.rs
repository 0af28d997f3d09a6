//! Closed-form bounds and the table of exact values for `K_n`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::class::ClassSpec;
use crate::construct::construct;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;

/// Inclusive lower and optional upper bound with a short note per bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: usize,
    pub upper: Option<usize>,
    pub notes: Vec<String>,
}

/// `ceil(log2 n)`; every bipartite partition into `k` templates yields a
/// proper `2^k`-coloring of the host.
pub fn log_lower(n: usize) -> usize {
    assert!(n >= 1, "log_lower needs n >= 1");
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// `floor(log2 n)`.
fn log_floor(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Bounds for the Ferrers class `{2K2}` on `K_n`.
///
/// The lower bound `floor(log2 n) + sqrt(floor(log2 n))/4 - 1 < chi` is
/// strict; the smallest admissible integer is `k - 1 + t` with `t` the
/// least positive integer satisfying `16 t^2 > k`.
pub fn ferrers_bounds(n: usize) -> BoundPair {
    assert!(n >= 2, "ferrers_bounds needs n >= 2");
    let k = log_floor(n);
    let mut t = 1;
    while 16 * t * t <= k {
        t += 1;
    }
    let matching_lower = k + t - 1;
    let lower = matching_lower.max(log_lower(n));
    let upper = 2 * crate::construct::ceil_sqrt(n) - 2;
    BoundPair {
        lower,
        upper: Some(upper),
        notes: vec![
            "lower: large-matching counting over class vectors".into(),
            "upper: grid descent/ascent construction".into(),
        ],
    }
}

/// Fewest edges of a Ferrers graph whose maximum matching has `m` edges.
pub fn lemma1_bound(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Matching size `2^(k-2) / (d+1)` guaranteed for `k` templates of a
/// partition of `K_{2^k}` into `k + d` bipartite templates.
pub fn lemma2_threshold(k: u32, d: u64) -> Ratio<u64> {
    assert!(k >= 1, "lemma2_threshold needs k >= 1");
    if k == 1 {
        Ratio::new(1, 2 * (d + 1))
    } else {
        Ratio::new(1u64 << (k - 2), d + 1)
    }
}

/// Largest template size on `m` vertices for classes whose templates are
/// small; `None` for classes with quadratic templates.
fn max_template_edges(spec: &ClassSpec, m: usize) -> Result<Option<usize>> {
    use Pattern::*;
    let size = match spec.forbidden() {
        [P3] => m / 2,
        [K2K1, P3] => 1,
        [TwoK2, C4, P4, S4] => 2,
        [TwoK2, C4, S4] => 3,
        [TwoK2, S4] | [TwoK2, P4, S4] => 4,
        [C4, P4, S4] => 2 * m / 3,
        [S4] | [C4, S4] | [P4, S4] => m,
        [TwoK2, C4] | [C4, P4] | [TwoK2, C4, P4] => m.saturating_sub(1),
        [] | [P4] | [TwoK2] | [C4] | [K2K1] | [TwoK2, P4] => return Ok(None),
        _ => {
            return Err(Error::UnsupportedClass(format!(
                "no template size table for class {spec}"
            )))
        }
    };
    Ok(Some(size))
}

/// Lower bound from counting edges against the largest possible template.
///
/// Quadratic classes use `e / floor(m^2/4)`, plus `log_lower` of the
/// clique size on complete hosts and `m - 1` when the templates must be
/// complete bipartite (`{K2+K1}`) and the host is complete.
pub fn edge_count_lower(g: &Graph, spec: &ClassSpec) -> Result<usize> {
    let e = g.edge_count();
    if e == 0 {
        return Ok(0);
    }
    let m = g.non_isolated().len();
    match max_template_edges(spec, m)? {
        Some(size) => Ok(e.div_ceil(size.max(1))),
        None => {
            let mut lower = e.div_ceil(m * m / 4);
            let complete = e == m * (m - 1) / 2;
            if complete {
                lower = lower.max(log_lower(m));
                if spec.forbidden() == [Pattern::K2K1] {
                    lower = lower.max(m - 1);
                }
            }
            Ok(lower)
        }
    }
}

/// Exact value of `chi'(K_n)` for a registered class where a closed
/// formula is known and its side condition holds.
pub fn known_value(spec: &ClassSpec, n: usize) -> Option<usize> {
    use Pattern::*;
    if n < 2 {
        return None;
    }
    let value = match spec.forbidden() {
        [] | [P4] => log_lower(n),
        [P3] => {
            if n % 2 == 0 {
                n - 1
            } else {
                n
            }
        }
        [K2K1] => n - 1,
        [K2K1, P3] => n * (n - 1) / 2,
        [S4] => (n - 1).div_ceil(2),
        [C4, S4] if n > 4 => (n - 1).div_ceil(2),
        [TwoK2, C4] => n.div_ceil(2),
        [TwoK2, C4, P4] | [TwoK2, P4] => n - 1,
        [C4, P4] if n >= 4 => n.div_ceil(2) + 1,
        [TwoK2, S4] | [TwoK2, P4, S4] if n % 8 == 1 && n >= 9 => n * (n - 1) / 8,
        [P4, S4] if n % 4 == 0 => n / 2,
        [TwoK2, C4, S4] if n % 6 == 3 && n >= 9 => n * (n - 1) / 6,
        [TwoK2, C4, P4, S4] => (n * (n - 1)).div_ceil(4),
        _ => return None,
    };
    Some(value)
}

/// Certified bounds for `chi'(K_n)` in a class: the best lower bound
/// available and the size of the class's construction, if any.
pub fn class_bounds(spec: &ClassSpec, n: usize) -> Result<BoundPair> {
    if n < 2 {
        return Err(crate::error::invalid(format!("bounds need n >= 2, got {n}")));
    }
    let host = crate::graph::complete_graph(n)?;
    let mut notes = Vec::new();
    let mut lower = log_lower(n);
    notes.push(format!("lower {lower}: 2^k-coloring"));
    let counted = edge_count_lower(&host, spec)?;
    if counted > lower {
        lower = counted;
        notes.push(format!("lower {lower}: edge counting"));
    }
    if spec.forbidden() == [Pattern::TwoK2] {
        let fb = ferrers_bounds(n);
        if fb.lower > lower {
            lower = fb.lower;
            notes.push(format!("lower {lower}: large-matching counting"));
        }
    }
    let upper = match construct(spec, n) {
        Ok(p) => {
            notes.push(format!("upper {}: construction", p.len()));
            Some(p.len())
        }
        Err(Error::UnsupportedClass(_) | Error::UnsupportedParameter(_) | Error::InvalidArgument(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundPair { lower, upper, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    fn spec(s: &str) -> ClassSpec {
        s.parse().unwrap()
    }

    #[test]
    fn log_lower_values() {
        assert_eq!(log_lower(1), 0);
        assert_eq!(log_lower(2), 1);
        assert_eq!(log_lower(8), 3);
        assert_eq!(log_lower(9), 4);
    }

    #[test]
    fn ferrers_bound_values() {
        let b = ferrers_bounds(16);
        assert_eq!((b.lower, b.upper), (4, Some(6)));
        let b = ferrers_bounds(4);
        assert_eq!((b.lower, b.upper), (2, Some(2)));
        let b = ferrers_bounds(1 << 20);
        assert_eq!((b.lower, b.upper), (21, Some(2046)));
        for n in 2..2000 {
            let b = ferrers_bounds(n);
            assert!(b.lower <= b.upper.unwrap(), "n={n}");
        }
    }

    #[test]
    fn ferrers_lower_is_strict() {
        // k = 16: 16 + 1 - 1 = 16 exactly, so the bound must be 17.
        assert_eq!(ferrers_bounds(1 << 16).lower, 17);
        // k = 15: 14 + sqrt(15)/4 < 15.
        assert_eq!(ferrers_bounds(1 << 15).lower, 15);
    }

    #[test]
    fn lemma_quantities() {
        assert_eq!(lemma1_bound(0), 0);
        assert_eq!(lemma1_bound(3), 6);
        assert_eq!(lemma1_bound(5), 15);
        assert_eq!(lemma2_threshold(3, 0), Ratio::from_integer(2));
        assert_eq!(lemma2_threshold(4, 1), Ratio::from_integer(2));
        assert_eq!(lemma2_threshold(2, 0), Ratio::from_integer(1));
        assert_eq!(lemma2_threshold(4, 2), Ratio::new(4, 3));
    }

    #[test]
    fn edge_count_examples() {
        let cherries = spec("2K2-C4-P4-S4");
        for n in 2..12 {
            assert_eq!(
                edge_count_lower(&complete_graph(n).unwrap(), &cherries).unwrap(),
                (n * (n - 1)).div_ceil(4)
            );
        }
        assert_eq!(edge_count_lower(&complete_graph(9).unwrap(), &spec("S4-2K2")).unwrap(), 9);
        assert_eq!(edge_count_lower(&complete_graph(4).unwrap(), &spec("P3")).unwrap(), 3);
        assert_eq!(edge_count_lower(&complete_graph(5).unwrap(), &spec("K2+K1")).unwrap(), 4);
        assert_eq!(edge_count_lower(&path_graph(3).unwrap(), &spec("P3")).unwrap(), 2);
    }

    #[test]
    fn edge_count_covers_registry() {
        let k5 = complete_graph(5).unwrap();
        for s in ClassSpec::registry() {
            assert!(edge_count_lower(&k5, &s).is_ok(), "{s}");
        }
        let odd = ClassSpec::new([Pattern::K2K1, Pattern::C4]);
        assert!(matches!(edge_count_lower(&k5, &odd), Err(Error::UnsupportedClass(_))));
    }

    #[test]
    fn known_value_examples() {
        assert_eq!(known_value(&spec("2K2-C4"), 7), Some(4));
        assert_eq!(known_value(&spec("S4"), 6), Some(3));
        assert_eq!(known_value(&spec("2K2"), 16), None);
        assert_eq!(known_value(&spec("C4"), 16), None);
        assert_eq!(known_value(&spec("S4-2K2"), 8), None);
        assert_eq!(known_value(&spec("S4-2K2"), 9), Some(9));
        assert_eq!(known_value(&spec("C4-S4"), 4), None);
        assert_eq!(known_value(&spec("C4-P4"), 3), None);
    }

    #[test]
    fn known_values_respect_lower_bounds() {
        for s in ClassSpec::registry() {
            for n in 2..=60 {
                let Some(v) = known_value(&s, n) else { continue };
                let b = class_bounds(&s, n).unwrap();
                let degree_two = matches!(s.name().as_str(), "S4" | "C4-S4");
                if degree_two && n % 2 == 1 {
                    // Odd cycles are not bipartite, so these rows are one
                    // short at every odd n; the construction needs (n+1)/2.
                    assert_eq!(b.upper, Some(v + 1), "{s} n={n}");
                    continue;
                }
                assert!(b.lower <= v, "{s} n={n}: {} > {v}", b.lower);
                if let Some(u) = b.upper {
                    assert!(v <= u, "{s} n={n}: {v} > {u}");
                }
            }
        }
    }
}
