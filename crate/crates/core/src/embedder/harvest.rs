use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};
use crate::richness::RichnessOracle;

#[derive(Clone, Debug, Serialize)]
pub struct HarvestReport {
    /// Tuples `(u_{-k}, .., u_0, .., u_k)`.
    pub tuples: Vec<Vec<Vertex>>,
    pub count: usize,
    /// Ordered pairs of half-walks examined.
    pub examined: u64,
    /// The tuple budget ran out; the harvest is partial.
    pub exhausted: bool,
    /// Some poor verdict relied on an uncertified (greedy or budget-hit) packing.
    pub heuristic: bool,
}

/// Walks `(v, v_1, .., v_k)` of length `k` from `v` that end in `s`.
fn half_walks(g: &SimpleGraph, v: Vertex, k: usize, in_s: &[bool]) -> Vec<Vec<Vertex>> {
    let mut walks = vec![vec![v]];
    for _ in 0..k {
        walks = walks
            .iter()
            .flat_map(|w| {
                g.neighbors(*w.last().expect("nonempty")).iter().map(move |&x| {
                    let mut e = w.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    walks.retain(|w| in_s[w[k]]);
    walks
}

/// Collects tuples with both ends in `s`, consecutive entries adjacent, and
/// `(u_{-l}, u_l)` poor for every `1 <= l <= k` and every `(i, j)`. Each tuple
/// glues two different half-walks from the same centre, so its two halves
/// never coincide.
pub fn harvest_poor_tuples(
    g: &SimpleGraph,
    s: &[Vertex],
    oracle: &mut RichnessOracle<'_>,
    tuple_budget: u64,
) -> Result<HarvestReport> {
    let k = oracle.k();
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        in_s[v] = true;
    }
    let before = oracle.uncertified_checks;
    let mut tuples = Vec::new();
    let mut examined = 0u64;
    let mut exhausted = false;
    'centres: for v in 0..n {
        let halves = half_walks(g, v, k, &in_s);
        for a in 0..halves.len() {
            for b in 0..halves.len() {
                if a == b {
                    continue;
                }
                if examined == tuple_budget {
                    exhausted = true;
                    break 'centres;
                }
                examined += 1;
                let (left, right) = (&halves[a], &halves[b]);
                let mut poor = true;
                for l in 1..=k {
                    if !oracle.poor_for_all(left[l], right[l])? {
                        poor = false;
                        break;
                    }
                }
                if poor {
                    let mut tuple: Vec<Vertex> = left.iter().rev().copied().collect();
                    tuple.extend_from_slice(&right[1..]);
                    tuples.push(tuple);
                }
            }
        }
    }
    Ok(HarvestReport {
        count: tuples.len(),
        tuples,
        examined,
        exhausted,
        heuristic: oracle.uncertified_checks > before,
    })
}

/// Independent check of one harvested tuple.
pub fn check_poor_tuple(
    g: &SimpleGraph,
    s: &[Vertex],
    tuple: &[Vertex],
    oracle: &mut RichnessOracle<'_>,
) -> Result<bool> {
    let k = oracle.k();
    if tuple.len() != 2 * k + 1 || tuple.iter().any(|&v| v >= g.n()) {
        return Ok(false);
    }
    if !s.contains(&tuple[0]) || !s.contains(&tuple[2 * k]) {
        return Ok(false);
    }
    if tuple.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Ok(false);
    }
    for l in 1..=k {
        let (x, y) = (tuple[k - l], tuple[k + l]);
        for i in 0..k {
            for j in 0..k {
                if oracle.is_rich(x, y, i, j)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
