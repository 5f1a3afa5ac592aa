use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

use super::{clique_free_up_to, CliqueCheck, RichnessOracle};

pub const DEFAULT_TUPLE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuxLevel {
    /// The graph built from the `l`-th coordinates, `1 <= l <= k`.
    Level(usize),
    /// Union over all levels.
    Union,
}

/// Graph on the walks `(v, u_1, .., u_k)` starting at `v`. Two walks are
/// adjacent when `v, u_1..u_k, u'_1..u'_k` are `2k + 1` distinct vertices
/// and the coordinate pair at a considered level is `(i, j)`-rich for some
/// `0 <= i, j <= k - 1` (in either orientation).
#[derive(Clone, Debug, Serialize)]
pub struct AuxGraph {
    pub base: Vertex,
    pub level: AuxLevel,
    pub k: usize,
    pub tuples: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
    /// For each edge, bit `l - 1` is set when level `l` contributes it.
    pub edge_levels: Vec<u64>,
}

impl AuxGraph {
    pub fn to_simple_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.tuples.len());
        for &(a, b) in &self.edges {
            g.insert_edge(a, b);
        }
        g
    }

    pub fn clique_free_up_to(&self, t: usize) -> Result<CliqueCheck> {
        clique_free_up_to(&self.to_simple_graph(), t)
    }

    /// The subgraph made of edges contributed by level `l`.
    pub fn level_subgraph(&self, l: usize) -> AuxGraph {
        let keep: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edge_levels[e] & (1 << (l - 1)) != 0)
            .collect();
        AuxGraph {
            base: self.base,
            level: AuxLevel::Level(l),
            k: self.k,
            tuples: self.tuples.clone(),
            edges: keep.iter().map(|&e| self.edges[e]).collect(),
            edge_levels: keep.iter().map(|_| 1 << (l - 1)).collect(),
        }
    }
}

fn walks_from(g: &SimpleGraph, v: Vertex, k: usize, budget: u64) -> Result<Vec<Vec<Vertex>>> {
    let mut walks = vec![vec![v]];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &walks {
            for &x in g.neighbors(*w.last().expect("nonempty")) {
                let mut e = w.clone();
                e.push(x);
                next.push(e);
            }
            if next.len() as u64 > budget {
                return Err(Error::PathBudgetExceeded { length: k, budget });
            }
        }
        walks = next;
    }
    Ok(walks)
}

fn spread(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut all: Vec<Vertex> = a.iter().chain(&b[1..]).copied().collect();
    all.sort_unstable();
    all.windows(2).all(|w| w[0] != w[1])
}

/// Builds the auxiliary graph of `base` at `level`, using `oracle` for richness.
pub fn aux_graph(
    g: &SimpleGraph,
    base: Vertex,
    level: AuxLevel,
    oracle: &mut RichnessOracle<'_>,
    tuple_budget: u64,
) -> Result<AuxGraph> {
    let k = oracle.k();
    let levels: Vec<usize> = match level {
        AuxLevel::Level(l) if (1..=k).contains(&l) => vec![l],
        AuxLevel::Level(l) => return Err(Error::InvalidParameter(format!("level {l} outside 1..={k}"))),
        AuxLevel::Union => (1..=k).collect(),
    };
    let tuples = walks_from(g, base, k, tuple_budget)?;
    let mut edges = Vec::new();
    let mut edge_levels = Vec::new();
    for a in 0..tuples.len() {
        for b in a + 1..tuples.len() {
            let (ta, tb) = (&tuples[a], &tuples[b]);
            if !spread(ta, tb) {
                continue;
            }
            let mut mask = 0u64;
            for &l in &levels {
                let (x, y) = (ta[l], tb[l]);
                if oracle.rich_for_some(x, y)? || oracle.rich_for_some(y, x)? {
                    mask |= 1 << (l - 1);
                }
            }
            if mask != 0 {
                edges.push((a, b));
                edge_levels.push(mask);
            }
        }
    }
    Ok(AuxGraph {
        base,
        level,
        k,
        tuples,
        edges,
        edge_levels,
    })
}
